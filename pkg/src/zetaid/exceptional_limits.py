"""Approach paths to the indeterminate point a = -(m + w + 1/2).

At r = M = m + w + 1/2, phi = +-pi the j = m term of the alternating series
T(a) = sum_j (-1)^j / (j + w + 1/2 + a) has a vanishing denominator.  The
value of the surrounding integrals then depends on how the point is
approached.  This module evaluates the series along four kinds of path,
fits the simple pole that appears, and classifies the limit.

Conventions:

* Radial(rho): r = M + rho at phi = pi; the pole sits in the imaginary part.
* Arc(eps): r = M at phi = pi - eps; the pole sits in the real part.
* RayInDisk(q, alpha): a = M (-1 + q e^{i alpha}); q = 0 is the point itself.
* ThetaShift(theta): w = 1/2 with phi shifted to pi + i theta.
"""

import cmath
import csv
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Union

import numpy as np

from .closed_forms import (
    hr_hi_analytic,
    laurent_coefficient,
    reciprocal_sum,
    taylor_coefficients,
)
from .errors import AtLimitPoint, DegenerateError, DomainError, FitError
from .series import sum_series

log = logging.getLogger("zetaid")

STEP_SCHEDULE = tuple(10.0 ** (-1.0 - k / 2.0) for k in range(10))
CSV_COLUMNS = (
    "path_kind", "m", "w", "sigma", "step_or_q", "alpha_or_theta",
    "series_re", "series_im", "fitted_c", "classification",
)


# ---------------------------------------------------------------- states

@dataclass(frozen=True)
class Radial:
    rho: float


@dataclass(frozen=True)
class Arc:
    eps: float


@dataclass(frozen=True)
class RayInDisk:
    q: float
    alpha: float


@dataclass(frozen=True)
class ThetaShift:
    theta: float


Coordinates = Union[Radial, Arc, RayInDisk, ThetaShift]
_KIND = {Radial: "radial", Arc: "arc", RayInDisk: "ray", ThetaShift: "theta"}


@dataclass(frozen=True)
class ApproachState:
    m: int
    w: float
    coords: Coordinates

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise DomainError("m must be a non-negative integer")
        if self.w not in (0, 0.5):
            raise DomainError("w must be 0 or 1/2")
        if isinstance(self.coords, RayInDisk) and self.coords.q < 0:
            raise DomainError("q must be non-negative")
        if type(self.coords) not in _KIND:
            raise DomainError(f"unknown coordinates {self.coords!r}")

    @property
    def M(self):
        return self.m + self.w + 0.5

    @property
    def kind(self):
        return _KIND[type(self.coords)]


class Delta(Enum):
    DeltaZero = "DeltaZero"
    DeltaPlusInf = "DeltaPlusInf"
    DeltaMinusInf = "DeltaMinusInf"
    Regular = "Regular"


@dataclass(frozen=True)
class LimitClassification:
    """Outcome of a limit.  Only Regular carries a value; there is no arithmetic."""

    variant: Delta
    fitted_pole_coefficient: float = None
    fit_residual: float = 0.0
    value: float = None

    def __post_init__(self):
        if self.variant is Delta.Regular:
            if self.value is None or not math.isfinite(self.value):
                raise ValueError("Regular needs a finite value")
        elif self.value is not None:
            raise ValueError("Delta variants carry no value")

    @property
    def label(self):
        if self.variant is Delta.Regular:
            return f"Regular({self.value:.17g})"
        return self.variant.value


# ---------------------------------------------------------------- the isolated term

def _unit_half(phi):
    """e^{i phi/2}, exact at phi = +-pi."""
    if abs(phi) == math.pi:
        return 1j if phi > 0 else -1j
    return cmath.exp(0.5j * phi)


def _shift(r, phi, M):
    """a + M for a = r e^{i phi}, without cancellation near phi = +-pi."""
    if abs(phi) == math.pi:
        return complex(M - r, 0.0)
    if math.cos(phi) < 0:
        delta = math.pi - abs(phi)
        return complex((M - r) + 2.0 * r * math.sin(0.5 * delta) ** 2, r * math.sin(phi))
    return complex(M + r * math.cos(phi), r * math.sin(phi))


def singular_term(r, phi, m, w):
    """S = 2 sqrt(a) (-1)^m / (a + M), the isolated j = m term."""
    M = m + w + 0.5
    if r == M and abs(phi) == math.pi:
        raise AtLimitPoint(f"r = {M} and phi = +-pi is the indeterminate point")
    if r <= 0:
        raise DomainError("r must be positive")
    sqrt_a = math.sqrt(r) * _unit_half(phi)
    return 2.0 * sqrt_a * (-1) ** m / _shift(r, phi, M)


def divergent_term_Dt(r, phi, m):
    """The j = m term for w = 0 as a real function of (r, phi).

    The sign of sin(phi) is indeterminate at phi = +-pi; the factor sin(phi)
    vanishes there, so D_t = 0 off the circle r = m + 1/2.
    """
    M = m + 0.5
    at_pi = abs(phi) == math.pi
    if at_pi and r == M:
        raise AtLimitPoint("D_t is indeterminate at r = m + 1/2, phi = +-pi")
    s = 0.0 if at_pi else math.sin(phi)
    if s == 0.0:
        return 0.0
    shift = _shift(r, phi, M)
    denom = 2.0 * abs(shift) ** 2
    root = 2.0 * math.sqrt(r) * abs(math.sin(0.5 * phi))
    return math.copysign(1.0, s) * root * (-1) ** m * r * s / denom


def kappa(q, alpha):
    """arg(-1 + q e^{i alpha}), with kappa(0, alpha) = +pi."""
    if q < 0:
        raise DomainError("q must be non-negative")
    if q == 0:
        return math.pi
    x = -1.0 + q * math.cos(alpha)
    y = q * math.sin(alpha)
    if x == 0 and y == 0:
        raise DegenerateError("q = 1, alpha = 0 puts a at the origin")
    return math.atan2(y + 0.0, x)


def q_factor(q, alpha):
    """Q = 1 - 2 q cos(alpha) + q^2 = |a / M|^2."""
    return 1.0 - 2.0 * q * math.cos(alpha) + q * q


# ---------------------------------------------------------------- path series

def _cut(extent):
    return 64 + 4 * int(math.ceil(abs(extent)))


def _sin_cos(alpha):
    """(sin, cos) of alpha with exact zeros at multiples of pi/2."""
    k = alpha / (0.5 * math.pi)
    n = round(k)
    if abs(k - n) <= 1e-15 * max(1.0, abs(k)):
        return ((0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0))[n % 4]
    return math.sin(alpha), math.cos(alpha)


def ray_series(m, w, q, alpha):
    """(C1Icp, C1Rdp) right-hand sides: (-Im T, Re T) with the pole written out.

    On the real axis (sin alpha = 0) the point a may coincide with a neighbouring
    exceptional point j = k.  Its term is then 0/0 in the imaginary branch, which
    takes the DeltaZero value 0; the real branch is undefined there and returns nan.
    """
    if q <= 0:
        raise DomainError("ray_series needs q > 0; use regularized_series at q = 0")
    kappa(q, alpha)
    M = m + w + 0.5
    sa, ca = _sin_cos(alpha)
    mc, ms = M * q * ca, M * q * sa

    def den(j):
        return (j - m + mc) ** 2 + ms * ms

    def imag_term(j):
        with np.errstate(divide="ignore", invalid="ignore"):
            return ms / den(j)

    def real_term(j):
        with np.errstate(divide="ignore", invalid="ignore"):
            return (j - m + mc) / den(j)

    cut = _cut(m + M * q)
    sign = (-1) ** m
    icp = sign * sa / (q * M)
    rdp = sign * ca / (q * M)
    if ms != 0:
        icp += sum_series(imag_term, skip=m, alternating=True, cut=cut).value.real
    neighbour = m - mc
    if ms == 0 and neighbour >= 0 and neighbour == round(neighbour):
        log.warning("ray point a = %g is the exceptional point j = %d: imaginary branch set to 0, "
                    "real branch undefined", -M * (1 - q * ca), int(neighbour))
        return icp, math.nan
    rdp += sum_series(real_term, skip=m, alternating=True, cut=cut).value.real
    return icp, rdp


def weighted_ray_series(m, w, q, alpha):
    """sin(alpha) C1Rdp - cos(alpha) C1Icp summed without the pole term; finite at q = 0."""
    M = m + w + 0.5
    sa, ca = _sin_cos(alpha)
    mc, mq = M * q * ca, M * q

    def term(j):
        k = j - m
        return k / (k * k + 2.0 * mc * k + mq * mq)

    if sa == 0:
        return 0.0
    total = sum_series(term, skip=m, alternating=True, cut=_cut(m + mq)).value.real
    return sa * total


def _arc_or_radial(state, sigma):
    m, w, M = state.m, state.w, state.M
    c = state.coords
    if isinstance(c, Radial):
        if c.rho == 0:
            raise AtLimitPoint("rho = 0 is the indeterminate point")
        r, phi = M + c.rho, math.pi
        if r <= 0:
            raise DomainError("rho must exceed -M")
        a = complex(-r, 0.0)
        shift = complex(-c.rho, 0.0)
    else:
        if c.eps == 0:
            raise AtLimitPoint("eps = 0 is the indeterminate point")
        r, phi = M, math.pi - c.eps
        a = -M * cmath.exp(-1j * c.eps)
        shift = M * complex(2.0 * math.sin(0.5 * c.eps) ** 2, math.sin(c.eps))
    t = reciprocal_sum(a, w, excluded_index=m) + (-1) ** m / shift
    power = r ** (1.0 - sigma) * cmath.exp(1j * phi * (1.0 - sigma))
    value = 2.0 * power * t
    return value.real, value.imag


def path_series(state, sigma=0.5):
    """Right-hand side pair along the path.

    Radial/Arc: (Re, Im) of 2 a^{1-sigma} T(a), the full series with its isolated term.
    RayInDisk: (C1Icp, C1Rdp) = (-Im T, Re T); the rotation a^{1-sigma} is
    absorbed by the kappa factors on the integral side, so sigma only enters there.
    ThetaShift: (H2A, H2B) of theta_pv_combination (w = 1/2 only).
    """
    if not 0 < sigma < 1:
        raise DomainError("sigma must lie in (0, 1)")
    c = state.coords
    if isinstance(c, (Radial, Arc)):
        return _arc_or_radial(state, sigma)
    if isinstance(c, RayInDisk):
        return ray_series(state.m, state.w, c.q, c.alpha)
    if state.w != 0.5:
        raise DomainError("the theta shift is defined for w = 1/2")
    pv = theta_pv_combination(state.m, c.theta)
    return pv.h2a, pv.h2b


def regularized_series(state, sigma=0.5, branch="imag"):
    """Finite value at q = 0 from the pole-free weighted combination.

    With R(alpha) the weighted series at q = 0, the two integrals X (imaginary
    branch, tanh kernel) and Y (real branch, no kernel) satisfy
    -sin(alpha) X - cos(alpha) Y = R(alpha).  Solving with the companion ray
    alpha + pi/2 gives X = eta(1, m+1) and Y = 0 for every alpha.
    """
    c = state.coords
    if not isinstance(c, RayInDisk) or c.q != 0:
        raise DomainError("regularized_series needs a RayInDisk state at q = 0")
    if not 0 < sigma < 1:
        raise DomainError("sigma must lie in (0, 1)")
    if branch not in ("imag", "real"):
        raise DomainError("branch must be 'imag' or 'real'")
    alpha = c.alpha
    beta = alpha + 0.5 * math.pi
    r1 = _weighted_at_zero(state.m, alpha)
    r2 = _weighted_at_zero(state.m, beta)
    sa, ca = math.sin(alpha), math.cos(alpha)
    if branch == "imag":
        return -(sa * r1 + ca * r2)
    return -(ca * r1 - sa * r2)


def _weighted_at_zero(m, alpha):
    def term(j):
        return 1.0 / (j - m)

    total = sum_series(term, skip=m, alternating=True, cut=_cut(m)).value.real
    return math.sin(alpha) * total


# ---------------------------------------------------------------- fitting

def fit_pole_coefficient(values, tol=1e-6, at_exceptional_point=True):
    """Fit value ~ c/step + d + e*step + f*step^2 and classify the limit step -> 0.

    |c| below tol (relative to max(1, |d|)) means no pole: DeltaZero at the
    exceptional point, Regular(d) elsewhere.  Otherwise the sign of c decides.
    """
    data = [(float(s), float(v)) for s, v in values]
    if len(data) < 6:
        raise FitError("need at least 6 steps")
    steps = np.array([s for s, _ in data])
    vals = np.array([v for _, v in data])
    if np.any(steps <= 0):
        raise FitError("steps must be positive")
    if not np.any(vals):
        return LimitClassification(
            Delta.DeltaZero if at_exceptional_point else Delta.Regular, 0.0, 0.0,
            value=None if at_exceptional_point else 0.0,
        )
    # relative least squares on value*step = c + d step + e step^2 + f step^3
    target = vals * steps
    floor = 1e-12 * np.max(np.abs(target))
    weight = 1.0 / np.maximum(np.abs(target), floor)
    design = np.column_stack([np.ones_like(steps), steps, steps**2, steps**3])
    coef, *_ = np.linalg.lstsq(design * weight[:, None], target * weight, rcond=None)
    c, d = coef[0], coef[1]
    residual = float(np.sqrt(np.mean(((design @ coef - target) * weight) ** 2)))
    if residual > 0.1:
        raise FitError(f"pole fit residual {residual:.3g} exceeds 10% of the data")
    c, d = float(c), float(d)
    if abs(c) < tol * max(1.0, abs(d)):
        if at_exceptional_point:
            return LimitClassification(Delta.DeltaZero, c, residual)
        return LimitClassification(Delta.Regular, c, residual, value=d)
    variant = Delta.DeltaPlusInf if c > 0 else Delta.DeltaMinusInf
    return LimitClassification(variant, c, residual)


def weighted_arc_difference(m1, m2, eps, w=0.0):
    """(-1)^m1 sqrt(M1) Re V(M1) - (-1)^m2 sqrt(M2) Re V(M2) on the arcs phi = pi - eps.

    V is the full series 2 a^{1/2} T(a); the poles 2 (-1)^m / (sqrt(M) eps) cancel.
    """
    total = 0.0
    for m, sign in ((m1, 1.0), (m2, -1.0)):
        state = ApproachState(m, w, Arc(eps))
        re, _ = path_series(state)
        total += sign * (-1) ** m * math.sqrt(state.M) * re
    return total


# ---------------------------------------------------------------- theta shift

class ThetaPV(NamedTuple):
    h2a: float
    h2b: float
    combined: float


def _check_theta(m, theta):
    if theta == 0:
        raise DomainError("theta = 0 is a pole of both series")
    for ratio in ((m + 1) * math.exp(2 * theta), (m + 1) * math.exp(-2 * theta)):
        k = round(ratio)
        if k >= 1 and abs(ratio - k) <= 1e-12 * k:
            raise DomainError(f"theta = ln({k}/{m + 1})/2 makes a series term singular")


def _expm1(z):
    if abs(z) < 1e-3:
        return z * (1 + z / 2 * (1 + z / 3 * (1 + z / 4 * (1 + z / 5))))
    return cmath.exp(z) - 1


def _h2a(m, theta):
    e1 = cmath.exp(theta)
    e2 = e1 * e1
    root = math.sqrt(m + 1)

    def term(j):
        return (j + 1 + e1 * (m + 1)) / ((j - m) * ((-m - 1) * e2 + j + 1))

    total = sum_series(term, skip=m, alternating=True, cut=_cut(m + 8 * abs(e2))).value
    pole = (-1) ** m * e1 / (2 * root * (e2 - 1))
    return root * _expm1(theta) / 2 * total - pole


def _h2b(m, theta):
    e1 = cmath.exp(theta)
    e2 = e1 * e1
    root = math.sqrt(m + 1)

    def term(j):
        return (j + m + 2) / (((j + 1) * e2 - m - 1) * ((-m - 1) * e2 + j + 1))

    total = sum_series(term, skip=m, alternating=True, cut=_cut(m + 8 * abs(e2))).value
    pole = (-1) ** m * e1 / (root * (e2 - 1))
    return 0.5 * root * _expm1(2 * theta) * e1 * total - pole


def _combined(m, theta):
    return 0.5 * _h2b(m, theta) - _h2a(m, theta)


def theta_pv_combination(m, theta):
    """(H2A, H2B, combined) with combined = H2B/2 - H2A, free of the theta = 0 pole.

    H2A is the arc-ordered finite part at r = (m+1) e^theta; H2B is the sum of the
    two radial finite parts at r = (m+1) e^{+-theta}.  The combination equals the
    regularized int_0^inf sin^2(v theta) Im((m+1)^{iv} eta(1/2+iv)) tanh(pi v) dv.
    """
    if int(m) != m or m < 0:
        raise DomainError("m must be a non-negative integer")
    _check_theta(m, theta)
    a = _h2a(m, theta).real
    b = _h2b(m, theta).real
    return ThetaPV(float(a), float(b), float(0.5 * b - a))


def _theta_radius(m):
    """Half the distance from 0 to the nearest excluded theta."""
    nearest = min(abs(0.5 * math.log(k / (m + 1))) for k in range(1, 2 * m + 4) if k != m + 1)
    return min(0.2, 0.5 * nearest)


def theta_expansion(m, order=6):
    """Taylor coefficients c_0..c_order of the combined theta series about theta = 0."""
    coefs = taylor_coefficients(lambda t: _combined(m, t), 0.0, _theta_radius(m), nodes=64)
    return coefs[: order + 1].real


def theta_pole_coefficients(m):
    """Residues at theta = 0 of H2A and H2B."""
    radius = _theta_radius(m)
    return (
        laurent_coefficient(lambda t: _h2a(m, t), radius, order=-1).real,
        laurent_coefficient(lambda t: _h2b(m, t), radius, order=-1).real,
    )


# ---------------------------------------------------------------- J integrals

def j_values(r, phi, theta, w=0.5):
    """(J1, J2, J3, J4): -Re HR, -Im HR, Re HI, Im HI at phi + i theta.

    Re and Im are the analytic continuations (f(+) + f(-))/2 and (f(+) - f(-))/2i,
    so the values stay analytic in r, phi and theta.
    """
    hr_p, hi_p = hr_hi_analytic(r, phi + 1j * theta, w)
    hr_m, hi_m = hr_hi_analytic(r, phi - 1j * theta, w)
    j1 = -0.5 * (hr_p + hr_m)
    j2 = -(hr_p - hr_m) / 2j
    j3 = 0.5 * (hi_p + hi_m)
    j4 = (hi_p - hi_m) / 2j
    return j1, j2, j3, j4


def _pole_distance(centres, w, shift=1.0):
    """Smallest |log(c_j / R)| over R in centres, ignoring the exact zero."""
    best = math.inf
    for R in centres:
        j0 = max(0, int(R * shift - w - 0.5))
        for j in range(max(0, j0 - 2), j0 + 3):
            d = abs(math.log((j + w + 0.5) / R))
            if d > 1e-9:
                best = min(best, d)
    return best


def arc_finite_part(m, theta):
    """Laurent constant in eps of J2((m+1) e^theta, pi - eps, theta): the H2A value."""
    r = (m + 1) * math.exp(theta)
    d = _pole_distance([r * math.exp(theta), r * math.exp(-theta)], 0.5)
    radius = min(0.05, 0.3 * d)
    return laurent_coefficient(lambda e: j_values(r, math.pi - e, theta)[1], radius, nodes=32).real


def radial_finite_part(m, theta):
    """Laurent constant in rho of J2 summed over r = (m+1+rho) e^{+-theta}: the H2B value."""
    base = m + 1
    dists = []
    for j in range(0, 2 * (m + 2) + 8):
        c = j + 1.0
        for f in (1.0, math.exp(-2 * theta), math.exp(2 * theta)):
            d = abs(c * f - base)
            if d > 1e-9:
                dists.append(d)
    radius = min(0.05, 0.3 * min(dists))

    def g(rho):
        rr = base + rho
        return (
            j_values(rr * cmath.exp(theta), math.pi, theta)[1]
            + j_values(rr * cmath.exp(-theta), math.pi, theta)[1]
        )

    return laurent_coefficient(g, radius, nodes=32).real


# ---------------------------------------------------------------- sweeps

def _states(mode, m, w, alpha, steps):
    if mode == "radial":
        return [ApproachState(m, w, Radial(s)) for s in steps]
    if mode == "arc":
        return [ApproachState(m, w, Arc(s)) for s in steps]
    if mode == "ray":
        return [ApproachState(m, w, RayInDisk(s, alpha)) for s in steps]
    if mode == "theta":
        return [ApproachState(m, w, ThetaShift(s)) for s in steps]
    raise DomainError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class Sweep:
    mode: str
    m: int
    w: float
    sigma: float
    alpha: float
    steps: tuple
    series: tuple
    branch: str
    classification: LimitClassification

    def rows(self):
        out = []
        for step, (re, im) in zip(self.steps, self.series):
            angle = {"ray": self.alpha, "theta": step}.get(self.mode, "")
            out.append((
                self.mode, self.m, self.w, self.sigma, step, angle, re, im,
                self.classification.fitted_pole_coefficient, self.classification.label,
            ))
        return out


def sweep(mode, m, w, sigma=0.5, alpha=0.0, n_steps=10):
    """Evaluate a path on the geometric schedule and classify its dominant branch.

    The classified branch is the one that carries the pole: imaginary for radial,
    real for arc, C1Icp for ray and H2A for theta.
    """
    if not 6 <= n_steps <= len(STEP_SCHEDULE):
        raise DomainError(f"steps must lie in [6, {len(STEP_SCHEDULE)}]")
    steps = STEP_SCHEDULE[:n_steps]
    states = _states(mode, m, w, alpha, steps)
    series = tuple(path_series(s, sigma) for s in states)
    if mode == "theta":
        branch = "h2a"
        data = [(s, v[0]) for s, v in zip(steps, series)]
        cls = fit_pole_coefficient(data, at_exceptional_point=False)
    else:
        branch = "imag" if mode == "radial" else "real"
        index = 1 if mode == "radial" else 0
        data = [(s, v[index]) for s, v in zip(steps, series)]
        cls = fit_pole_coefficient(data)
    return Sweep(mode, m, w, sigma, alpha, steps, series, branch, cls)


def write_csv(path_or_file, rows):
    """Write sweep rows with the fixed column set; floats use 17 significant digits."""
    def fmt(x):
        if isinstance(x, float):
            return format(x, ".17g")
        return x

    if hasattr(path_or_file, "write"):
        _write(path_or_file, rows, fmt)
        return
    with open(path_or_file, "w", newline="") as fh:
        _write(fh, rows, fmt)


def _write(fh, rows, fmt):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
