"""Numerical integration engines.

* ``integrate_finite``: globally adaptive Gauss-Kronrod (7/15 point) with all
  panels of one refinement sweep evaluated in a single vectorized call.
* ``integrate_tanh_sinh``: double-exponential rule for endpoint singularities.
* ``integrate_semi_infinite``: [0, inf) for integrands carrying a hyperbolic
  kernel; the range is cut where the kernel envelope times a polynomial
  growth margin drops below the tolerance.
* ``integrate_exponential``: the same cut for an explicit decay rate.
* ``integrate_power_law``: [0, inf) for integrands with algebraic decay.
* ``cesaro_average``: running means of segment-wise partial integrals.
* ``derivative_wrt_parameter``: Richardson-extrapolated central differences.

Integrands take and return numpy arrays.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DecayError, NonConvergence
from .precision import compensated

# Kronrod abscissae/weights of the 15-point rule and the embedded 7-point
# Gauss weights (QUADPACK qk15 constants)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_gauss = np.zeros(8)
_gauss[1:7:2] = _WG[:-1]
_gauss[7] = _WG[-1]
GAUSS_WEIGHTS = np.concatenate([_gauss[:-1], _gauss[::-1]])

MAX_PANELS = 1 << 20


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    truncation_point: float = 0.0
    subdivisions: int = 0
    tail_bound: float = 0.0


class DecayClass(Enum):
    SechPi = "SechPi"
    SechSqPi = "SechSqPi"
    ExpSech = "ExpSech"
    TanhBounded = "TanhBounded"
    None_ = "None"

    @property
    def rate(self):
        return {"SechPi": math.pi, "SechSqPi": 2 * math.pi, "ExpSech": 2 * math.pi}.get(self.value)

    @property
    def envelope_constant(self):
        # sech(pi v) <= 2 e^{-pi v};  sech^2 <= 4 e^{-2 pi v};  e^{-pi v} sech <= 2 e^{-2 pi v}
        return {"SechPi": 2.0, "SechSqPi": 4.0, "ExpSech": 2.0}.get(self.value)

    @property
    def convergent(self):
        return self.rate is not None


def _default_tol(tol):
    if tol is not None:
        return tol
    return 1e-12 if compensated() else 1e-8


def _exact_sum(values):
    return math.fsum(np.asarray(values, dtype=float))


def _kronrod_panels(f, a, b):
    """15-point Kronrod estimates and QUADPACK-style error estimates per panel."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = centre[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise NonConvergence("integrand is not finite on the integration range")
    kronrod = half * (fx @ KRONROD_WEIGHTS)
    gauss = half * (fx @ GAUSS_WEIGHTS)
    resabs = np.abs(half) * (np.abs(fx) @ KRONROD_WEIGHTS)
    mean = 0.5 * kronrod / np.where(half == 0, 1.0, half)
    resasc = np.abs(half) * (np.abs(fx - mean[:, None]) @ KRONROD_WEIGHTS)
    err = np.abs(kronrod - gauss)
    scaled = np.where(
        (resasc != 0) & (err != 0),
        resasc * np.minimum(1.0, (200.0 * err / np.where(resasc == 0, 1.0, resasc)) ** 1.5),
        err,
    )
    floor = 50.0 * np.finfo(float).eps * resabs
    return kronrod, np.maximum(scaled, floor)


def integrate_finite(f, lo, hi, tol=None, rel_tol=0.0, initial_panels=1, max_panels=MAX_PANELS):
    """Adaptive Gauss-Kronrod on [lo, hi] to absolute accuracy ``tol``.

    Each sweep bisects the panels that carry the largest share of the error
    until the summed error estimate meets max(tol, rel_tol |value|).
    """
    tol = _default_tol(tol)
    if not lo < hi:
        raise ValueError("integrate_finite needs lo < hi")
    edges = np.linspace(lo, hi, max(1, int(initial_panels)) + 1)
    a, b = edges[:-1], edges[1:]
    values, errors = _kronrod_panels(f, a, b)
    evaluated = len(a)
    stalls = 0
    while True:
        total = _exact_sum(values)
        budget = max(tol, rel_tol * abs(total))
        err_total = float(np.sum(errors))
        if err_total <= budget:
            return QuadratureResult(total, err_total, hi, len(a), 0.0)
        # bisect the worst panels until the remaining ones fit half the budget
        order = np.argsort(errors)[::-1]
        excess = np.cumsum(errors[order])
        n_split = int(np.searchsorted(excess, err_total - 0.5 * budget)) + 1
        split = np.zeros(len(a), dtype=bool)
        split[order[:n_split]] = True
        if evaluated + 2 * n_split > max_panels:
            raise NonConvergence(
                f"adaptive quadrature reached the {max_panels}-panel limit "
                f"(error {err_total:.2e} > {budget:.2e})"
            )
        mid = 0.5 * (a[split] + b[split])
        new_a = np.concatenate([a[split], mid])
        new_b = np.concatenate([mid, b[split]])
        if np.any(new_b - new_a <= 4 * np.finfo(float).eps * np.maximum(np.abs(new_a), 1e-300)):
            raise NonConvergence("adaptive quadrature panels collapsed to machine resolution")
        new_values, new_errors = _kronrod_panels(f, new_a, new_b)
        evaluated += len(new_a)
        # bisection that stops reducing the error means roundoff dominates
        stalls = stalls + 1 if np.sum(new_errors) >= 0.9 * np.sum(errors[split]) else 0
        if stalls >= 4:
            raise NonConvergence(
                f"adaptive quadrature stalled at roundoff level (error {err_total:.2e} > {budget:.2e})"
            )
        keep = ~split
        a = np.concatenate([a[keep], new_a])
        b = np.concatenate([b[keep], new_b])
        values = np.concatenate([values[keep], new_values])
        errors = np.concatenate([errors[keep], new_errors])
        # sort by position so that fsum sees a stable order (determinism)
        pos = np.argsort(a, kind="stable")
        a, b, values, errors = a[pos], b[pos], values[pos], errors[pos]


def integrate_tanh_sinh(f, lo, hi, tol=None, max_level=12):
    """Tanh-sinh rule on [lo, hi]; tolerates integrable endpoint singularities.

    Nodes are generated from their distance to the nearer endpoint so that
    points close to a singular endpoint keep full relative accuracy.
    """
    tol = _default_tol(tol)
    half = 0.5 * (hi - lo)
    t_max = 6.5
    previous = None
    step = 0.5
    t = np.arange(-t_max, t_max + 1e-12, step)
    for level in range(max_level + 1):
        if level > 0:
            step *= 0.5
            t = np.arange(-t_max + step, t_max, 2 * step)
        u = 0.5 * math.pi * np.sinh(t)
        # distance from the nearer endpoint: h (1 - tanh|u|) = 2h / (1 + e^{2|u|})
        e = np.exp(-2.0 * np.abs(u))
        dist = 2.0 * half * e / (1.0 + e)
        x = np.where(t < 0, lo + dist, hi - dist)
        # sech^2 u = 4 e^{-2|u|} / (1 + e^{-2|u|})^2
        w = half * 0.5 * math.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
        ok = (dist > 0) & (x > lo) & (x < hi)
        fx = np.zeros_like(t)
        fx[ok] = np.asarray(f(x[ok]), dtype=float)
        contribution = step * _exact_sum(w[ok] * fx[ok])
        if level == 0:
            estimate = contribution
        else:
            estimate = 0.5 * previous + contribution
        if not np.isfinite(estimate):
            raise NonConvergence("tanh-sinh rule produced a non-finite value")
        if previous is not None and level >= 3:
            err = abs(estimate - previous)
            if err <= tol:
                # the error of level k is roughly the square of the change
                return QuadratureResult(estimate, err, hi, len(t), 0.0)
        previous = estimate
    raise NonConvergence(f"tanh-sinh rule did not reach tolerance {tol:.1e}")


def _cut_for_rate(rate, const, tol, moment_power):
    power = 3 + moment_power
    v = 1.0
    for _ in range(100):
        nxt = (math.log(10.0 * const / tol) + power * math.log1p(v)) / rate
        if abs(nxt - v) < 1e-9:
            break
        v = nxt
    v = max(v, 1.0)
    tail = const * math.exp(-rate * v) * (1.0 + v) ** power / max(rate - power / (1.0 + v), 0.5 * rate)
    return v, tail


def truncation_point(decay, tol, moment_power=0, scale=1.0):
    """Cut-off V and the tail bound for a decaying kernel with polynomial margin."""
    return _cut_for_rate(decay.rate, decay.envelope_constant * scale, tol, moment_power)


def integrate_semi_infinite(f, decay, tol=None, moment_power=0, scale=1.0, lo=0.0):
    """Integral over [lo, inf) of an integrand with a hyperbolic-kernel decay."""
    if not isinstance(decay, DecayClass):
        decay = DecayClass(decay)
    if not decay.convergent:
        raise DecayError(f"kernel class {decay.value} does not decay; use the Cesaro engine")
    return integrate_exponential(f, decay.rate, tol, moment_power, decay.envelope_constant * scale, lo)


def integrate_exponential(f, rate, tol=None, moment_power=0, envelope=2.0, lo=0.0):
    """Integral over [lo, inf) of f with |f(v)| <= envelope (1+v)^(3+n) e^{-rate v}.

    Covers kernels such as cosh(phi v)/cosh(pi v), whose rate pi - |phi| can
    be small; the cut-off grows like log(1/tol)/rate.
    """
    tol = _default_tol(tol)
    if not rate > 0:
        raise DecayError("integrand does not decay exponentially; use the Cesaro engine")
    v_cut, tail = _cut_for_rate(rate, envelope, tol, moment_power)
    v_cut += lo
    res = integrate_finite(f, lo, v_cut, tol=0.5 * tol, initial_panels=max(4, int(math.ceil(v_cut - lo))))
    return QuadratureResult(res.value, res.abs_error_estimate + tail, v_cut, res.subdivisions, tail)


def integrate_power_law(f, tol=None, split=1.0):
    """Integral over [0, inf) of an integrand decaying like v^-p with p > 1.

    [0, split] uses tanh-sinh (allows v^(s-1) behaviour at 0); the tail uses
    v = split/t, turning it into a finite integral over (0, 1].
    """
    tol = _default_tol(tol)
    head = integrate_tanh_sinh(f, 0.0, split, tol=0.5 * tol)

    def mapped(t):
        # below t = 1e-100 the mapped integrand ~ t^(p-2) contributes nothing
        out = np.zeros_like(t)
        ok = t > 1e-100
        out[ok] = np.asarray(f(split / t[ok]), dtype=float) * split / (t[ok] * t[ok])
        return out

    tail = integrate_tanh_sinh(mapped, 0.0, 1.0, tol=0.5 * tol)
    return QuadratureResult(
        head.value + tail.value,
        head.abs_error_estimate + tail.abs_error_estimate,
        math.inf,
        head.subdivisions + tail.subdivisions,
        0.0,
    )


@dataclass(frozen=True)
class CesaroStep:
    index: int
    segment_value: float
    partial_value: float
    running_average: float
    error: float
    flagged: bool


def cesaro_average(f, segment_length, n_segments, start=0.0, tol=1e-10, singular_start=False):
    """Segment integrals over [start + kL, start + (k+1)L] and Cesaro means.

    Segment k's partial value is the integral from ``start`` to the end of
    segment k; the running average is the mean of the first k+1 partial
    values.  A segment that fails to converge is flagged, not raised.
    """
    if segment_length <= 0 or n_segments < 1:
        raise ValueError("cesaro_average needs segment_length > 0 and n_segments >= 1")
    steps = []
    partial_terms, partials = [], []
    for k in range(n_segments):
        lo = start + k * segment_length
        hi = lo + segment_length
        flagged = False
        try:
            if k == 0 and singular_start:
                res = integrate_tanh_sinh(f, lo, hi, tol=tol)
            else:
                res = integrate_finite(f, lo, hi, tol=tol, initial_panels=8)
            value, err = res.value, res.abs_error_estimate
        except NonConvergence:
            value, err, flagged = 0.0, math.inf, True
        partial_terms.append(value)
        partial = math.fsum(partial_terms)
        partials.append(partial)
        steps.append(CesaroStep(k, value, partial, math.fsum(partials) / (k + 1), err, flagged))
    return steps


def derivative_wrt_parameter(F, x0, order=1, step=None, levels=6):
    """Derivative of F at x0 by central differences with Richardson extrapolation.

    Returns (value, error estimate).  Supported orders: 1, 2, 4.
    """
    if order not in (1, 2, 4):
        raise ValueError("order must be 1, 2 or 4")
    if step is None:
        step = {1: 0.05, 2: 0.1, 4: 0.2}[order] * max(1.0, abs(x0))

    def stencil(h):
        if order == 1:
            return (F(x0 + h) - F(x0 - h)) / (2 * h)
        if order == 2:
            return (F(x0 + h) - 2 * F(x0) + F(x0 - h)) / (h * h)
        return (F(x0 + 2 * h) - 4 * F(x0 + h) + 6 * F(x0) - 4 * F(x0 - h) + F(x0 - 2 * h)) / h**4

    table = [[stencil(step / 2**i)] for i in range(levels)]
    best, best_err = table[0][0], math.inf
    for i in range(1, levels):
        for k in range(1, i + 1):
            factor = 4.0**k
            table[i].append((factor * table[i][k - 1] - table[i - 1][k - 1]) / (factor - 1))
        err = abs(table[i][i] - table[i - 1][i - 1])
        if err < best_err:
            best, best_err = table[i][i], err
    return best, best_err
