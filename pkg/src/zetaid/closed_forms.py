"""Right-hand sides: residue tables, the alternating j-series and psi components.

Notation used throughout: for a = r e^{i phi} and c_j = j + w + 1/2,

    D_j = 2 r c_j cos(phi) + r^2 + c_j^2 = |c_j + a|^2
    S1  = sum_j (-1)^j / D_j
    S2  = sum_j (-1)^j (r cos(phi) + c_j) / D_j

so that T(a) = sum_j (-1)^j / (c_j + a) = S2 - i r sin(phi) S1.
"""

import logging
import math

import numpy as np

from . import special_functions as sf
from .constants import EULER_GAMMA
from .errors import DomainError, PoleError, SingularTermError
from .series import sum_series

log = logging.getLogger("zetaid")


# ---------------------------------------------------------------- residues

def _strictly(lhs, rhs, label):
    """lhs < rhs, with exact ties reported and treated as not firing."""
    if lhs == rhs:
        log.warning("residue branch boundary hit (%s): choosing the zero branch", label)
        return False
    return lhs < rhs


def _sin_pi(b):
    value = math.sin(math.pi * b)
    if b == round(b):
        raise PoleError(f"sin(pi b) vanishes at b={b}; take the limit in b instead")
    return value


def residue_X(b, sigma, w):
    """Cumulative residue correction for the squared Hurwitz zeta identity.

    Each of the inequalities b<sigma, sigma<1-b, b+1<sigma, sigma<-b,
    sigma<-b-1 that holds contributes its row once.
    """
    if not -1 < b < 1 or not 0 < sigma < 1:
        raise DomainError("residue_X needs -1 < b < 1 and 0 < sigma < 1")
    hits = [
        (1, _strictly(b, sigma, "b = sigma")),
        (1, _strictly(sigma, 1 - b, "sigma = 1 - b")),
        (2, _strictly(b + 1, sigma, "b + 1 = sigma")),
        (2, _strictly(sigma, -b, "sigma = -b")),
        (3, _strictly(sigma, -b - 1, "sigma = -b - 1")),
    ]
    rows = [row for row, fired in hits if fired]
    if not rows:
        return 0.0
    denom = sf.gamma(b + 1.0) ** 2 * _sin_pi(b)
    a = w + 0.5
    total = 0.0
    for row in rows:
        if row == 1:
            total += math.pi * sf.hurwitz_zeta(2 * b, a) * sf.gamma(2 * b) / denom
        elif row == 2:
            total += math.pi * w * sf.hurwitz_zeta(2 * b + 1, a) * sf.gamma(2 * b + 1) / denom
        else:
            total += (
                math.pi * sf.hurwitz_zeta(2 * b + 2, a) * (12 * w * w - 1) * sf.gamma(2 * b + 2) / (24 * denom)
            )
    return float(np.real(total))


def residue_Y(b, sigma, w):
    """Residue correction for the squared alternating zeta identity.

    Fires once for each of sigma < -b and sigma > b + 1 that holds.
    """
    if not 0 < sigma < 1:
        raise DomainError("residue_Y needs 0 < sigma < 1")
    count = int(_strictly(sigma, -b, "sigma = -b")) + int(_strictly(b + 1, sigma, "sigma = b + 1"))
    if count == 0:
        return 0.0
    value = -math.pi * sf.hurwitz_eta(2 * b + 1, w + 0.5) * sf.gamma(2 * b + 1) / (
        2 * _sin_pi(b) * sf.gamma(b + 1.0) ** 2
    )
    return float(np.real(count * value))


def residue_Z(x, b, sigma, w):
    """Residue correction for the mixed zeta * eta moment identity (x > sigma)."""
    if not 0 < sigma < 1:
        raise DomainError("residue_Z needs 0 < sigma < 1")
    if not x > sigma:
        raise DomainError("residue_Z needs x > sigma")
    a = w + 0.5
    total = 0.0
    if _strictly(b, sigma, "b = sigma"):
        if b == 0:
            raise PoleError("Gamma(b) is singular at b=0; take the limit in b instead")
        total += (
            sf.gamma(b) * sf.gamma(x - b) * sf.hurwitz_eta(2 * b + 1 - x, a) * sf.gamma(2 * b + 1 - x)
            / sf.gamma(b + 1.0) ** 2
        )
    if _strictly(sigma, -b, "sigma = -b"):
        total += (
            sf.gamma(x - b - 1) * sf.hurwitz_zeta(2 * b + 2 - x, a) * sf.gamma(2 * b + 2 - x)
            / (2 * sf.gamma(b + 1.0))
        )
    if _strictly(b + 1, sigma, "b + 1 = sigma"):
        total -= (
            w * sf.gamma(x - b - 1) * sf.hurwitz_eta(2 * b + 2 - x, a) * sf.gamma(2 * b + 2 - x)
            / sf.gamma(b + 1.0)
        )
    return float(np.real(total))


# ---------------------------------------------------------- j-series

def _denominator(j, r, phi, w):
    c = j + w + 0.5
    # (c - r)^2 + 2 r c (1 + cos phi), with 1 + cos phi = 2 cos^2(phi/2)
    return (c - r) ** 2 + 4.0 * r * c * math.cos(0.5 * phi) ** 2


def exceptional_index(r, phi, w, rel=1e-24):
    """Index j whose denominator D_j vanishes (to roundoff), or None."""
    m = round(r - w - 0.5)
    if m < 0:
        return None
    d = _denominator(m, r, phi, w)
    if abs(d) <= rel * (m + w + 0.5 + r) ** 2:
        return int(m)
    return None


def _cut_hint(r):
    return 64 + 4 * int(math.ceil(abs(r)))


def alternating_sums(r, phi, w, excluded_index=None, tol=1e-14):
    """(S1, S2) with the j = excluded_index term omitted if given."""
    bad = exceptional_index(r, phi, w)
    if bad is not None and bad != excluded_index:
        raise SingularTermError(
            f"term j={bad} is singular (r - w - 1/2 = {bad} at phi = +-pi)", index=bad
        )
    rc = r * math.cos(phi)

    def s1(j):
        return 1.0 / _denominator(j, r, phi, w)

    def s2(j):
        return (rc + j + w + 0.5) / _denominator(j, r, phi, w)

    cut = _cut_hint(r)
    first = sum_series(s1, skip=excluded_index, alternating=True, tol=tol, cut=cut).value.real
    second = sum_series(s2, skip=excluded_index, alternating=True, tol=tol, cut=cut).value.real
    return first, second


def hr_hi_series(r, phi, w, sigma=0.5, excluded_index=None):
    """Closed-form values of the real-part and imaginary-part integrals.

    Returns (Re(a^{1-sigma} T(a)), -Im(a^{1-sigma} T(a))) built from the
    real j-series, with a = r e^{i phi}.  For sigma = 1/2 these equal

        int_0^inf Re(r^{iv} eta(1/2+iv, w+1/2)) cosh(phi v)/cosh(pi v) dv
        int_0^inf Im(r^{iv} eta(1/2+iv, w+1/2)) sinh(phi v)/cosh(pi v) dv
    """
    if r <= 0 or w < 0 or not 0 < sigma < 1:
        raise DomainError("hr_hi_series needs r > 0, w >= 0, 0 < sigma < 1")
    s1, s2 = alternating_sums(r, phi, w, excluded_index)
    chi = phi * (1.0 - sigma)
    y = r * math.sin(phi)
    scale = r ** (1.0 - sigma)
    real_part = scale * (math.cos(chi) * s2 + y * math.sin(chi) * s1)
    imag_part = scale * (y * math.cos(chi) * s1 - math.sin(chi) * s2)
    return real_part, imag_part


def reciprocal_sum(a, w, excluded_index=None, tol=1e-14):
    """T(a) = sum_j (-1)^j / (j + w + 1/2 + a) for complex a, optionally skipping one j."""
    a = complex(a)
    c = w + 0.5 + a

    def term(j):
        return 1.0 / (j + c)

    cut = _cut_hint(abs(a))
    return complex(sum_series(term, skip=excluded_index, alternating=True, tol=tol, cut=cut).value)


def phi_kernel_sum(r, phi, w, excluded_index=None):
    """Phi(r, phi) = sqrt(r) e^{i phi/2} T(r e^{i phi}), analytic in complex r and phi."""
    phi = complex(phi)
    a = r * np.exp(1j * phi)
    return complex(np.sqrt(complex(r)) * np.exp(0.5j * phi) * reciprocal_sum(a, w, excluded_index))


def hr_hi_analytic(r, phi, w, excluded_index=None):
    """(HR, HI) at sigma = 1/2 continued to complex phi.

    HR = (Phi(phi) + Phi(-phi)) / 2 and HI = i (Phi(phi) - Phi(-phi)) / 2, which
    agree with hr_hi_series on real phi with |phi| <= pi.
    """
    plus = phi_kernel_sum(r, phi, w, excluded_index)
    minus = phi_kernel_sum(r, -phi, w, excluded_index)
    return 0.5 * (plus + minus), 0.5j * (plus - minus)


def taylor_coefficients(fn, centre, radius, nodes=64):
    """Taylor coefficients of an analytic fn about centre, from an FFT on a circle."""
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    vals = np.array([fn(centre + radius * np.exp(1j * t)) for t in theta], dtype=complex)
    return np.fft.fft(vals) / nodes / radius ** np.arange(nodes)


def laurent_coefficient(fn, radius, order=0, nodes=64):
    """Coefficient of z^order in the Laurent expansion of fn about z = 0."""
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    z = radius * np.exp(1j * theta)
    vals = np.array([fn(zk) for zk in z], dtype=complex)
    return complex(np.mean(vals * z ** (-order)))


def psi_components(r, phi, w):
    """(Re, Im) of psi(r cos(phi) + w + 1/2 + i r sin(phi)) from real series."""
    bad = exceptional_index(r, phi, w)
    if bad is not None:
        raise SingularTermError(f"psi argument sits on the pole at -{bad}", index=bad)
    rc = r * math.cos(phi)
    h = w + 0.5
    d0 = _denominator(0, r, phi, w)
    cut = _cut_hint(r)

    def real_term(j):
        num = rc * (j + 2 * w + 1) + r * r + h * (j + h)
        return num / (j * _denominator(j, r, phi, w))

    def imag_term(j):
        return np.ones_like(j) * r * math.sin(phi) / _denominator(j, r, phi, w)

    real_sum = sum_series(real_term, start=1, cut=cut).value.real
    imag_sum = sum_series(imag_term, cut=cut).value.real
    return -EULER_GAMMA - (rc + h) / d0 + real_sum, imag_sum


def eta_log_moment(s):
    """Closed form of int_0^inf v^{s-1} ln(v) eta(1, v+1) dv for 0 < s < 1."""
    if not 0 < s < 1:
        raise DomainError("eta_log_moment needs 0 < s < 1")
    sin_ps = math.sin(math.pi * s)
    if sin_ps == 0:
        raise PoleError("sin(pi s) vanishes")
    z = sf.zeta(1.0 - s)
    zp = sf.zeta_prime(1.0 - s)
    two_s = 2.0**s
    first = math.pi * ((two_s - 1) * zp - two_s * math.log(2.0) * z) / sin_ps
    second = math.pi**2 * math.cos(math.pi * s) * (two_s - 1) * z / sin_ps**2
    return float(np.real(first + second))
