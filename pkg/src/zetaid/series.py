"""Summation of slowly convergent series with analytic terms.

Every series in the package has the form sum_j s_j f(j) with s_j = 1 or
(-1)^j and f a rational (hence analytic) function decaying like 1/j or 1/j^2.
The head j < J is summed directly, pairwise with exact (fsum) accumulation.
The tail is summed in closed form:

* alternating: Boole summation, sum_{k>=0} (-1)^k f(J+k) = 1/2 sum_n E_n(0) f^(n)(J)/n!
* monotone: Euler-Maclaurin, integral from J to infinity plus Bernoulli corrections

The derivatives f^(n)(J) come from an FFT of f on a circle around J, so f
must accept complex arguments.  The result is cross-checked by repeating the
whole computation with the cut-off doubled.  If that check fails, the Levin
u-transform of the tail is used instead.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, SingularTermError
from .special_functions import BERNOULLI

# E_n(0) for n = 0..31 (zero for even n >= 2)
_EULER_AT_ZERO = [1.0] + [
    float(-2 * (2 ** (n + 1) - 1) * BERNOULLI[n + 1] / (n + 1)) if n % 2 else 0.0
    for n in range(1, 32)
]
_B2K_OVER_2K = [float(BERNOULLI[2 * k] / (2 * k)) for k in range(1, 16)]
_GL_T, _GL_W = np.polynomial.legendre.leggauss(48)
_GL_T = 0.5 * (_GL_T + 1.0)
_GL_W = 0.5 * _GL_W
_CIRCLE_NODES = 32


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    error: float
    terms_used: int


def levin_u(terms, beta=1.0):
    """Levin u-transform of sum(terms); returns (estimate, error estimate).

    ``beta`` is the 1-based position of the first term within the full series.
    Estimates L_k for increasing k and keeps the one that changed least from
    its predecessor.  Reliable to ~1e-15 on alternating tails, ~1e-11 on
    monotone 1/j^p tails.
    """
    a = np.asarray(terms, dtype=complex)
    partial = np.cumsum(a)
    n_terms = len(a)
    if n_terms < 3:
        return complex(partial[-1]), float("inf")
    if not np.all(a != 0):
        first = int(np.argmin(a != 0))
        return complex(partial[first]), 0.0
    omega = (beta + np.arange(n_terms)) * a
    best, best_err, prev = complex(partial[-1]), float("inf"), None
    for k in range(1, n_terms):
        j = np.arange(k + 1)
        weights = np.array([(-1.0) ** jj * math.comb(k, jj) for jj in j])
        weights = weights * ((beta + j) / (beta + k)) ** (k - 1)
        with np.errstate(all="ignore"):
            num = np.sum(weights * partial[: k + 1] / omega[: k + 1])
            den = np.sum(weights / omega[: k + 1])
            estimate = complex(num / den)
        if not np.isfinite(estimate):
            continue
        if prev is not None and abs(estimate - prev) < best_err:
            best, best_err = estimate, abs(estimate - prev)
        prev = estimate
    return best, best_err


def _fsum_complex(values):
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _head(f, start, stop, skip, alternating):
    j = np.arange(start, stop)
    if skip is not None:
        j = j[j != skip]
    if len(j) == 0:
        return 0j
    vals = np.asarray(f(j.astype(float)), dtype=complex)
    if not np.all(np.isfinite(vals)):
        bad = int(j[~np.isfinite(vals)][0])
        raise SingularTermError(f"series term j={bad} has a vanishing denominator", index=bad)
    if alternating:
        vals = np.where(j % 2 == 0, vals, -vals)
    # pair neighbouring terms before the exact sum
    if len(vals) % 2:
        vals = np.append(vals, 0.0)
    return _fsum_complex(vals[0::2] + vals[1::2])


def _circle_coefficients(f, centre, radius):
    theta = 2.0 * np.pi * np.arange(_CIRCLE_NODES) / _CIRCLE_NODES
    vals = np.asarray(f(centre + radius * np.exp(1j * theta)), dtype=complex)
    # Taylor coefficients f^(n)(centre)/n! = c_n / radius^n
    c = np.fft.fft(vals) / _CIRCLE_NODES
    return c / radius ** np.arange(_CIRCLE_NODES)


def _tail(f, cut, alternating):
    """sum_{j>=cut} s_j f(j) with the sign convention s_j relative to j=cut."""
    taylor = _circle_coefficients(f, float(cut), 0.25 * cut)
    if alternating:
        total = taylor[0]
        for n in range(1, 16, 2):
            total += _EULER_AT_ZERO[n] * taylor[n]
        return 0.5 * total
    # x = cut/u^2 maps [cut, inf) to (0, 1]; smooth for f ~ x^-p, p > 1
    u = _GL_T
    integral = 2.0 * cut * np.sum(_GL_W * np.asarray(f(cut / (u * u)), dtype=complex) / u**3)
    total = integral + 0.5 * taylor[0]
    for k in range(1, 9):
        # B_2k/(2k)! f^(2k-1)(cut) = B_2k/(2k) * taylor[2k-1]
        total -= _B2K_OVER_2K[k - 1] * taylor[2 * k - 1]
    return complex(total)


def _total(f, start, cut, skip, alternating):
    head = _head(f, start, cut, skip, alternating)
    tail = _tail(f, cut, alternating)
    if alternating and cut % 2:
        tail = -tail
    return head + tail


def sum_series(f, start=0, skip=None, alternating=False, tol=1e-14, cut=64, max_cut=1 << 16):
    """Sum s_j f(j) over j >= start, j != skip; s_j = (-1)^j if alternating.

    ``f`` maps a float/complex numpy array to an array and must be analytic
    near the positive real axis beyond ``start``.
    """
    cut = max(cut, start + 16, (skip if skip is not None else 0) + 16)
    while cut <= max_cut:
        first = _total(f, start, cut, skip, alternating)
        second = _total(f, start, 2 * cut, skip, alternating)
        err = abs(first - second)
        if err <= tol * max(abs(second), 1.0):
            return SeriesResult(second, err, 2 * cut)
        cut *= 4
    return _levin_fallback(f, start, skip, alternating, tol, max_cut)


def _levin_fallback(f, start, skip, alternating, tol, cut):
    head = _head(f, start, cut, skip, alternating)
    j = np.arange(cut, cut + 28)
    terms = np.asarray(f(j.astype(float)), dtype=complex)
    if alternating:
        terms = np.where(j % 2 == 0, terms, -terms)
    tail, err = levin_u(terms, beta=1.0 + cut)
    value = head + tail
    if not err <= 1e3 * tol * max(abs(value), 1.0):
        raise NonConvergence(f"series tail not certified at cut-off {cut} (err {err:.2e})")
    return SeriesResult(value, err, cut + 28)
