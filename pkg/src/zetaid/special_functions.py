"""Special functions on and near the critical line.

Everything is evaluated from scratch on numpy arrays:

* log-gamma, digamma and trigamma by a recurrence shift followed by the
  Stirling/asymptotic series;
* the Hurwitz zeta function by Euler-Maclaurin summation;
* the alternating Hurwitz zeta (eta) function from its even/odd split into two
  Hurwitz zeta values, with Boole summation as a direct alternating route.

Arguments may be Python scalars or numpy arrays (broadcast together).  Scalar
input gives scalar output.  Real input gives real output wherever the function
is real on the real axis.
"""

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError
from .precision import compensated

LOG_2PI_HALF = 0.5 * math.log(2.0 * math.pi)


def _bernoulli_numbers(n):
    numbers = [Fraction(1)]
    for k in range(1, n + 1):
        numbers.append(-sum(math.comb(k + 1, j) * numbers[j] for j in range(k)) / (k + 1))
    return numbers


BERNOULLI = _bernoulli_numbers(40)

# Euler-Maclaurin: B_2k / (2k)!
_EM = [float(BERNOULLI[2 * k] / math.factorial(2 * k)) for k in range(1, 16)]
# Stirling series for log-gamma: B_2k / (2k (2k-1))
_STIRLING = [float(BERNOULLI[2 * k] / (2 * k * (2 * k - 1))) for k in range(1, 16)]
_DIGAMMA = [float(BERNOULLI[2 * k] / (2 * k)) for k in range(1, 16)]
_TRIGAMMA = [float(BERNOULLI[2 * k]) for k in range(1, 16)]
# Boole summation: E_n(0)/n! for odd n, with E_n(0) = -2 (2^(n+1) - 1) B_(n+1) / (n+1)
_BOOLE = [
    float(-2 * (2 ** (n + 1) - 1) * BERNOULLI[n + 1] / (n + 1) / math.factorial(n))
    for n in range(1, 32, 2)
]

# Shifted argument must satisfy |x| >= _ASYMPTOTIC before an asymptotic series is used.
_ASYMPTOTIC = 15.0
# Euler-Maclaurin and Boole tails start at x >= max(_EM_X0, |s|).
_EM_X0 = 12.0


def _prepare(*args):
    scalar = all(np.ndim(a) == 0 for a in args)
    real = all(np.isrealobj(a) for a in args)
    return scalar, real


def _finish(value, scalar, real):
    value = np.asarray(value)
    if not np.all(np.isfinite(value)):
        raise DomainError("special function value overflowed or is not finite")
    if real:
        value = value.real
    if scalar:
        return float(value) if real else complex(value)
    return value


def _check_poles(z):
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(bad):
        raise PoleError(f"non-positive integer argument {z[bad].ravel()[0].real:g}")


def _shift_counts(z):
    """Number of unit steps needed before the asymptotic series is accurate."""
    need = np.where(
        np.abs(z.imag) < _ASYMPTOTIC,
        np.ceil(np.maximum(0.0, _ASYMPTOTIC - z.real)),
        np.ceil(np.maximum(0.0, 1.0 - z.real)),
    )
    return need.astype(int)


def _horner(coefs, x):
    acc = np.zeros_like(x)
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


def log_gamma(z):
    """Analytic log-gamma (matches the principal branch on the positive axis).

    Uses log Gamma(z) = log Gamma(z+n) - sum_{k<n} log(z+k) and the Stirling
    series at z+n.  Logs of the individual factors keep the branch continuous
    in the upper and lower half planes.
    """
    scalar, real = _prepare(z)
    z = np.asarray(z, dtype=complex)
    _check_poles(z)
    shift = _shift_counts(z)
    w = z.copy()
    acc = np.zeros_like(z)
    for k in range(int(shift.max(initial=0))):
        live = shift > k
        acc = acc - np.where(live, np.log(np.where(live, w, 1.0)), 0.0)
        w = np.where(live, w + 1.0, w)
    inv = 1.0 / w
    series = inv * _horner(_STIRLING, inv * inv)
    value = (w - 0.5) * np.log(w) - w + LOG_2PI_HALF + series + acc
    real = real and bool(np.all(z.real > 0))
    return _finish(value, scalar, real)


def gamma(z):
    scalar, real = _prepare(z)
    value = np.exp(np.asarray(log_gamma(np.asarray(z, dtype=complex)), dtype=complex))
    return _finish(value, scalar, real)


def digamma(z):
    """psi(z) = d/dz log Gamma(z)."""
    scalar, real = _prepare(z)
    z = np.asarray(z, dtype=complex)
    _check_poles(z)
    shift = _shift_counts(z)
    w = z.copy()
    acc = np.zeros_like(z)
    for k in range(int(shift.max(initial=0))):
        live = shift > k
        acc = acc - np.where(live, 1.0 / np.where(live, w, 1.0), 0.0)
        w = np.where(live, w + 1.0, w)
    inv = 1.0 / w
    inv2 = inv * inv
    value = np.log(w) - 0.5 * inv - inv2 * _horner(_DIGAMMA, inv2) + acc
    return _finish(value, scalar, real)


def trigamma(z):
    """psi'(z) = sum_{j>=0} 1/(j+z)^2."""
    scalar, real = _prepare(z)
    z = np.asarray(z, dtype=complex)
    _check_poles(z)
    shift = _shift_counts(z)
    w = z.copy()
    acc = np.zeros_like(z)
    for k in range(int(shift.max(initial=0))):
        live = shift > k
        wk = np.where(live, w, 1.0)
        acc = acc + np.where(live, 1.0 / (wk * wk), 0.0)
        w = np.where(live, w + 1.0, w)
    inv = 1.0 / w
    inv2 = inv * inv
    value = inv + 0.5 * inv2 + inv * inv2 * _horner(_TRIGAMMA, inv2) + acc
    return _finish(value, scalar, real)


def _direct_sum(s, a, n_terms, alternating):
    """sum_{k<n} (+-1)^k (k+a)^(-s), optionally with Neumaier compensation."""
    total = np.zeros(np.broadcast(s, a).shape, dtype=complex)
    if not compensated():
        sign = 1.0
        for k in range(n_terms):
            total = total + sign * np.exp(-s * np.log(k + a))
            if alternating:
                sign = -sign
        return total
    carry = np.zeros_like(total)
    sign = 1.0
    for k in range(n_terms):
        term = sign * np.exp(-s * np.log(k + a))
        t = total + term
        big = np.abs(total) >= np.abs(term)
        carry = carry + np.where(big, (total - t) + term, (term - t) + total)
        total = t
        if alternating:
            sign = -sign
    return total + carry


def _tail_start(s, a):
    target = np.maximum(_EM_X0, np.abs(s))
    return int(max(0.0, math.ceil(float(np.max(target - a)))))


def _zeta_em(s, a):
    n = _tail_start(s, a)
    total = _direct_sum(s, a, n, alternating=False)
    x = n + a
    xs = np.exp(-s * np.log(x))
    total = total + x * xs / (s - 1.0) + 0.5 * xs
    term = s * xs / x
    inv2 = 1.0 / (x * x)
    tail = np.zeros_like(total)
    for j, coef in enumerate(_EM):
        tail = tail + coef * term
        term = term * (s + 2 * j + 1) * (s + 2 * j + 2) * inv2
    return total + tail


def _eta_boole(s, a):
    n = _tail_start(s, a)
    total = _direct_sum(s, a, n, alternating=True)
    x = n + a
    xs = np.exp(-s * np.log(x))
    tail = xs.copy()
    term = s * xs / x
    inv2 = 1.0 / (x * x)
    for j, coef in enumerate(_BOOLE):
        tail = tail - coef * term
        nn = 2 * j + 1
        term = term * (s + nn) * (s + nn + 1) * inv2
    return total + (0.5 if n % 2 == 0 else -0.5) * tail


def _broadcast_sa(s, a):
    s = np.asarray(s, dtype=complex)
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise DomainError("Hurwitz parameter a must be positive")
    return np.broadcast_arrays(s, a)


def hurwitz_zeta(s, a=1.0):
    """zeta(s, a) = sum_{k>=0} (k+a)^(-s) for a > 0, s != 1."""
    scalar, real = _prepare(s, a)
    s, a = _broadcast_sa(s, a)
    if np.any(s == 1.0):
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    return _finish(_zeta_em(s, a), scalar, real)


# Beyond this a, or this close to s = 1, the zeta difference loses digits.
_ETA_BOOLE_A = 200.0
_ETA_BOOLE_S1 = 1e-2


def hurwitz_eta(s, a=1.0, method="auto"):
    """eta(s, a) = sum_{k>=0} (-1)^k (k+a)^(-s), entire in s.

    ``method="zeta"`` uses (zeta(s,a/2) - zeta(s,a/2+1/2)) / 2^s, ``"boole"``
    sums the alternating series directly with a Boole remainder, and
    ``"auto"`` (default) takes the zeta difference except near s = 1 or for
    large a, where the difference cancels badly.
    """
    scalar, real = _prepare(s, a)
    s, a = _broadcast_sa(s, a)
    if method == "boole":
        return _finish(_eta_boole(s, a), scalar, real)
    if method not in ("auto", "zeta"):
        raise ValueError(f"unknown method {method!r}")
    if method == "zeta":
        if np.any(s == 1.0):
            value = np.where(s == 1.0, _eta_one(a), 0.0)
            rest = s != 1.0
            if np.any(rest):
                value[rest] = _eta_by_zeta(s[rest], a[rest])
            return _finish(value, scalar, real)
        return _finish(_eta_by_zeta(s, a), scalar, real)
    direct = (np.abs(s - 1.0) < _ETA_BOOLE_S1) | (a > _ETA_BOOLE_A)
    value = np.empty(s.shape, dtype=complex)
    if np.any(direct):
        value[direct] = _eta_boole(s[direct], a[direct])
    if np.any(~direct):
        value[~direct] = _eta_by_zeta(s[~direct], a[~direct])
    return _finish(value, scalar, real)


def _eta_by_zeta(s, a):
    return (_zeta_em(s, 0.5 * a) - _zeta_em(s, 0.5 * a + 0.5)) * np.exp(-s * math.log(2.0))


def _eta_one(a):
    return 0.5 * (np.asarray(digamma(0.5 * (a + 1.0))) - np.asarray(digamma(0.5 * a)))


def zeta(s):
    return hurwitz_zeta(s, 1.0)


def eta(s):
    return hurwitz_eta(s, 1.0)


def dirichlet_beta(s):
    """beta(s) = eta(s, 1/2) / 2^s = sum_j (-1)^j / (2j+1)^s."""
    scalar, real = _prepare(s)
    s = np.asarray(s, dtype=complex)
    value = np.asarray(hurwitz_eta(s, 0.5), dtype=complex) * np.exp(-s * math.log(2.0))
    return _finish(value, scalar, real)


def nielsen_beta(v):
    """Nielsen's beta B(v) = eta(1, v) = (psi((v+1)/2) - psi(v/2)) / 2."""
    scalar, _ = _prepare(v)
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise DomainError("Nielsen beta needs v > 0")
    return _finish(_eta_one(v), scalar, True)


def psi_limit_check(b, v):
    """zeta(b+1, v) - 1/b, which tends to -psi(v) as b -> 0."""
    if np.any(np.asarray(v) <= 0):
        raise DomainError("v must be positive")
    if b == 0:
        raise PoleError("b = 0 is the limit point itself")
    # Euler-Maclaurin with the pole part x^{-b}/b - 1/b = expm1(-b ln x)/b formed from b
    # itself, since s - 1 recomputed from s = 1 + b loses digits
    scalar, _ = _prepare(v)
    vv = np.atleast_1d(np.asarray(v, dtype=float))
    s = complex(1.0 + b)
    out = np.empty(vv.shape)
    for i, a in enumerate(vv):
        n = _tail_start(s, a)
        x = n + a
        total = complex(_direct_sum(np.asarray(s), np.asarray(a), n, alternating=False))
        xs = cmath.exp(-s * math.log(x))
        total += math.expm1(-b * math.log(x)) / b + 0.5 * xs
        term = s * xs / x
        for j, coef in enumerate(_EM):
            total += coef * term
            term = term * (s + 2 * j + 1) * (s + 2 * j + 2) / (x * x)
        out[i] = total.real
    return float(out[0]) if scalar else out


def gamma_modulus_sq_imag(v):
    """|Gamma(iv)|^2 computed from log_gamma."""
    scalar, _ = _prepare(v)
    z = 1j * np.asarray(v, dtype=float)
    value = np.exp(2.0 * np.asarray(log_gamma(z), dtype=complex).real)
    return _finish(value, scalar, True)


def gamma_modulus_sq_half(v):
    """|Gamma(1/2 + iv)|^2 computed from log_gamma."""
    scalar, _ = _prepare(v)
    z = 0.5 + 1j * np.asarray(v, dtype=float)
    value = np.exp(2.0 * np.asarray(log_gamma(z), dtype=complex).real)
    return _finish(value, scalar, True)


def zeta_prime(x, a=1.0):
    """d/ds zeta(s, a) at real s = x, by the complex-step derivative.

    The Euler-Maclaurin evaluator is analytic in s, so Im zeta(x + ih)/h has
    no subtractive cancellation.
    """
    h = 1e-30
    if x == 1.0:
        raise PoleError("zeta' has a pole at s = 1")
    return float(np.asarray(hurwitz_zeta(complex(x, h), a)).imag / h)


def stieltjes_constants(n_max=2, radius=1.0, nodes=64):
    """gamma_0..gamma_n from the Laurent expansion of zeta about s = 1.

    zeta(s) - 1/(s-1) is entire with Taylor coefficients (-1)^n gamma_n / n!;
    they are read off by the trapezoid rule on a circle around s = 1.
    """
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    u = radius * np.exp(1j * theta)
    f = np.asarray(hurwitz_zeta(1.0 + u, 1.0)) - 1.0 / u
    coefs = np.fft.fft(f) / nodes
    return [
        float(((-1) ** n) * math.factorial(n) * (coefs[n] / radius**n).real)
        for n in range(n_max + 1)
    ]


def principal_sqrt(z):
    return cmath.sqrt(z)
