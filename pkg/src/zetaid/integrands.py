"""Integrand specifications and their vectorized evaluation.

An integrand is a sum of terms

    coef * prod_k trig_k(freq_k v) * part(F(sigma + i v, a)) * kernel(v) * v^n

where F is zeta, eta or beta on a vertical line (or a real-line factor for
the fixtures), part is Re, Im or |.|^2, trig is cos, sin or 1 - cos, and the
kernel is one of the hyperbolic weights below.  The exponential decay rate of
the kernel decides whether the integral converges absolutely.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import special_functions as sf
from .errors import DecayError, DomainError
from .quadrature import (
    QuadratureResult,
    cesaro_average,
    integrate_exponential,
    integrate_finite,
    integrate_tanh_sinh,
)

LN2 = math.log(2.0)

# kernel name -> decay rate as a function of its parameter
_RATES = {
    "sech": lambda p: math.pi,
    "sech2": lambda p: 2 * math.pi,
    "expsech": lambda p: 2 * math.pi,
    "tanh": lambda p: 0.0,
    "one": lambda p: 0.0,
    "cosh_ratio": lambda p: math.pi - abs(p),
    "sinh_ratio": lambda p: math.pi - abs(p),
    "cosh_over_cosh2": lambda p: math.pi,
    "sinh_over_cosh2": lambda p: math.pi,
    "gamma_sq": lambda p: 2 * math.pi,
    "csch2": lambda p: 2 * math.pi,
    "euler": lambda p: p[0],
}
FUNCTIONS = ("zeta", "eta", "beta", "one")
PARTS = ("re", "im", "abs2")
TRIGS = ("cos", "sin", "vers")


@dataclass(frozen=True)
class Term:
    coef: float
    part: str = "re"
    fn: str = "zeta"
    a: float = 1.0
    sigma: float = 0.5
    trigs: tuple = ()
    kernel: str = "sech"
    kparam: object = 0.0
    moment: int = 0

    def __post_init__(self):
        if self.fn not in FUNCTIONS or self.part not in PARTS:
            raise DomainError(f"unknown component {self.fn}/{self.part}")
        if self.kernel not in _RATES:
            raise DomainError(f"unknown kernel {self.kernel!r}")
        if not 0 <= self.moment <= 4:
            raise DomainError("moment power must lie in 0..4")
        for kind, _ in self.trigs:
            if kind not in TRIGS:
                raise DomainError(f"unknown oscillator {kind!r}")

    @property
    def rate(self):
        return _RATES[self.kernel](self.kparam)


@dataclass(frozen=True)
class IntegrandSpec:
    """Sum of terms over [lo, hi); hi = inf means a semi-infinite range."""

    terms: tuple
    lo: float = 0.0
    hi: float = math.inf
    singular_start: bool = False
    notes: tuple = field(default=())

    @property
    def rate(self):
        return min(t.rate for t in self.terms)

    @property
    def convergent(self):
        return math.isinf(self.hi) and self.rate > 0 or math.isfinite(self.hi)

    @property
    def moment_power(self):
        return max(t.moment for t in self.terms)

    def __call__(self, v):
        return evaluate(self, v)


# ---------------------------------------------------------------- builders

def rotated(coef, part, fn, r, a=1.0, kernel="sech", kparam=0.0, moment=0, extra=(), sigma=0.5):
    """Terms of coef * Re or Im of r^{iv} F(sigma + iv, a)."""
    w = math.log(r)
    c, s = ("cos", w), ("sin", w)
    kw = dict(fn=fn, a=a, sigma=sigma, kernel=kernel, kparam=kparam, moment=moment)
    if w == 0:
        return (Term(coef, part, trigs=tuple(extra), **kw),)
    if part == "re":
        return (
            Term(coef, "re", trigs=(c,) + tuple(extra), **kw),
            Term(-coef, "im", trigs=(s,) + tuple(extra), **kw),
        )
    return (
        Term(coef, "re", trigs=(s,) + tuple(extra), **kw),
        Term(coef, "im", trigs=(c,) + tuple(extra), **kw),
    )


def zterm(coef, part, trig=None, freq=LN2, kernel="sech", moment=0, fn="zeta", **kw):
    """Single term with an optional oscillator at frequency ln 2 (the common case)."""
    trigs = () if trig is None else ((trig, freq),)
    return Term(coef, part, fn=fn, trigs=trigs, kernel=kernel, moment=moment, **kw)


def spec(*groups, **kw):
    terms = []
    for g in groups:
        terms.extend(g if isinstance(g, (tuple, list)) else (g,))
    return IntegrandSpec(tuple(terms), **kw)


def rescaled(spec_, factor):
    return IntegrandSpec(
        tuple(Term(t.coef * factor, t.part, t.fn, t.a, t.sigma, t.trigs, t.kernel, t.kparam, t.moment)
              for t in spec_.terms),
        spec_.lo, spec_.hi, spec_.singular_start, spec_.notes,
    )


# ---------------------------------------------------------------- evaluation

def _sech(v):
    e = np.exp(-np.pi * np.abs(v))
    return 2.0 * e / (1.0 + e * e)


def _kernel(name, p, v):
    if name == "sech":
        return _sech(v)
    if name == "sech2":
        return _sech(v) ** 2
    if name == "expsech":
        return np.exp(-np.pi * v) * _sech(v)
    if name == "tanh":
        return np.tanh(np.pi * v)
    if name == "one":
        return np.ones_like(v)
    if name in ("cosh_ratio", "sinh_ratio"):
        sign = 1.0 if name == "cosh_ratio" else -1.0
        e2 = np.exp(-2.0 * np.pi * v)
        return (np.exp((p - np.pi) * v) + sign * np.exp(-(p + np.pi) * v)) / (1.0 + e2)
    if name in ("cosh_over_cosh2", "sinh_over_cosh2"):
        sign = 1.0 if name == "cosh_over_cosh2" else -1.0
        e = np.exp(-np.pi * v)
        return (e + sign * e ** 3) / (1.0 + e ** 4)
    if name == "gamma_sq":
        lg = np.asarray(sf.log_gamma(p + 1j * v), dtype=complex).real
        return np.exp(2.0 * lg) * _sech(v)
    if name == "csch2":
        e = np.exp(-2.0 * np.pi * v)
        return 2.0 * e / (1.0 - e * e)
    if name == "euler":
        a, s = p
        return np.exp(-a * v) * v ** (s - 1.0)
    raise DomainError(name)


def _function(fn, a, sigma, v):
    s = sigma + 1j * v
    if fn == "zeta":
        return np.asarray(sf.hurwitz_zeta(s, a), dtype=complex)
    if fn == "eta":
        return np.asarray(sf.hurwitz_eta(s, a), dtype=complex)
    if fn == "beta":
        return np.asarray(sf.dirichlet_beta(s), dtype=complex)
    return np.ones_like(s)


def _trig(kind, freq, v):
    x = freq * v
    if kind == "cos":
        return np.cos(x)
    if kind == "sin":
        return np.sin(x)
    return 2.0 * np.sin(0.5 * x) ** 2


def evaluate(spec_, v):
    v = np.asarray(v, dtype=float)
    cache = {}
    total = np.zeros_like(v)
    for t in spec_.terms:
        key = (t.fn, t.a, t.sigma)
        if key not in cache:
            cache[key] = _function(t.fn, t.a, t.sigma, v)
        f = cache[key]
        if t.part == "re":
            value = f.real
        elif t.part == "im":
            value = f.imag
        else:
            value = f.real ** 2 + f.imag ** 2
        value = t.coef * value * _kernel(t.kernel, t.kparam, v)
        for kind, freq in t.trigs:
            value = value * _trig(kind, freq, v)
        if t.moment:
            value = value * v ** t.moment
        total = total + value
    return total


def integrate(spec_, tol=1e-10):
    """Quadrature of an absolutely convergent integrand spec."""
    if math.isfinite(spec_.hi):
        return integrate_finite(spec_, spec_.lo, spec_.hi, tol=tol)
    rate = spec_.rate
    if not rate > 0:
        raise DecayError("kernel does not decay; the integral is defined by continuation only")
    if spec_.singular_start:
        head = integrate_tanh_sinh(spec_, spec_.lo, spec_.lo + 1.0, tol=0.5 * tol)
        tail = integrate_exponential(spec_, rate, 0.5 * tol, spec_.moment_power, 2.0, spec_.lo + 1.0)
        return QuadratureResult(
            head.value + tail.value,
            head.abs_error_estimate + tail.abs_error_estimate,
            tail.truncation_point,
            head.subdivisions + tail.subdivisions,
            tail.tail_bound,
        )
    return integrate_exponential(spec_, rate, tol, spec_.moment_power, 2.0, spec_.lo)


def cesaro(spec_, segment_length, n_segments, tol=1e-10):
    return cesaro_average(spec_, segment_length, n_segments, start=spec_.lo, tol=tol,
                          singular_start=spec_.singular_start)
