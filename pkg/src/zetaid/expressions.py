"""Closed-form right-hand sides as small arithmetic expressions.

Expressions are parsed with ``ast`` and evaluated over a whitelist of
constants and functions; nothing else is reachable.  Besides elementary
functions the table exposes the series families of ``closed_forms`` and
``exceptional_limits`` plus a few real-line integrals that appear on the
right-hand side of the squared-zeta identities.
"""

import ast
import cmath
import math
import operator
from functools import lru_cache

import numpy as np

from . import closed_forms as cf
from . import exceptional_limits as ex
from . import special_functions as sf
from .constants import registry
from .errors import DomainError
from .quadrature import integrate_finite, integrate_power_law

# ---------------------------------------------------------------- families


def _check_r(r):
    if not r > 0:
        raise DomainError("r must be positive")


def HR(r, phi, w):
    _check_r(r)
    return cf.hr_hi_series(r, phi, w)[0]


def HI(r, phi, w):
    _check_r(r)
    return cf.hr_hi_series(r, phi, w)[1]


def HR_fp(r, phi, w):
    """HR with the isolated exceptional term dropped (its finite part)."""
    return cf.hr_hi_series(r, phi, w, excluded_index=cf.exceptional_index(r, phi, w))[0]


def _phi_radius(r, phi0, a):
    """Half the distance from phi0 to the nearest singularity of the continued family."""
    best = math.pi
    for j in range(0, int(r) + 4):
        c = j + a
        d = abs(math.log(c / r))
        for centre in (math.pi, -math.pi):
            dist = abs(complex(phi0 - centre, -d))
            if dist > 1e-9:
                best = min(best, dist)
    return min(1.0, 0.5 * best)


def _phi_derivative(fn, phi0, radius, k):
    coefs = cf.taylor_coefficients(fn, phi0, radius, nodes=64)
    return float((coefs[k] * math.factorial(k)).real)


def HRdiff(r, phi, w, k):
    """k-th phi-derivative of HR, from the continuation to complex phi."""
    _check_r(r)
    skip = cf.exceptional_index(r, phi, w)
    radius = _phi_radius(r, phi, w + 0.5)
    return _phi_derivative(lambda z: cf.hr_hi_analytic(r, z, w, skip)[0], phi, radius, int(k))


def HIdiff(r, phi, w, k):
    """k-th phi-derivative of HI.  At an exceptional point the isolated term is even in phi
    and drops out of HI, so the remaining series is analytic there."""
    _check_r(r)
    skip = cf.exceptional_index(r, phi, w)
    radius = _phi_radius(r, phi, w + 0.5)
    return _phi_derivative(lambda z: cf.hr_hi_analytic(r, z, w, skip)[1], phi, radius, int(k))


def _R(r, phi, w):
    """-sqrt(r) (e^{i phi/2} psi(r e^{i phi} + w + 1/2) - (i phi + ln r) cos(phi/2) - sin(phi/2)(i ln r - phi))."""
    phi = complex(phi)
    lr = math.log(r)
    psi = complex(sf.digamma(r * cmath.exp(1j * phi) + w + 0.5))
    return -math.sqrt(r) * (
        cmath.exp(0.5j * phi) * psi - (1j * phi + lr) * cmath.cos(0.5 * phi)
        - cmath.sin(0.5 * phi) * (1j * lr - phi)
    )


def _zeta_pair(r, phi, w, finite_part=False):
    _check_r(r)
    if abs(phi) == math.pi:
        # the real part carries no psi and is the same on both sides of the pole
        x = w + 0.5 - r
        n = round(x)
        if abs(x - n) < 1e-12 and n <= 0:
            if not finite_part:
                return -math.pi * math.sqrt(r), math.nan
            psi = float(sf.digamma(1.0 - n))
        else:
            psi = float(sf.digamma(x))
        return -math.pi * math.sqrt(r), math.sqrt(r) * (psi - math.log(r))
    value = _R(r, phi, w)
    return value.real, -value.imag


def ZR(r, phi, w):
    """int_0^inf Re(r^{iv} zeta(1/2+iv, w+1/2)) cosh(phi v)/cosh(pi v) dv."""
    return _zeta_pair(r, phi, w)[0]


def ZI(r, phi, w):
    """int_0^inf Im(r^{iv} zeta(1/2+iv, w+1/2)) sinh(phi v)/cosh(pi v) dv."""
    value = _zeta_pair(r, phi, w)[1]
    if math.isnan(value):
        raise DomainError("psi is singular here; use the finite-part form ZI_fp")
    return value


def ZR_fp(r, phi, w):
    return _zeta_pair(r, phi, w, finite_part=True)[0]


def ZI_fp(r, phi, w):
    """ZI at phi = pi with psi(-m) replaced by its finite part psi(m + 1)."""
    return _zeta_pair(r, phi, w, finite_part=True)[1]


def ZIdiff(r, phi, w, k):
    """k-th phi-derivative of ZI; Im continues analytically as (R(-phi) - R(phi)) / 2i."""
    radius = _phi_radius(r, phi, w + 0.5)
    return _phi_derivative(lambda z: -(_R(r, z, w) - _R(r, -z, w)) / 2j, phi, radius, int(k))


def ray_icp(q, alpha, m, w):
    return ex.ray_series(int(m), w, q, alpha)[0]


def ray_rdp(q, alpha, m, w):
    return ex.ray_series(int(m), w, q, alpha)[1]


def weighted_ray(q, alpha, m, w):
    return ex.weighted_ray_series(int(m), w, q, alpha)


def reg(m, w, branch):
    state = ex.ApproachState(int(m), w, ex.RayInDisk(0.0, 0.7))
    return ex.regularized_series(state, branch=branch)


def theta_coef(m, k):
    return float(ex.theta_expansion(int(m), order=int(k))[int(k)])


def h2a(m, theta):
    return ex.theta_pv_combination(int(m), theta).h2a


def h2b(m, theta):
    return ex.theta_pv_combination(int(m), theta).h2b


def J2(r, phi, theta):
    return float(ex.j_values(r, phi, theta)[1].real)


def J2arc(m, theta):
    return ex.arc_finite_part(int(m), theta)


def J2rad(m, theta):
    return ex.radial_finite_part(int(m), theta)


def hab2_closed(theta):
    """Pole-free closed form of int sin^2(v theta) eta_I tanh(pi v) dv (m = 0)."""
    e1, e2 = math.exp(theta), math.exp(2 * theta)

    def first(j):
        return (j + 3) / (((j + 2) * e2 - 1) * (2 - e2 + j))

    def second(j):
        return (j + 2 + e1) / ((j + 1) * (2 - e2 + j))

    s1 = cf.sum_series(first, alternating=True).value.real
    s2 = cf.sum_series(second, alternating=True).value.real
    return -e2 * math.sinh(theta) / 2 * s1 + math.exp(theta / 2) * math.sinh(theta / 2) * s2


# ---------------------------------------------------------------- real-line integrals

@lru_cache(maxsize=None)
def zeta_sq_line(b, w):
    """int_0^inf zeta(b+1, v+w+1/2)^2 dv."""
    return integrate_power_law(lambda v: np.asarray(sf.hurwitz_zeta(b + 1.0, v + w + 0.5)).real ** 2,
                               tol=1e-13).value


@lru_cache(maxsize=None)
def hurwitz_sq_interval(b, lo, hi):
    """int_lo^hi zeta(b+1, v)^2 dv."""
    return integrate_finite(lambda v: np.asarray(sf.hurwitz_zeta(b + 1.0, v)).real ** 2, lo, hi,
                            tol=1e-13, rel_tol=1e-13, initial_panels=4).value


@lru_cache(maxsize=None)
def nielsen_sq_tail(lo):
    """int_lo^inf eta(1, v)^2 dv."""
    return integrate_power_law(lambda v: sf.nielsen_beta(v + lo) ** 2, tol=1e-13).value


@lru_cache(maxsize=None)
def psi_log_eta():
    """int_0^inf (psi(v+1) - ln v) eta(1, v+1) dv."""
    def f(v):
        return (np.asarray(sf.digamma(v + 1.0)).real - np.log(v)) * sf.nielsen_beta(v + 1.0)

    return integrate_power_law(f, tol=1e-13).value


def euler_J(a, b, s):
    return math.gamma(s) * math.cos(s * math.atan2(b, a)) / (a * a + b * b) ** (s / 2)


# ---------------------------------------------------------------- evaluator

FUNCTIONS = {
    "sqrt": math.sqrt, "log": math.log, "exp": math.exp, "sin": math.sin, "cos": math.cos,
    "sinh": math.sinh, "atan2": math.atan2,
    "gamma": lambda x: float(np.real(sf.gamma(x))),
    "psi": lambda x: float(np.real(sf.digamma(x))),
    "psi1": lambda x: float(np.real(sf.trigamma(x))),
    "zeta": lambda s: float(np.real(sf.zeta(s))),
    "eta1": lambda a: float(sf.nielsen_beta(a)),
    "eta2": lambda a: float(np.real(sf.hurwitz_eta(2.0, a))),
    "resX": cf.residue_X, "resY": cf.residue_Y,
    "HR": HR, "HI": HI, "HR_fp": HR_fp, "HRdiff": HRdiff, "HIdiff": HIdiff,
    "ZR": ZR, "ZI": ZI, "ZR_fp": ZR_fp, "ZI_fp": ZI_fp, "ZIdiff": ZIdiff,
    "ray_icp": ray_icp, "ray_rdp": ray_rdp, "weighted_ray": weighted_ray, "reg": reg,
    "theta_coef": theta_coef, "h2a": h2a, "h2b": h2b, "hab2_closed": hab2_closed,
    "J2": J2, "J2arc": J2arc, "J2rad": J2rad,
    "zeta_sq_line": zeta_sq_line, "hurwitz_sq_interval": hurwitz_sq_interval,
    "nielsen_sq_tail": nielsen_sq_tail, "psi_log_eta": psi_log_eta, "euler_J": euler_J,
}
CONSTANT_NAMES = ("pi", "gamma", "gamma1", "ln2", "zeta3", "zeta5", "H", "B", "Z0", "Z1", "Z2")
_BINARY = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


@lru_cache(maxsize=None)
def parse(expr):
    tree = ast.parse(expr, mode="eval")
    for node in ast.walk(tree):
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name) and node.func.id in FUNCTIONS):
            raise DomainError(f"call not allowed in {expr!r}")
        if isinstance(node, (ast.Attribute, ast.Subscript, ast.Lambda, ast.comprehension)):
            raise DomainError(f"construct not allowed in {expr!r}")
    return tree.body


def names_used(expr):
    return {n.id for n in ast.walk(parse(expr)) if isinstance(n, ast.Name) and n.id not in FUNCTIONS}


def _eval(node, env):
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        if node.id == "sqrt2":
            return math.sqrt(2.0)
        if node.id in CONSTANT_NAMES:
            return registry.get(node.id)
        raise DomainError(f"unknown name {node.id!r}")
    if isinstance(node, ast.BinOp):
        return _BINARY[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.UnaryOp):
        return _UNARY[type(node.op)](_eval(node.operand, env))
    if isinstance(node, ast.Call):
        return FUNCTIONS[node.func.id](*[_eval(a, env) for a in node.args])
    raise DomainError(f"unsupported syntax {ast.dump(node)}")


def evaluate(expr, params=None):
    return float(np.real(_eval(parse(expr), dict(params or {}))))
