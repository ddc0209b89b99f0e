"""Acceptance suite: one PASS/FAIL line per criterion.

Run ``pytest -s tests/test_acceptance.py`` or ``python tests/test_acceptance.py``
to see the lines; under plain pytest each criterion is also an ordinary test.
"""

import math
import os
import subprocess
import sys
import time

import numpy as np

from zetaid import exceptional_limits as el
from zetaid import identity_catalog as ic
from zetaid import special_functions as sf
from zetaid.constants import EULER_GAMMA, REFERENCE, matched_digits, registry
from zetaid.exceptional_limits import ApproachState, Delta, RayInDisk
from zetaid.integrands import cesaro
from zetaid.precision import precision

LN2 = math.log(2.0)
ZETA3 = 1.2020569031595942854
ZETA5 = 1.0369277551433699263
HERE = os.path.dirname(os.path.abspath(__file__))


def report(number, title, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail}")
    assert ok, detail


def test_01_gamma_modulus():
    t0 = time.perf_counter()
    v = np.linspace(0.1, 30.0, 300)
    half = np.max(np.abs(sf.gamma_modulus_sq_half(v) * np.cosh(np.pi * v) / math.pi - 1))
    imag = np.max(np.abs(sf.gamma_modulus_sq_imag(v) * v * np.sinh(np.pi * v) / math.pi - 1))
    dt = time.perf_counter() - t0
    ok = half <= 1e-12 and imag <= 1e-12 and dt < 1.0
    report(1, "gamma modulus invariants", ok, f"max rel err {max(half, imag):.2e}, {dt:.3f} s")


def test_02_theorems():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst, failures = 0.0, []
    for _ in range(10):
        s, w = rng.uniform(0.3, 1.5), rng.uniform(0.2, 1.5)
        b = rng.uniform(max(0.1, s - 0.7), 2.5)
        rep = ic.theorem_check("Thm1", s, b, w, tol=1e-7)
        worst = max(worst, rep.abs_err / max(1.0, abs(rep.rhs)))
        failures += [rep.id] if not rep.passed else []
    for _ in range(10):
        s, w = rng.uniform(0.3, 1.5), rng.uniform(0.2, 1.5)
        b = s + rng.uniform(0.3, 2.0)
        rep = ic.theorem_check("Thm2", s, b, w, tol=1e-7)
        worst = max(worst, rep.abs_err / max(1.0, abs(rep.rhs)))
        failures += [rep.id] if not rep.passed else []
    dt = time.perf_counter() - t0
    ok = not failures and worst <= 1e-7 and dt < 30
    report(2, "theorem checks", ok, f"worst rel err {worst:.2e} over 20 points, {dt:.1f} s {failures or ''}")


HEADLINE = {
    "s4.W0h": LN2 / 2,
    "s5.Rz": EULER_GAMMA - 1,
    "s4.Hiworh": math.pi ** 2 / 48 - LN2 / 4,
    "s5.Ip4a": -1.5 + math.pi ** 2 / 6 - EULER_GAMMA / 2,
    "s4.dg3": 2 - 3 * LN2,
    "s4.CI1a": math.pi / 2 + 2,
    "s5.Ming2fa": -2 + EULER_GAMMA + 2 * LN2,
    "s5.X1": None,
    "s5.Rz2": None,
    "s5.Ip5a": None,
}


def test_03_headline():
    t0 = time.perf_counter()
    bad = []
    worst = 0.0
    for id_, value in HEADLINE.items():
        rep = ic.verify(id_, tol=1e-8)
        worst = max(worst, rep.abs_err)
        if not rep.passed or rep.abs_err > 1e-8 or (value is not None and abs(rep.rhs - value) > 1e-14):
            bad.append(id_)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    report(3, "headline identities at 1e-8", ok, f"worst |lhs - rhs| {worst:.2e}, {dt:.1f} s {bad or ''}")


def test_04_wb0():
    t0 = time.perf_counter()
    lhs = ic.evaluate_lhs("s3.Wb0", tol=1e-12).value
    rhs = ic.evaluate_rhs("s3.Wb0")
    dt = time.perf_counter() - t0
    err = max(abs(lhs - 0.447498183476330), abs(rhs - 0.447498183476330))
    report(4, "squared-modulus integral", err <= 1e-9 and dt < 60, f"lhs {lhs:.15f}, err {err:.2e}, {dt:.2f} s")


def test_05_constants():
    t0 = time.perf_counter()
    digits = {}
    for mode, need in (("double", 10), ("dd", 12)):
        with precision(mode):
            digits[mode] = min(matched_digits(registry.get(n), REFERENCE[n]) for n in REFERENCE)
    dt = time.perf_counter() - t0
    ok = digits["double"] >= 10 and digits["dd"] >= 12 and dt < 60
    report(5, "integral constants", ok,
           f"min digits double {digits['double']:.2f}, dd {digits['dd']:.2f}, {dt:.2f} s")


def test_06_w1m2b():
    rep = ic.verify("s3.W1m2b", tol=1e-7)
    report(6, "interval identity with 8 ln 2 offset", rep.passed and rep.abs_err <= 1e-7,
           f"|lhs - rhs| {rep.abs_err:.2e}")


def test_07_consistency_graph():
    t0 = time.perf_counter()
    full = ic.consistency_check()
    dt = time.perf_counter() - t0
    ac = [c for c in full.checks if ic.get(c.id).cls == ic.AC]
    ac_bad = [c.id for c in ac if not c.passed]
    other_bad = [c.id for c in full.checks if not c.passed and ic.get(c.id).cls != ic.AC]
    ok = not ac_bad and not full.unrooted and len(ac) >= 25 and dt < 1.0
    report(7, "continuation consistency graph", ok,
           f"{len(ac)} continuation records, acyclic, {len(full.checks)} edges in {dt:.3f} s; "
           f"continuation mismatches {ac_bad or 'none'}; other classes {other_bad or 'none'}")


def test_08_pole_fits():
    t0 = time.perf_counter()
    worst = 0.0
    for m, w in [(0, 0.0), (1, 0.0), (0, 0.5), (2, 0.5)]:
        k = math.sqrt(4 * m + 4 * w + 2)
        rad = el.sweep("radial", m, w).classification.fitted_pole_coefficient
        arc = el.sweep("arc", m, w).classification.fitted_pole_coefficient
        worst = max(worst, abs(rad / (-k * (-1) ** m) - 1), abs(arc / (4 * (-1) ** m / k) - 1))
    big = el.fit_pole_coefficient([(e, el.weighted_arc_difference(0, 1, e)) for e in el.STEP_SCHEDULE])
    lb2 = el.fit_pole_coefficient([(q, el.weighted_ray_series(0, 0.0, q, 1.0)) for q in el.STEP_SCHEDULE])
    dt = time.perf_counter() - t0
    ok = worst <= 1e-4 and big.variant is Delta.DeltaZero and lb2.variant is Delta.DeltaZero and dt < 30
    report(8, "pole fits", ok, f"worst rel err {worst:.2e}; weighted arc {big.label}, weighted ray {lb2.label}, "
                               f"{dt:.2f} s")


def test_09_regularized():
    spread = 0.0
    for m, w in [(0, 0.0), (0, 0.5), (1, 0.5), (2, 0.5)]:
        for branch in ("imag", "real"):
            vals = [el.regularized_series(ApproachState(m, w, RayInDisk(0.0, a)), branch=branch)
                    for a in (0.3, 1.1, 2.0, 2.9)]
            spread = max(spread, max(vals) - min(vals))
    state = ApproachState(0, 0.0, RayInDisk(0.0, 1.1))
    brid = math.sqrt(0.5) * el.regularized_series(state, branch="real") / math.sqrt(2)
    bimid = math.sqrt(0.5) * el.regularized_series(state, branch="imag") / math.sqrt(2)
    az = max(abs(el.regularized_series(ApproachState(m, 0.5, RayInDisk(0.0, 2.0))) - sf.nielsen_beta(m + 1.0))
             for m in (0, 1, 2))
    ok = spread <= 1e-12 and abs(brid) <= 1e-12 and abs(bimid - LN2 / 2) <= 1e-12 and az <= 1e-12
    report(9, "regularized ray values", ok,
           f"alpha spread {spread:.1e}; real {brid:.1e}; imag - ln2/2 {bimid - LN2 / 2:.1e}; tail err {az:.1e}")


def test_10_theta():
    coefs = el.theta_expansion(0)
    diff2 = LN2 / 4 + math.pi ** 2 / 6 + 1.5 * ZETA3
    hab4 = -LN2 / 16 - 5 * math.pi ** 2 / 12 - 87 * ZETA3 / 4 - 7 * math.pi ** 4 / 15 - 22.5 * ZETA5
    e2 = abs(coefs[2] - diff2)
    e4 = abs(-3 * coefs[4] - hab4)
    odd = max(abs(coefs[1]), abs(coefs[3]), abs(coefs[5]))
    pa, pb = el.theta_pole_coefficients(0)
    ratio = pb / pa
    ok = e2 <= 1e-6 and e4 <= 1e-5 and odd < 1e-6 and abs(ratio - 2) <= 1e-4
    report(10, "theta expansion", ok,
           f"second-order err {e2:.1e}, fourth-order err {e4:.1e}, odd max {odd:.1e}, pole ratio {ratio:.8f}")


def test_11_cesaro():
    rec = ic.get("s4.V12p")
    coherent = cesaro(rec.lhs, 2 * math.pi / LN2, 200)[-1].running_average
    fine = ic.cesaro_series(rec, 200)[-1].running_average
    ok = abs(coherent - 0.017324632) <= 0.02
    report(11, "Cesaro average over 200 phase-coherent segments", ok,
           f"average {coherent:.6f} with segment 2 pi/ln 2 (target 0.017324632 +- 0.02); "
           f"segment {rec.cesaro_segment} gives {fine:.6f}")


PROPERTY_TESTS = [
    "test_special_functions.py::test_eta_routes_agree",
    "test_special_functions.py::test_eta_routes_agree_random",
    "test_special_functions.py::test_hurwitz_recurrence",
    "test_special_functions.py::test_hurwitz_recurrence_random",
    "test_special_functions.py::test_digamma_is_log_gamma_gradient",
    "test_closed_forms.py::test_hr_hi_reflection_symmetry",
    "test_closed_forms.py::test_psi_components_match_digamma",
    "test_quadrature.py::test_refinement_is_monotone",
]


def test_12_property_suite():
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"] + [
        os.path.join(HERE, t) for t in PROPERTY_TESTS]
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=HERE, timeout=600)
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    report(12, "property suite", proc.returncode == 0, summary)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
