import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaid import exceptional_limits as el
from zetaid import identity_catalog as ic
from zetaid import special_functions as sf
from zetaid.errors import AtLimitPoint, DegenerateError, DomainError, FitError
from zetaid.exceptional_limits import (
    ApproachState,
    Arc,
    Delta,
    LimitClassification,
    Radial,
    RayInDisk,
    ThetaShift,
)
from zetaid.integrands import integrate

LN2 = math.log(2.0)
ZETA3 = 1.2020569031595942854
ZETA5 = 1.0369277551433699263
PATHS = [(0, 0.0), (1, 0.0), (0, 0.5), (2, 0.5)]


class TestSingularTerm:
    def test_arc_dominated_by_real_part(self):
        value = el.singular_term(0.5, math.pi - 0.01, 0, 0.0)
        assert abs(value.real - 4 / math.sqrt(2) / 0.01) < 0.01 * 4 / math.sqrt(2) / 0.01
        assert abs(value.imag) < 1e-6 * abs(value.real)

    def test_radial_dominated_by_imaginary_part(self):
        value = el.singular_term(0.51, math.pi, 0, 0.0)
        assert value.real == 0.0
        assert abs(value.imag + math.sqrt(2) / 0.01) < 0.02 * math.sqrt(2) / 0.01

    def test_regular_radius(self):
        value = el.singular_term(1.0, math.pi, 0, 0.0)
        assert value.real == 0.0 and math.isfinite(value.imag)

    def test_limit_point(self):
        with pytest.raises(AtLimitPoint):
            el.singular_term(0.5, math.pi, 0, 0.0)


class TestDivergentTerm:
    def test_on_circle_growth_exponent(self):
        eps = np.array([1e-2, 1e-3, 1e-4, 1e-5])
        vals = np.array([el.divergent_term_Dt(0.5, math.pi - e, 0) for e in eps])
        slope = np.polyfit(np.log(eps), np.log(np.abs(vals)), 1)[0]
        assert abs(slope + 1.0) < 1e-3

    def test_on_circle_monotone(self):
        eps = 10.0 ** -np.linspace(0.5, 8, 40)
        vals = np.abs([el.divergent_term_Dt(0.5, math.pi - e, 0) for e in eps])
        assert np.all(np.diff(vals) > 0)

    def test_off_circle_converges(self):
        limit = el.divergent_term_Dt(0.45, math.pi, 0)
        eps = 10.0 ** -np.arange(1, 13)
        gaps = np.abs([el.divergent_term_Dt(0.45, math.pi - e, 0) - limit for e in eps])
        assert math.isfinite(limit)
        assert np.all(np.diff(gaps) < 0)
        assert gaps[-1] < 1e-8

    def test_zero_angle(self):
        assert el.divergent_term_Dt(0.7, 0.0, 2) == 0.0

    def test_limit_point(self):
        with pytest.raises(AtLimitPoint):
            el.divergent_term_Dt(1.5, -math.pi, 1)


class TestKappa:
    def test_origin_convention(self):
        for alpha in (0.0, 1.0, -2.0):
            assert el.kappa(0.0, alpha) == math.pi

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            el.kappa(1.0, 0.0)

    def test_quarter_turn(self):
        assert abs(el.kappa(0.5, math.pi / 2) - (math.pi - math.atan(0.5))) < 1e-15

    def test_negative_q(self):
        with pytest.raises(DomainError):
            el.kappa(-0.1, 0.0)


class TestApproachState:
    def test_effective_radius(self):
        assert ApproachState(2, 0.5, Arc(0.1)).M == 3.0
        assert ApproachState(2, 0.0, Arc(0.1)).M == 2.5

    @pytest.mark.parametrize("args", [(-1, 0.0, Arc(0.1)), (0, 0.25, Arc(0.1)), (0, 0.0, RayInDisk(-0.1, 0.0))])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            ApproachState(*args)

    def test_at_point(self):
        with pytest.raises(AtLimitPoint):
            el.path_series(ApproachState(0, 0.0, Radial(0.0)))


class TestRaySeries:
    def test_against_quadrature(self):
        icp, rdp = el.path_series(ApproachState(0, 0.0, RayInDisk(0.7, 1.0)))
        lhs_icp = integrate(ic._ray_lhs(0.7, 1.0, 0, 0.0, lambda k: (math.sin(k / 2), math.cos(k / 2))))
        lhs_rdp = integrate(ic._ray_lhs(0.7, 1.0, 0, 0.0, lambda k: (math.cos(k / 2), -math.sin(k / 2))))
        assert abs(icp - lhs_icp.value) < 1e-6
        assert abs(rdp - lhs_rdp.value) < 1e-6

    def test_neighbour_point_imaginary_branch_vanishes(self):
        # q = 1, alpha = pi, m = 0, w = 1/2 lands on a = -2, the exceptional point of j = 1
        icp, rdp = el.path_series(ApproachState(0, 0.5, RayInDisk(1.0, math.pi)))
        assert icp == 0.0
        assert math.isnan(rdp)

    def test_unit_ray_reproduces_neighbour_identities(self):
        # q = 1 and alpha = pi reach a = -1, the regular neighbour of the m = 0 point
        icp, rdp = el.ray_series(0, 0.0, 1.0, math.pi)
        assert abs(icp - 0.0) < 1e-12
        assert abs(-rdp - (2 + math.pi / 2)) < 1e-12

    def test_q_zero_needs_regularization(self):
        with pytest.raises(DomainError):
            el.ray_series(0, 0.0, 0.0, 1.0)


class TestRegularizedSeries:
    @pytest.mark.parametrize("m,w", [(0, 0.0), (0, 0.5), (1, 0.5), (2, 0.5), (3, 0.0)])
    def test_alpha_independent(self, m, w):
        for branch in ("imag", "real"):
            vals = [el.regularized_series(ApproachState(m, w, RayInDisk(0.0, a)), branch=branch)
                    for a in (0.3, 1.1, 2.0, 2.9)]
            assert max(vals) - min(vals) < 1e-12

    def test_real_branch_vanishes(self):
        assert abs(el.regularized_series(ApproachState(0, 0.0, RayInDisk(0.0, 1.1)), branch="real")) < 1e-12

    def test_imag_branch_half_log_two(self):
        value = el.regularized_series(ApproachState(0, 0.0, RayInDisk(0.0, 1.1)))
        assert abs(math.sqrt(0.5) * value / math.sqrt(2) - LN2 / 2) < 1e-12

    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_alternating_tail(self, m):
        value = el.regularized_series(ApproachState(m, 0.5, RayInDisk(0.0, 2.0)))
        assert abs(value - sf.nielsen_beta(m + 1.0)) < 1e-12

    def test_requires_origin(self):
        with pytest.raises(DomainError):
            el.regularized_series(ApproachState(0, 0.0, RayInDisk(0.5, 1.0)))


class TestFits:
    @pytest.mark.parametrize("m,w", PATHS)
    def test_radial_coefficient(self, m, w):
        c = el.sweep("radial", m, w).classification
        expected = -math.sqrt(4 * m + 4 * w + 2) * (-1) ** m
        assert abs(c.fitted_pole_coefficient - expected) < 1e-4 * abs(expected)
        assert c.variant is (Delta.DeltaMinusInf if expected < 0 else Delta.DeltaPlusInf)

    @pytest.mark.parametrize("m,w", PATHS)
    def test_arc_coefficient(self, m, w):
        c = el.sweep("arc", m, w).classification
        expected = 4 * (-1) ** m / math.sqrt(4 * m + 4 * w + 2)
        assert abs(c.fitted_pole_coefficient - expected) < 1e-4 * abs(expected)

    def test_weighted_arc_difference_is_pole_free(self):
        data = [(e, el.weighted_arc_difference(0, 1, e)) for e in el.STEP_SCHEDULE]
        assert el.fit_pole_coefficient(data).variant is Delta.DeltaZero

    def test_weighted_ray_is_pole_free(self):
        data = [(q, el.weighted_ray_series(0, 0.0, q, 1.0)) for q in el.STEP_SCHEDULE]
        assert el.fit_pole_coefficient(data).variant is Delta.DeltaZero

    def test_ray_on_axis(self):
        assert el.sweep("ray", 0, 0.0, alpha=0.0).classification.variant is Delta.DeltaZero

    def test_regular_away_from_point(self):
        data = [(s, 2.0 + 3.0 * s) for s in el.STEP_SCHEDULE]
        c = el.fit_pole_coefficient(data, at_exceptional_point=False)
        assert c.variant is Delta.Regular and abs(c.value - 2.0) < 1e-9

    def test_too_few_steps(self):
        with pytest.raises(FitError):
            el.fit_pole_coefficient([(0.1, 1.0)] * 5)

    def test_noise_rejected(self):
        rng = np.random.default_rng(3)
        with pytest.raises(FitError):
            el.fit_pole_coefficient([(s, rng.normal()) for s in el.STEP_SCHEDULE])


class TestClassification:
    def test_regular_needs_value(self):
        with pytest.raises(ValueError):
            LimitClassification(Delta.Regular)
        with pytest.raises(ValueError):
            LimitClassification(Delta.Regular, value=math.inf)

    def test_delta_carries_no_value(self):
        with pytest.raises(ValueError):
            LimitClassification(Delta.DeltaZero, value=1.0)

    def test_no_arithmetic(self):
        with pytest.raises(TypeError):
            Delta.DeltaZero + 1
        with pytest.raises(TypeError):
            Delta.DeltaPlusInf + Delta.DeltaMinusInf

    def test_labels(self):
        assert LimitClassification(Delta.Regular, value=0.5).label == "Regular(0.5)"
        assert LimitClassification(Delta.DeltaPlusInf).label == "DeltaPlusInf"


class TestTheta:
    def test_second_order(self):
        c2 = el.theta_expansion(0)[2]
        assert abs(c2 - (LN2 / 4 + math.pi ** 2 / 6 + 1.5 * ZETA3)) < 1e-6

    def test_fourth_order(self):
        hab4 = -LN2 / 16 - 5 * math.pi ** 2 / 12 - 87 * ZETA3 / 4 - 7 * math.pi ** 4 / 15 - 22.5 * ZETA5
        assert abs(-3 * el.theta_expansion(0)[4] - hab4) < 1e-5

    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_odd_orders_vanish(self, m):
        coefs = el.theta_expansion(m)
        assert abs(coefs[1]) < 1e-6 and abs(coefs[3]) < 1e-6 and abs(coefs[5]) < 1e-6

    @pytest.mark.parametrize("m", [0, 1, 3])
    def test_pole_ratio(self, m):
        pa, pb = el.theta_pole_coefficients(m)
        assert abs(pb / pa - 2.0) < 1e-4

    def test_finite_away_from_zero(self):
        pv = el.theta_pv_combination(0, 0.25)
        assert all(math.isfinite(x) for x in pv)
        assert abs(pv.combined - (0.5 * pv.h2b - pv.h2a)) < 1e-15

    def test_expansion_reproduces_value(self):
        coefs = el.theta_expansion(0, order=30)
        theta = 0.1
        series = sum(c * theta ** k for k, c in enumerate(coefs))
        assert abs(series - el.theta_pv_combination(0, theta).combined) < 1e-9

    @pytest.mark.parametrize("theta", [0.0, 0.5 * math.log(2.0), -0.5 * math.log(3.0)])
    def test_excluded(self, theta):
        with pytest.raises(DomainError):
            el.theta_pv_combination(0, theta)

    def test_finite_parts_from_limits(self):
        # the series values equal the Laurent constants of the J integrals
        pv = el.theta_pv_combination(0, 0.3)
        assert abs(el.arc_finite_part(0, 0.3) - pv.h2a) < 1e-8
        assert abs(el.radial_finite_part(0, 0.3) - pv.h2b) < 1e-8

    def test_path_needs_half_offset(self):
        with pytest.raises(DomainError):
            el.path_series(ApproachState(0, 0.0, ThetaShift(0.3)))


class TestSweep:
    def test_csv_columns(self):
        result = el.sweep("radial", 0, 0.0)
        buf = io.StringIO()
        el.write_csv(buf, result.rows())
        lines = buf.getvalue().splitlines()
        assert lines[0].split(",") == list(el.CSV_COLUMNS)
        assert len(lines) == 11
        assert lines[1].split(",")[-1] == "DeltaMinusInf"

    def test_step_schedule(self):
        assert el.STEP_SCHEDULE[0] == 0.1 and len(el.STEP_SCHEDULE) == 10
        assert abs(el.STEP_SCHEDULE[-1] - 10 ** -5.5) < 1e-20

    def test_step_bounds(self):
        with pytest.raises(DomainError):
            el.sweep("arc", 0, 0.0, n_steps=3)

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            el.sweep("spiral", 0, 0.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.sampled_from([0.0, 0.5]), st.floats(1e-4, 0.05))
def test_arc_pole_dominates(m, w, eps):
    # eps times the series tends to the arc coefficient
    M = m + w + 0.5
    re, _ = el.path_series(ApproachState(m, w, Arc(eps)))
    expected = 4 * (-1) ** m / math.sqrt(4 * M)
    assert abs(eps * re - expected) < 20 * eps * max(1.0, M)
