"""Tests for the feasibility decision at a fixed velocity gap and the
threshold search over gaps."""

import math

import numpy as np
import pytest

from eulerfan import (DegenerateDensityError, DomainError, Eos, RiemannData,
                      ThresholdRow, data_functionals, epsilon1_sign_change,
                      feasible_for_gap, subsolution_witness, threshold_V,
                      threshold_table, verify_subsolution)
from eulerfan.threshold import BISECTION_TOL

GAMMA2 = Eos(2.0)
SQRT_T = math.sqrt(45.0 / 4.0)


class TestFeasibleForGap:
    def test_golden_gap_is_feasible(self):
        ok, intervals = feasible_for_gap(1.0, 4.0, 0.0, GAMMA2, 3.3)
        assert ok
        assert len(intervals) == 1
        lo, hi = intervals[0]
        assert 1.09 < lo < 1.10
        # The feasible run ends where the downstream-velocity sign
        # flips, at rho_T = 45 / 12.33.
        rho_T = data_functionals(
            RiemannData(1.0, 4.0, (0.0, 3.3), (0.0, 0.0), GAMMA2)).rho_T
        assert hi == pytest.approx(rho_T, abs=1e-5)

    def test_small_gap_is_infeasible(self):
        ok, intervals = feasible_for_gap(1.0, 4.0, 0.0, GAMMA2, 0.5)
        assert not ok
        assert intervals == []

    def test_swapped_ordering_run_ends_at_slack_zero(self):
        ok, intervals = feasible_for_gap(4.0, 1.0, 0.0, GAMMA2, 3.3)
        assert ok
        data = RiemannData(4.0, 1.0, (0.0, 3.3), (0.0, 0.0), GAMMA2)
        assert intervals[-1][1] == pytest.approx(epsilon1_sign_change(data),
                                                 abs=1e-5)

    def test_near_bound_gap_is_feasible_both_orderings(self):
        w = 0.999 * SQRT_T
        assert feasible_for_gap(1.0, 4.0, 0.0, GAMMA2, w)[0]
        assert feasible_for_gap(4.0, 1.0, 0.0, GAMMA2, w)[0]

    @pytest.mark.parametrize("w", [0.0, -1.0, SQRT_T, 5.0])
    def test_gap_outside_regime_rejected(self, w):
        with pytest.raises(DomainError, match="outside the subsolution regime"):
            feasible_for_gap(1.0, 4.0, 0.0, GAMMA2, w)

    def test_equal_densities_rejected(self):
        with pytest.raises(DegenerateDensityError):
            feasible_for_gap(2.0, 2.0, 0.0, GAMMA2, 0.5)

    def test_coarse_grid_same_verdict(self):
        ok_fine, _ = feasible_for_gap(1.0, 4.0, 0.0, GAMMA2, 3.3)
        ok_coarse, _ = feasible_for_gap(1.0, 4.0, 0.0, GAMMA2, 3.3, grid=128)
        assert ok_fine == ok_coarse


class TestSubsolutionWitness:
    def test_golden_witness_verifies(self):
        data = RiemannData(1.0, 4.0, (0.0, 3.3), (0.0, 0.0), GAMMA2)
        sub = subsolution_witness(data)
        assert sub is not None
        assert 1.0 < sub.rho_1 < 4.0
        report = verify_subsolution(data, sub)
        assert report.passed, report

    def test_infeasible_data_gives_none(self):
        data = RiemannData(1.0, 4.0, (0.0, 0.5), (0.0, 0.0), GAMMA2)
        assert subsolution_witness(data) is None

    def test_random_witnesses_verify(self):
        """Every witness the search produces must survive the
        independent verifier, including with a nonzero common first
        velocity component."""
        rng = np.random.default_rng(37)
        found = 0
        for _ in range(40):
            rho_lo = float(10.0 ** rng.uniform(-1, 1))
            rho_hi = rho_lo * float(10.0 ** rng.uniform(0.1, 1.0))
            rho_minus, rho_plus = ((rho_hi, rho_lo) if rng.uniform() < 0.5
                                   else (rho_lo, rho_hi))
            eos = Eos(float(rng.choice([1.4, 2.0, 2.5])))
            t_val = ((rho_plus - rho_minus)
                     * (rho_plus**eos.gamma - rho_minus**eos.gamma)
                     / (rho_plus * rho_minus))
            w = float(rng.uniform(0.6, 0.999)) * math.sqrt(t_val)
            v1 = float(rng.uniform(-2.0, 2.0))
            v2 = float(rng.uniform(-3.0, 3.0))
            data = RiemannData(rho_minus, rho_plus, (v1, v2 + w),
                               (v1, v2), eos)
            sub = subsolution_witness(data, grid=512)
            if sub is None:
                continue
            found += 1
            assert sub.alpha == v1
            report = verify_subsolution(data, sub)
            assert report.passed, f"witness failed for {data}: {report}"
        assert found >= 20, f"only {found} witnesses found; seeds too stingy"


class TestThresholdV:
    def test_golden_threshold_value(self):
        result = threshold_V(1.0, 4.0, 0.0, GAMMA2)
        assert result.V == pytest.approx(2.69, abs=0.05)
        assert result.note is None

    def test_result_invariants(self):
        result = threshold_V(1.0, 4.0, 1.0, GAMMA2)
        assert 0.0 < result.V < result.sqrtT
        assert result.sqrtT == pytest.approx(SQRT_T, rel=1e-12)
        assert result.bisection_tol == BISECTION_TOL
        probes = result.feasible_probe
        assert probes[0][0] == pytest.approx((1.0 - 1e-6) * SQRT_T, rel=1e-12)
        assert all(0.0 < w < SQRT_T for w, _ in probes)
        feasible_ws = [w for w, intervals in probes if intervals]
        assert result.V == min(feasible_ws)

    @pytest.mark.parametrize("v_plus2", [0.0, 1.0])
    def test_threshold_sandwich(self, v_plus2):
        """Halfway between V and the bound is feasible; just below V,
        past the bisection gap, is not."""
        result = threshold_V(1.0, 4.0, v_plus2, GAMMA2)
        mid = 0.5 * (result.V + result.sqrtT)
        assert feasible_for_gap(1.0, 4.0, v_plus2, GAMMA2, mid)[0]
        assert not feasible_for_gap(1.0, 4.0, v_plus2, GAMMA2,
                                    result.V - 1e-4)[0]

    def test_swapped_ordering_has_lower_threshold(self):
        swap = threshold_V(4.0, 1.0, 0.0, GAMMA2)
        base = threshold_V(1.0, 4.0, 0.0, GAMMA2)
        assert 0.0 < swap.V < base.V
        mid = 0.5 * (swap.V + swap.sqrtT)
        assert feasible_for_gap(4.0, 1.0, 0.0, GAMMA2, mid)[0]

    def test_equal_densities_rejected(self):
        with pytest.raises(DegenerateDensityError):
            threshold_V(3.0, 3.0, 0.0, GAMMA2)

    def test_gamma1_warns_but_searches(self):
        with pytest.warns(UserWarning, match="gamma > 1"):
            result = threshold_V(1.0, 4.0, 0.0, Eos(1.0))
        assert result.sqrtT == pytest.approx(1.5)
        if result.V is not None:
            assert 0.0 < result.V < result.sqrtT


class TestThresholdTable:
    def test_rows_come_back_in_order(self):
        rows = threshold_table(1.0, 4.0, GAMMA2, [1.0, 0.0])
        assert [row.v_plus2 for row in rows] == [1.0, 0.0]
        for row in rows:
            assert isinstance(row, ThresholdRow)
            assert row.error is None
            assert 0.0 < row.result.V < row.result.sqrtT

    def test_failing_rows_keep_the_table_alive(self):
        rows = threshold_table(2.0, 2.0, GAMMA2, [0.0, 1.0])
        assert len(rows) == 2
        for row in rows:
            assert row.result is None
            assert "equal densities" in row.error
