"""Tests for bound monitors on recorded runs."""

import math

import numpy as np
import pytest

from src.analysis import (
    GapOracle,
    default_boxes,
    empirical_rate,
    find_saddle,
    linear_bound_series,
    monitor_thm1_boundedness,
    monitor_thm1_gap,
    monitor_thm2_linear,
    monitor_thm3_boundedness,
)
from src.certificates import auto_stepsize, compute_a_omega, compute_C
from src.pd_piag import DelaySchedule, ExtrapolationRule, run
from src.saddle_problem import build_quadratic_quadratic


def run_with_saddle(problem, sigma, tau, rule, schedule, max_iters):
    saddle = find_saddle(problem)
    x0 = np.zeros(problem.d1)
    y0 = np.zeros(problem.d2)
    trace = run(
        problem,
        x0,
        y0,
        sigma,
        tau,
        rule,
        schedule,
        max_iters=max_iters,
        saddle=(saddle.x_hat, saddle.y_hat),
    )
    return trace, (saddle.x_hat, saddle.y_hat), x0, y0


class TestThm1Monitors:
    """Boundedness and gap bounds of the PDHG-extrapolated variant."""

    @pytest.mark.slow
    def test_certified_run_respects_bounds(self):
        """A certified 10000-step cyclic run passes both monitors; gaps stay non-negative."""
        problem = build_quadratic_quadratic(d1=10, d2=10, N=5, seed=7)
        T = DelaySchedule.cyclic().effective_T(problem.N)
        choice = auto_stepsize(problem, T=T, variant="thm1")
        trace, saddle, x0, y0 = run_with_saddle(
            problem,
            choice.sigma,
            choice.tau,
            ExtrapolationRule.pdhg(),
            DelaySchedule.cyclic(),
            10_000,
        )

        C = compute_C(choice.sigma, choice.tau, problem.K_norm)
        boundedness = monitor_thm1_boundedness(trace, C, saddle, choice.sigma, choice.tau)
        assert boundedness.passed
        assert len(boundedness.checks) == 10_001

        B1, B2 = default_boxes(*saddle, x0, y0)
        gap = monitor_thm1_gap(
            trace, problem, B1, B2, None, x0, y0, choice.sigma, choice.tau, [10, 100, 1000]
        )
        assert gap.passed
        assert [checkpoint.M for checkpoint in gap.checkpoints] == [10, 100, 1000]
        assert all(checkpoint.exact for checkpoint in gap.checkpoints)
        assert all(checkpoint.gap >= -1e-8 for checkpoint in gap.checkpoints)
        assert gap.checkpoints[-1].bound < gap.checkpoints[0].bound

    def test_checkpoints_beyond_trace_skipped(self, quadratic_problem):
        """Only M within the run are evaluated."""
        trace, saddle, x0, y0 = run_with_saddle(
            quadratic_problem,
            0.02,
            0.02,
            ExtrapolationRule.pdhg(),
            DelaySchedule.cyclic(),
            20,
        )
        B1, B2 = default_boxes(*saddle, x0, y0)
        verdict = monitor_thm1_gap(
            trace,
            quadratic_problem,
            B1,
            B2,
            GapOracle("separable_exact"),
            x0,
            y0,
            0.02,
            0.02,
            [10, 100],
        )
        assert [checkpoint.M for checkpoint in verdict.checkpoints] == [10]

    def test_violation_reported(self, scalar_problem):
        """An oversized run violates boundedness without raising."""
        trace, saddle, _, _ = run_with_saddle(
            scalar_problem,
            3.0,
            3.0,
            ExtrapolationRule.pdhg(),
            DelaySchedule.constant(0),
            20,
        )
        verdict = monitor_thm3_boundedness(trace, 1.0, saddle, 3.0, 3.0)
        assert not verdict.passed
        assert verdict.first_violation_k is not None
        assert verdict.max_violation > 0
        data = verdict.to_data()
        assert data["name"] == "thm3_boundedness"
        assert data["passed"] is False
        assert data["violations"] == len(verdict.violations_by_k)


class TestThm2Monitor:
    """Linear-rate bound."""

    def test_certified_run_contracts(self, quadratic_problem):
        """Certified theta-extrapolated run under bounded random delays."""
        choice = auto_stepsize(quadratic_problem, T=2, variant="thm2")
        trace, saddle, _, _ = run_with_saddle(
            quadratic_problem,
            choice.sigma,
            choice.tau,
            ExtrapolationRule.with_theta(choice.theta),
            DelaySchedule.random_bounded(2, p=0.5, seed=3),
            300,
        )
        constants = compute_a_omega(
            choice.theta,
            choice.sigma,
            choice.tau,
            quadratic_problem.delta,
            quadratic_problem.gamma,
            quadratic_problem.K_norm,
        )
        verdict = monitor_thm2_linear(
            trace, constants.omega, saddle, choice.sigma, choice.tau, quadratic_problem.K_norm
        )
        assert verdict.passed
        assert verdict.bounds[0] == pytest.approx(trace.records[0].V)

    @pytest.mark.slow
    def test_long_run_rate_within_omega(self):
        """5000 certified steps stay under omega^k V_0; the fitted slope is near log omega."""
        problem = build_quadratic_quadratic(d1=10, d2=10, N=5, seed=7)
        choice = auto_stepsize(problem, T=2, variant="thm2")
        trace, saddle, _, _ = run_with_saddle(
            problem,
            choice.sigma,
            choice.tau,
            ExtrapolationRule.with_theta(choice.theta),
            DelaySchedule.random_bounded(2, p=0.5, seed=11),
            5000,
        )
        constants = compute_a_omega(
            choice.theta,
            choice.sigma,
            choice.tau,
            problem.delta,
            problem.gamma,
            problem.K_norm,
        )
        verdict = monitor_thm2_linear(
            trace, constants.omega, saddle, choice.sigma, choice.tau, problem.K_norm
        )
        assert verdict.passed
        assert len(verdict.checks) == 5001

        slope = empirical_rate(trace)
        assert slope is not None
        assert slope <= math.log(constants.omega) + 0.05

    def test_linear_bound_series(self, scalar_problem):
        """omega^k V_0 per record, None without a saddle."""
        trace, _, _, _ = run_with_saddle(
            scalar_problem,
            0.1,
            0.1,
            ExtrapolationRule.with_theta(1.0),
            DelaySchedule.constant(0),
            3,
        )
        series = linear_bound_series(trace, 0.5)
        V0 = trace.records[0].V
        assert series == pytest.approx([V0, 0.5 * V0, 0.25 * V0, 0.125 * V0])

        bare = run(
            scalar_problem,
            np.zeros(1),
            np.zeros(1),
            0.1,
            0.1,
            ExtrapolationRule.pdhg(),
            DelaySchedule.constant(0),
            max_iters=2,
        )
        assert linear_bound_series(bare, 0.5) == [None, None, None]
