"""Tests for the PD-PIAG iteration engine."""

import numpy as np
import pytest

from src.analysis import find_saddle, replay_memory
from src.certificates import auto_stepsize
from src.errors import DivergenceError, InvalidArgumentError
from src.pd_piag import (
    DelaySchedule,
    ExtrapolationRule,
    init_state,
    pd_piag_step,
    piag_step,
    run,
    stop_on_residual,
)
from src.saddle_problem import (
    QuadraticConjugate,
    SaddleProblem,
    ZeroConjugate,
    apply_prox,
    create_identity_map,
    create_quadratic_component,
    create_zero_map,
    grad_full,
)


def zeros(problem):
    return np.zeros(problem.d1), np.zeros(problem.d2)


def half_square(dim=1, hessian=None):
    """f(x) = 1/2 x^T Q x with Q = I by default."""
    q = np.eye(dim) if hessian is None else hessian
    return create_quadratic_component(q, np.zeros(dim))


class TestPdPiagStep:
    """Single-step semantics."""

    def test_decoupled_step_is_gradient_descent(self):
        """K = 0, h* = 0: x_1 = x_0 - sigma x_0 and y stays at 0."""
        problem = SaddleProblem(
            components=(half_square(),),
            conjugate=ZeroConjugate(),
            coupling=create_zero_map(1, 1),
        )
        state = init_state(problem, np.array([1.0]), np.array([0.0]))
        state = pd_piag_step(
            state, problem, 0.5, 0.5, ExtrapolationRule.pdhg(), DelaySchedule.constant(0)
        )
        assert state.k == 1
        assert state.x[0] == pytest.approx(0.5)
        assert state.y[0] == 0.0

    def test_scalar_arrow_hurwicz_step(self):
        """f = x^2/2, h* = y^2/2, K = 1, sigma = tau = 0.1: x_1 = 0.9, y_1 = 0.09 / 1.1."""
        problem = SaddleProblem(
            components=(half_square(),),
            conjugate=QuadraticConjugate(1.0),
            coupling=create_identity_map(1),
        )
        state = init_state(problem, np.array([1.0]), np.array([0.0]))
        state = pd_piag_step(
            state,
            problem,
            0.1,
            0.1,
            ExtrapolationRule.arrow_hurwicz(),
            DelaySchedule.constant(0),
        )
        assert state.x[0] == pytest.approx(0.9, abs=1e-12)
        assert state.y[0] == pytest.approx(0.0818182, abs=1e-7)
        np.testing.assert_array_equal(state.y_prev, [0.0])

    def test_cyclic_memory_after_first_step(self):
        """N = 2: only e_1 moves to x_1, so g_1 = grad f_1(x_1) + grad f_2(x_0)."""
        first = half_square(2, np.diag([2.0, 1.0]))
        second = half_square(2, np.diag([1.0, 3.0]))
        problem = SaddleProblem(
            components=(first, second),
            conjugate=QuadraticConjugate(1.0),
            coupling=create_identity_map(2),
        )
        x0 = np.array([1.0, -1.0])
        state = init_state(problem, x0, np.zeros(2), window_size=2)
        state = pd_piag_step(
            state, problem, 0.1, 0.1, ExtrapolationRule.pdhg(), DelaySchedule.cyclic()
        )
        assert state.memory.stamps == (1, 0)
        np.testing.assert_allclose(
            state.memory.aggregate,
            first.gradient(state.x) + second.gradient(x0),
            rtol=0,
            atol=1e-12,
        )

    def test_zero_delay_arrow_hurwicz_matches_full_gradient(self, quadratic_problem):
        """T = 0 with y_bar = y_k is the plain Arrow-Hurwicz iteration."""
        problem = quadratic_problem
        sigma, tau = 0.05, 0.05
        x, y = zeros(problem)
        trace = run(
            problem,
            x,
            y,
            sigma,
            tau,
            ExtrapolationRule.arrow_hurwicz(),
            DelaySchedule.constant(0),
            max_iters=100,
        )

        K = problem.coupling
        for k in range(1, 101):
            x = x - sigma * grad_full(problem, x) - sigma * K.adjoint(y)
            y = apply_prox(problem.conjugate, tau, y + tau * K.forward(x))
            np.testing.assert_allclose(trace.records[k].x, x, rtol=0, atol=1e-12)
            np.testing.assert_allclose(trace.records[k].y, y, rtol=0, atol=1e-12)

    def test_zero_dual_reduces_to_piag(self, zero_dual_problem):
        """With h* the indicator of {0} the primal sequence is PIAG's, bit for bit."""
        problem = zero_dual_problem
        schedule = DelaySchedule.cyclic()
        x0, y0 = zeros(problem)
        pd_state = init_state(problem, x0, y0, window_size=problem.N)
        piag_state = init_state(problem, x0, y0, window_size=problem.N)

        for _ in range(100):
            pd_state = pd_piag_step(
                pd_state, problem, 0.1, 1.0, ExtrapolationRule.pdhg(), schedule
            )
            piag_state = piag_step(piag_state, problem, 0.1, schedule)
            np.testing.assert_array_equal(pd_state.x, piag_state.x)
            np.testing.assert_array_equal(pd_state.y, np.zeros(problem.d2))

    def test_divergence_carries_last_state(self, scalar_problem):
        """A non-finite iterate raises with the last finite state."""
        state = init_state(scalar_problem, np.array([1e308]), np.zeros(1))
        with pytest.raises(DivergenceError) as excinfo:
            pd_piag_step(
                state,
                scalar_problem,
                10.0,
                1.0,
                ExtrapolationRule.pdhg(),
                DelaySchedule.constant(0),
            )
        assert excinfo.value.last_state is state

    def test_non_positive_steps(self, scalar_problem):
        """sigma and tau must be positive."""
        state = init_state(scalar_problem, np.zeros(1), np.zeros(1))
        with pytest.raises(InvalidArgumentError):
            pd_piag_step(
                state,
                scalar_problem,
                0.1,
                0.0,
                ExtrapolationRule.pdhg(),
                DelaySchedule.cyclic(),
            )


class TestRun:
    """Run loop, trace recording and monitors."""

    def test_records_every_iterate(self, quadratic_problem):
        """max_iters steps give max_iters + 1 records."""
        x0, y0 = zeros(quadratic_problem)
        trace = run(
            quadratic_problem,
            x0,
            y0,
            0.05,
            0.05,
            ExtrapolationRule.pdhg(),
            DelaySchedule.cyclic(),
            max_iters=25,
            header={"seed": 1},
        )
        assert trace.iterations == 25
        assert trace.termination == "max_iters"
        assert trace.closed
        assert trace.header["seed"] == 1
        assert trace.header["T"] == 2
        assert trace.final.dist_x is None

    def test_distances_with_saddle(self, quadratic_problem):
        """Reference saddle enables dist_x, dist_y and V."""
        saddle = find_saddle(quadratic_problem)
        trace = run(
            quadratic_problem,
            saddle.x_hat,
            saddle.y_hat,
            0.05,
            0.05,
            ExtrapolationRule.pdhg(),
            DelaySchedule.cyclic(),
            max_iters=5,
            saddle=(saddle.x_hat, saddle.y_hat),
        )
        assert trace.records[0].dist_x == 0.0
        assert trace.final.V == pytest.approx(0.0, abs=1e-12)

    def test_constant_schedule_delays(self, quadratic_problem):
        """Every stored delay equals min(k, T)."""
        x0, y0 = zeros(quadratic_problem)
        trace = run(
            quadratic_problem,
            x0,
            y0,
            0.02,
            0.02,
            ExtrapolationRule.arrow_hurwicz(),
            DelaySchedule.constant(3),
            max_iters=20,
        )
        for record in trace.records:
            assert record.delays == (min(record.k, 3),) * quadratic_problem.N

    def test_random_bounded_replay(self, quadratic_problem):
        """Stored aggregates replay from stored iterates and respect T."""
        x0, y0 = zeros(quadratic_problem)
        trace = run(
            quadratic_problem,
            x0,
            y0,
            0.01,
            0.01,
            ExtrapolationRule.pdhg(),
            DelaySchedule.random_bounded(4, p=0.3, seed=1),
            max_iters=2000,
        )
        report = replay_memory(trace, quadratic_problem, T=4)
        assert report.passed
        assert report.checked == 2001
        assert report.max_delay <= 4

    def test_divergence_closes_trace(self, scalar_problem):
        """Oversized steps end with termination 'diverged'."""
        trace = run(
            scalar_problem,
            np.ones(1),
            np.zeros(1),
            100.0,
            100.0,
            ExtrapolationRule.pdhg(),
            DelaySchedule.constant(0),
            max_iters=5000,
        )
        assert trace.termination == "diverged"
        assert "Non-finite" in trace.error
        assert trace.iterations < 5000
        assert np.all(np.isfinite(trace.final.x))

    def test_stop_on_residual(self, quadratic_problem):
        """Residual monitor ends the run early."""
        step = 0.9 / (quadratic_problem.L + quadratic_problem.K_norm)
        x0, y0 = zeros(quadratic_problem)
        trace = run(
            quadratic_problem,
            x0,
            y0,
            step,
            step,
            ExtrapolationRule.pdhg(),
            DelaySchedule.constant(0),
            max_iters=20000,
            monitors=[stop_on_residual(quadratic_problem, 1e-6)],
        )
        assert trace.termination == "monitor_stop"
        assert trace.iterations < 20000

    def test_failing_monitor_is_isolated(self, scalar_problem):
        """Monitor exceptions are counted, the run continues."""

        def broken(state):
            raise RuntimeError("boom")

        trace = run(
            scalar_problem,
            np.zeros(1),
            np.zeros(1),
            0.1,
            0.1,
            ExtrapolationRule.pdhg(),
            DelaySchedule.cyclic(),
            max_iters=10,
            monitors=[broken],
        )
        assert trace.termination == "max_iters"
        assert trace.monitor_errors == 11

    def test_monitor_sees_read_only_state(self, scalar_problem):
        """States handed to monitors cannot be written."""
        seen = []

        def watcher(state):
            seen.append(state.x.flags.writeable or state.y.flags.writeable)
            return state.k >= 3

        trace = run(
            scalar_problem,
            np.zeros(1),
            np.zeros(1),
            0.1,
            0.1,
            ExtrapolationRule.pdhg(),
            DelaySchedule.cyclic(),
            max_iters=10,
            monitors=[watcher],
        )
        assert not any(seen)
        assert trace.iterations == 3

    def test_monitors_leave_trajectory_unchanged(self, quadratic_problem):
        """Runs with and without monitors agree at every step, even if a monitor tries to write."""
        seen = []

        def observer(state):
            seen.append(state.k)
            return False

        def scribbler(state):
            state.x[0] = 1e9

        def trajectory(monitors):
            x0, y0 = zeros(quadratic_problem)
            return run(
                quadratic_problem,
                x0,
                y0,
                0.02,
                0.02,
                ExtrapolationRule.pdhg(),
                DelaySchedule.random_bounded(3, p=0.4, seed=5),
                max_iters=200,
                monitors=monitors,
            )

        bare = trajectory([])
        watched = trajectory([observer, scribbler])
        assert seen == list(range(201))
        assert watched.monitor_errors == 201
        assert len(watched.records) == len(bare.records) == 201
        for plain, monitored in zip(bare.records, watched.records, strict=True):
            np.testing.assert_array_equal(monitored.x, plain.x)
            np.testing.assert_array_equal(monitored.y, plain.y)

    def test_invalid_budget(self, scalar_problem):
        """max_iters >= 1."""
        with pytest.raises(InvalidArgumentError):
            run(
                scalar_problem,
                np.zeros(1),
                np.zeros(1),
                0.1,
                0.1,
                ExtrapolationRule.pdhg(),
                DelaySchedule.cyclic(),
                max_iters=0,
            )


class TestConvergence:
    """Certified runs reach the unique saddle."""

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "variant,rule",
        [("thm1", ExtrapolationRule.pdhg()), ("thm3", ExtrapolationRule.arrow_hurwicz())],
    )
    def test_iterates_converge(self, quadratic_problem, variant, rule):
        """Final distance to (x_hat, y_hat) is below 1e-6 within 50000 steps."""
        problem = quadratic_problem
        schedule = DelaySchedule.cyclic()
        choice = auto_stepsize(problem, T=schedule.effective_T(problem.N), variant=variant)
        saddle = find_saddle(problem)
        x0, y0 = zeros(problem)
        trace = run(
            problem,
            x0,
            y0,
            choice.sigma,
            choice.tau,
            rule,
            schedule,
            max_iters=50_000,
            monitors=[stop_on_residual(problem, 1e-11)],
        )
        final = trace.final
        distance = np.hypot(
            np.linalg.norm(final.x - saddle.x_hat), np.linalg.norm(final.y - saddle.y_hat)
        )
        assert trace.termination in ("max_iters", "monitor_stop")
        assert distance <= 1e-6
