"""Unit tests for delay schedules."""

import pytest

from src.errors import InvalidArgumentError
from src.pd_piag import DelaySchedule


class TestDelayScheduleValidation:
    """Constructor checks."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "fifo"},
            {"kind": "constant", "T": -1},
            {"kind": "random_bounded", "T": 2, "p": 0.0},
            {"kind": "random_bounded", "T": 2, "p": 1.5},
            {"kind": "random_bounded", "T": 2, "seed": -1},
        ],
    )
    def test_invalid(self, kwargs):
        """Bad kinds and parameters raise."""
        with pytest.raises(InvalidArgumentError):
            DelaySchedule(**kwargs)

    def test_effective_T(self):
        """Cyclic guarantees N - 1, others their T."""
        assert DelaySchedule.cyclic().effective_T(5) == 4
        assert DelaySchedule.constant(3).effective_T(5) == 3
        assert DelaySchedule.random_bounded(2).effective_T(5) == 2


class TestCyclic:
    """Cyclic refresh."""

    def test_one_component_per_step(self):
        """Component k mod N is refreshed at x_{k+1}."""
        schedule = DelaySchedule.cyclic()
        stamps = (0, 0, 0)
        for k in range(7):
            plan = schedule.refresh_plan(k, stamps)
            assert plan.indices == (k % 3,)
            assert plan.source == k + 1

    def test_describe(self):
        """Header form."""
        assert DelaySchedule.cyclic().describe() == {"kind": "cyclic"}


class TestConstant:
    """Fixed-delay refresh."""

    def test_warmup_keeps_x0(self):
        """While k + 1 <= T the source clamps to 0 and nothing advances."""
        plan = DelaySchedule.constant(3).refresh_plan(1, (0, 0))
        assert plan.source == 0
        assert plan.indices == ()

    def test_steady_state(self):
        """Every entry moves to x_{k+1-T}."""
        plan = DelaySchedule.constant(2).refresh_plan(5, (3, 3))
        assert plan.source == 4
        assert plan.indices == (0, 1)

    def test_zero_delay(self):
        """T = 0 refreshes everything at x_{k+1}."""
        plan = DelaySchedule.constant(0).refresh_plan(0, (0, 0, 0))
        assert plan.source == 1
        assert plan.indices == (0, 1, 2)


class TestRandomBounded:
    """Randomized refresh with a staleness cap."""

    def test_deterministic(self):
        """Plans depend only on (seed, k, stamps)."""
        first = DelaySchedule.random_bounded(3, p=0.4, seed=11)
        second = DelaySchedule.random_bounded(3, p=0.4, seed=11)
        stamps = (0, 0, 0, 0, 0)
        for k in range(20):
            assert first.refresh_set(k, stamps) == second.refresh_set(k, stamps)

    def test_forced_refresh(self):
        """An entry about to exceed T is refreshed regardless of the draw."""
        schedule = DelaySchedule.random_bounded(2, p=1e-9, seed=0)
        plan = schedule.refresh_plan(4, (2, 4))
        assert plan.indices == (0,)
        assert plan.source == 5

    def test_probability_one_refreshes_all(self):
        """p = 1 refreshes every entry."""
        schedule = DelaySchedule.random_bounded(5, p=1.0)
        assert schedule.refresh_set(3, (1, 2, 3)) == (0, 1, 2)

    def test_describe(self):
        """Header form carries every parameter."""
        assert DelaySchedule.random_bounded(4, p=0.25, seed=3).describe() == {
            "kind": "random_bounded",
            "T": 4,
            "p": 0.25,
            "seed": 3,
        }
