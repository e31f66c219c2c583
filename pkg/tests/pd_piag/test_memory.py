"""Unit tests for the gradient memory table."""

import numpy as np
import pytest

from src.errors import InvalidArgumentError
from src.pd_piag import init_memory, refresh_memory
from src.saddle_problem import grad_full


class TestInitMemory:
    """Tests for init_memory."""

    def test_aggregate_is_full_gradient(self, quadratic_problem):
        """g_0 = grad f(x_0) and all stamps are 0."""
        x0 = np.linspace(-1.0, 1.0, quadratic_problem.d1)
        memory = init_memory(quadratic_problem, x0)
        np.testing.assert_allclose(memory.aggregate, grad_full(quadratic_problem, x0))
        assert memory.stamps == (0, 0, 0)
        assert memory.N == 3

    def test_read_only(self, quadratic_problem):
        """Entries and aggregate cannot be written."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        with pytest.raises(ValueError):
            memory.entries[0, 0] = 1.0
        with pytest.raises(ValueError):
            memory.aggregate[0] = 1.0

    def test_dimension_mismatch(self, quadratic_problem):
        """x0 must live in R^{d1}."""
        with pytest.raises(InvalidArgumentError):
            init_memory(quadratic_problem, np.zeros(quadratic_problem.d1 + 2))


class TestRefreshMemory:
    """Tests for refresh_memory."""

    def test_refresh_replaces_entries(self, quadratic_problem):
        """Refreshed rows hold the new gradients and stamps."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        x_new = np.ones(quadratic_problem.d1)
        refreshed = refresh_memory(memory, [2, 0], x_new, 5, quadratic_problem)

        assert refreshed.stamps == (5, 0, 5)
        np.testing.assert_allclose(
            refreshed.entries[0], quadratic_problem.components[0].gradient(x_new)
        )
        np.testing.assert_array_equal(refreshed.entries[1], memory.entries[1])
        np.testing.assert_allclose(refreshed.aggregate, refreshed.recompute_aggregate())

    def test_input_untouched(self, quadratic_problem):
        """Refresh returns a new table."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        before = np.array(memory.aggregate)
        refresh_memory(memory, [1], np.ones(quadratic_problem.d1), 1, quadratic_problem)
        np.testing.assert_array_equal(memory.aggregate, before)
        assert memory.stamps == (0, 0, 0)

    def test_empty_refresh_is_noop(self, quadratic_problem):
        """No indices, same table."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        assert refresh_memory(memory, [], np.ones(quadratic_problem.d1), 1, quadratic_problem) is (
            memory
        )

    def test_index_out_of_range(self, quadratic_problem):
        """Indices are 0-based and below N."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        with pytest.raises(InvalidArgumentError):
            refresh_memory(memory, [3], np.ones(quadratic_problem.d1), 1, quadratic_problem)

    def test_stamp_must_advance(self, quadratic_problem):
        """A refresh at an older or equal stamp is refused."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        memory = refresh_memory(memory, [0], np.ones(quadratic_problem.d1), 4, quadratic_problem)
        with pytest.raises(InvalidArgumentError):
            refresh_memory(memory, [0], np.ones(quadratic_problem.d1), 4, quadratic_problem)

    def test_delays(self, quadratic_problem):
        """Staleness is k minus stamp."""
        memory = init_memory(quadratic_problem, np.zeros(quadratic_problem.d1))
        memory = refresh_memory(memory, [1], np.ones(quadratic_problem.d1), 3, quadratic_problem)
        assert memory.delays(5) == (5, 2, 5)
