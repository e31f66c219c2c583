"""Unit tests for gap boxes."""

import numpy as np
import pytest

from src.analysis import BoxSet, default_boxes, gap_bound
from src.errors import InvalidArgumentError


class TestBoxSet:
    """Tests for BoxSet."""

    def test_centered(self):
        """Cube around a center."""
        box = BoxSet.centered(np.array([1.0, -1.0]), 2.0)
        np.testing.assert_array_equal(box.lower, [-1.0, -3.0])
        np.testing.assert_array_equal(box.upper, [3.0, 1.0])
        assert box.dim == 2

    def test_empty_rejected(self):
        """lower > upper is rejected."""
        with pytest.raises(InvalidArgumentError):
            BoxSet(lower=np.array([1.0]), upper=np.array([0.0]))

    def test_shape_mismatch_rejected(self):
        """Corners must agree in size."""
        with pytest.raises(InvalidArgumentError):
            BoxSet(lower=np.zeros(2), upper=np.ones(3))

    def test_contains_and_project(self):
        """Membership and clipping."""
        box = BoxSet(lower=np.zeros(2), upper=np.ones(2))
        assert box.contains(np.array([0.5, 1.0]))
        assert not box.contains(np.array([1.5, 0.5]))
        assert box.contains(np.array([1.0 + 1e-12, 0.5]), tol=1e-9)
        np.testing.assert_array_equal(box.project(np.array([2.0, -1.0])), [1.0, 0.0])

    def test_max_sq_distance(self):
        """Farthest corner per coordinate."""
        box = BoxSet(lower=np.array([-1.0, 0.0]), upper=np.array([3.0, 2.0]))
        assert box.max_sq_distance(np.array([0.0, 0.0])) == pytest.approx(9.0 + 4.0)
        assert box.diameter() == pytest.approx(np.sqrt(16.0 + 4.0))

    def test_corners_read_only(self):
        """Corners are frozen."""
        box = BoxSet(lower=np.zeros(1), upper=np.ones(1))
        with pytest.raises(ValueError):
            box.lower[0] = -1.0


class TestDefaultBoxes:
    """Tests for default_boxes."""

    def test_radius_from_start_distance(self):
        """Half-width = factor * max(|x0 - x_hat|, |y0 - y_hat|, 1)."""
        B1, B2 = default_boxes(
            np.zeros(2), np.zeros(1), np.array([3.0, 4.0]), np.zeros(1), factor=2.0
        )
        np.testing.assert_allclose(B1.upper, [10.0, 10.0])
        np.testing.assert_allclose(B2.lower, [-10.0])

    def test_minimum_radius(self):
        """Starting at the saddle still gives half-width factor."""
        B1, _ = default_boxes(np.ones(1), np.ones(1), np.ones(1), np.ones(1))
        np.testing.assert_allclose(B1.upper - B1.lower, [8.0])


class TestGapBound:
    """Tests for gap_bound."""

    def test_value(self):
        """(1/M) max |x - x0|^2/(2 sigma) + |y - y0|^2/(2 tau)."""
        box = BoxSet(lower=-np.ones(1), upper=np.ones(1))
        assert gap_bound(box, box, np.zeros(1), np.zeros(1), 0.5, 0.5, 4) == pytest.approx(0.5)

    def test_decreases_with_M(self):
        """O(1/M)."""
        box = BoxSet(lower=-np.ones(2), upper=np.ones(2))
        bounds = [gap_bound(box, box, np.zeros(2), np.zeros(2), 0.1, 0.2, M) for M in (1, 10)]
        assert bounds[1] == pytest.approx(bounds[0] / 10)

    def test_M_positive(self):
        """M >= 1."""
        box = BoxSet(lower=-np.ones(1), upper=np.ones(1))
        with pytest.raises(InvalidArgumentError):
            gap_bound(box, box, np.zeros(1), np.zeros(1), 0.5, 0.5, 0)
