"""Unit tests for dual extrapolation rules."""

import numpy as np
import pytest

from src.errors import InvalidArgumentError
from src.pd_piag import ExtrapolationRule, extrapolate

Y = np.array([1.0, -2.0])
Y_PREV = np.array([0.5, 1.0])


class TestExtrapolate:
    """Tests for extrapolate."""

    def test_pdhg(self):
        """y_bar = 2 y - y_prev."""
        np.testing.assert_allclose(extrapolate(ExtrapolationRule.pdhg(), Y, Y_PREV), [1.5, -5.0])

    def test_theta(self):
        """y_bar = y + theta (y - y_prev)."""
        rule = ExtrapolationRule.with_theta(0.5)
        np.testing.assert_allclose(extrapolate(rule, Y, Y_PREV), [1.25, -3.5])

    def test_theta_one_matches_pdhg(self):
        """theta = 1 is the PDHG rule."""
        np.testing.assert_array_equal(
            extrapolate(ExtrapolationRule.with_theta(1.0), Y, Y_PREV),
            extrapolate(ExtrapolationRule.pdhg(), Y, Y_PREV),
        )

    def test_arrow_hurwicz_copies(self):
        """y_bar = y, as a fresh array."""
        y_bar = extrapolate(ExtrapolationRule.arrow_hurwicz(), Y, Y_PREV)
        np.testing.assert_array_equal(y_bar, Y)
        assert y_bar is not Y

    def test_shape_mismatch(self):
        """y and y_prev must agree."""
        with pytest.raises(InvalidArgumentError):
            extrapolate(ExtrapolationRule.pdhg(), Y, np.zeros(3))


class TestExtrapolationRule:
    """Rule construction."""

    @pytest.mark.parametrize("theta", [0.0, -0.1, 1.01, None])
    def test_theta_range(self, theta):
        """theta in (0, 1]."""
        with pytest.raises(InvalidArgumentError):
            ExtrapolationRule(kind="theta_extrapolation", theta=theta)

    def test_theta_forbidden_elsewhere(self):
        """Only the theta rule takes a weight."""
        with pytest.raises(InvalidArgumentError):
            ExtrapolationRule(kind="arrow_hurwicz", theta=0.5)

    def test_unknown_kind(self):
        """Unknown kinds raise."""
        with pytest.raises(InvalidArgumentError):
            ExtrapolationRule(kind="nesterov")

    def test_for_variant(self):
        """Variant to rule mapping."""
        assert ExtrapolationRule.for_variant("thm1").kind == "pdhg_extrapolation"
        assert ExtrapolationRule.for_variant("thm2", theta=0.7).theta == 0.7
        assert ExtrapolationRule.for_variant("thm3").kind == "arrow_hurwicz"
        with pytest.raises(InvalidArgumentError):
            ExtrapolationRule.for_variant("thm2")
