"""Tests for the FBS and PIAG baselines."""

import numpy as np
import pytest

from src.analysis import find_saddle
from src.errors import BaselineUnavailableError
from src.pd_piag import DelaySchedule, fbs_step, init_state, piag_step
from src.saddle_problem import (
    BoxIndicatorConjugate,
    SaddleProblem,
    create_identity_map,
    create_quadratic_component,
)


class TestRequireIdentity:
    """Baselines refuse general couplings."""

    def test_fbs_refuses_gaussian_coupling(self, quadratic_problem):
        """K != I raises."""
        with pytest.raises(BaselineUnavailableError):
            fbs_step(quadratic_problem, np.zeros(quadratic_problem.d1), 0.1)

    def test_piag_refuses_gaussian_coupling(self, quadratic_problem):
        """K != I raises."""
        state = init_state(
            quadratic_problem, np.zeros(quadratic_problem.d1), np.zeros(quadratic_problem.d2)
        )
        with pytest.raises(BaselineUnavailableError):
            piag_step(state, quadratic_problem, 0.1, DelaySchedule.cyclic())


def scalar_identity_problem(center, radius):
    """f(x) = (x - center)^2 / 2 up to a constant, h* the indicator of [-radius, radius]."""
    return SaddleProblem(
        components=(create_quadratic_component(np.array([[1.0]]), np.array([center])),),
        conjugate=BoxIndicatorConjugate(radius),
        coupling=create_identity_map(1),
    )


class TestFbs:
    """Forward-backward splitting."""

    def test_pure_gradient_step(self):
        """h = 0, f = x^2/2, x = 1, sigma = 0.5 gives 0.5."""
        x_next = fbs_step(scalar_identity_problem(0.0, 0.0), np.array([1.0]), 0.5)
        assert x_next[0] == pytest.approx(0.5)

    def test_absolute_value_soft_threshold(self):
        """h = |x|, f = (x - 3)^2/2, x = 3, sigma = 1 gives soft-threshold(3, 1) = 2."""
        x_next = fbs_step(scalar_identity_problem(3.0, 1.0), np.array([3.0]), 1.0)
        assert x_next[0] == pytest.approx(2.0)

    def test_saddle_is_fixed_point(self, identity_quadratic_problem):
        """x_hat = prox_{sigma h}(x_hat - sigma grad f(x_hat))."""
        x_hat = find_saddle(identity_quadratic_problem).x_hat
        np.testing.assert_allclose(
            fbs_step(identity_quadratic_problem, x_hat, 0.2), x_hat, rtol=0, atol=1e-10
        )

    def test_piag_without_delay_is_fbs(self, lasso_problem):
        """PIAG with T = 0 reproduces FBS."""
        sigma = 0.5 / lasso_problem.L
        x = np.ones(lasso_problem.d1)
        state = init_state(lasso_problem, x, np.zeros(lasso_problem.d2))
        for _ in range(30):
            x = fbs_step(lasso_problem, x, sigma)
            state = piag_step(state, lasso_problem, sigma, DelaySchedule.constant(0))
            np.testing.assert_allclose(state.x, x, rtol=0, atol=1e-12)
