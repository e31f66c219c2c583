"""Unit tests for smooth components and the problem container."""

import numpy as np
import pytest

from src.errors import InvalidArgumentError
from src.saddle_problem import (
    QuadraticConjugate,
    SaddleProblem,
    SmoothComponent,
    create_identity_map,
    create_linear_component,
    create_linear_map,
    create_quadratic_component,
)


class TestQuadraticComponent:
    """Tests for create_quadratic_component."""

    def test_value_and_gradient(self):
        """f(x) = 1/2 x^T Q x - q^T x + c."""
        component = create_quadratic_component(
            np.diag([2.0, 4.0]), np.array([1.0, -1.0]), offset=0.5
        )
        x = np.array([1.0, 2.0])
        assert component.value(x) == pytest.approx(0.5 * (2.0 + 16.0) - (1.0 - 2.0) + 0.5)
        np.testing.assert_allclose(component.gradient(x), [1.0, 9.0])

    def test_constants_from_spectrum(self):
        """L and delta default to the extreme eigenvalues."""
        component = create_quadratic_component(np.diag([0.5, 3.0]), np.zeros(2))
        assert component.L == pytest.approx(3.0)
        assert component.delta == pytest.approx(0.5)

    def test_declared_constants_kept(self):
        """Explicit L and delta override the spectrum."""
        component = create_quadratic_component(np.eye(2), np.zeros(2), L=5.0, delta=-1.0)
        assert component.L == 5.0
        assert component.delta == -1.0

    def test_rejects_asymmetric_hessian(self):
        """Non-symmetric Q is rejected."""
        with pytest.raises(InvalidArgumentError):
            create_quadratic_component(np.array([[1.0, 2.0], [0.0, 1.0]]), np.zeros(2))

    def test_rejects_mismatched_linear_term(self):
        """q must match Q."""
        with pytest.raises(InvalidArgumentError):
            create_quadratic_component(np.eye(2), np.zeros(3))

    def test_data_is_read_only(self):
        """Closed-form data cannot be modified."""
        component = create_quadratic_component(np.eye(2), np.ones(2))
        assert component.quadratic is not None
        with pytest.raises(ValueError):
            component.quadratic.hessian[0, 0] = 2.0

    def test_linear_component(self):
        """f(x) = <c, x> has zero constants and gradient c."""
        component = create_linear_component(np.array([1.0, -2.0]))
        assert component.L == 0.0
        assert component.delta == 0.0
        np.testing.assert_allclose(component.gradient(np.array([5.0, 5.0])), [1.0, -2.0])
        assert component.value(np.array([1.0, 1.0])) == pytest.approx(-1.0)


class TestSmoothComponent:
    """Tests for SmoothComponent validation."""

    def test_negative_L_rejected(self):
        """L_i >= 0."""
        with pytest.raises(InvalidArgumentError):
            SmoothComponent(value_fn=lambda x: 0.0, gradient_fn=lambda x: x, L=-1.0, delta=-2.0)

    def test_delta_above_L_rejected(self):
        """delta_i <= L_i."""
        with pytest.raises(InvalidArgumentError):
            SmoothComponent(value_fn=lambda x: 0.0, gradient_fn=lambda x: x, L=1.0, delta=2.0)


class TestSaddleProblem:
    """Tests for SaddleProblem."""

    def test_aggregated_constants(self):
        """L and delta are summed over components."""
        problem = SaddleProblem(
            components=(
                create_quadratic_component(np.diag([1.0, 2.0]), np.zeros(2)),
                create_quadratic_component(np.diag([3.0, 0.5]), np.zeros(2)),
            ),
            conjugate=QuadraticConjugate(2.0),
            coupling=create_identity_map(2),
        )
        assert problem.N == 2
        assert problem.d1 == 2
        assert problem.d2 == 2
        assert problem.L == pytest.approx(5.0)
        assert problem.delta == pytest.approx(1.5)
        assert problem.gamma == 2.0
        assert problem.K_norm == pytest.approx(1.0)

    def test_empty_components_rejected(self):
        """At least one component is required."""
        with pytest.raises(InvalidArgumentError):
            SaddleProblem(
                components=(), conjugate=QuadraticConjugate(1.0), coupling=create_identity_map(2)
            )

    def test_zero_smoothness_rejected(self):
        """L = sum L_i must be positive."""
        with pytest.raises(InvalidArgumentError):
            SaddleProblem(
                components=(create_linear_component(np.ones(2)),),
                conjugate=QuadraticConjugate(1.0),
                coupling=create_identity_map(2),
            )

    def test_gradient_dimension_checked(self):
        """Component gradients must live in R^{d1}."""
        with pytest.raises(InvalidArgumentError):
            SaddleProblem(
                components=(
                    SmoothComponent(
                        value_fn=lambda x: 0.0, gradient_fn=lambda x: np.zeros(3), L=1.0, delta=0.0
                    ),
                ),
                conjugate=QuadraticConjugate(1.0),
                coupling=create_linear_map(np.ones((2, 2))),
            )

    def test_quadratic_data_sums(self, quadratic_problem):
        """Aggregate data is the sum of component data."""
        data = quadratic_problem.quadratic_data()
        assert data is not None
        expected = sum(c.quadratic.hessian for c in quadratic_problem.components)
        np.testing.assert_allclose(data.hessian, expected)
        assert data.is_diagonal()

    def test_quadratic_data_none_for_black_box(self):
        """A component without closed form disables aggregate data."""
        black_box = SmoothComponent(
            value_fn=lambda x: float(np.dot(x, x)),
            gradient_fn=lambda x: 2.0 * x,
            L=2.0,
            delta=2.0,
        )
        problem = SaddleProblem(
            components=(black_box,),
            conjugate=QuadraticConjugate(1.0),
            coupling=create_identity_map(2),
        )
        assert problem.quadratic_data() is None
