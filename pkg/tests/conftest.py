"""Shared fixtures: small deterministic problem instances."""

import numpy as np
import pytest

from src.config import reload_config
from src.saddle_problem import (
    BoxIndicatorConjugate,
    QuadraticConjugate,
    SaddleProblem,
    build_lasso_dual,
    build_quadratic_quadratic,
    create_identity_map,
    create_quadratic_component,
)


@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from configs/default.yaml."""
    reload_config()
    yield


@pytest.fixture
def scalar_problem() -> SaddleProblem:
    """f(x) = x^2/2 - x, h*(y) = y^2/2, K = 1 (L = delta = gamma = |K| = 1)."""
    return SaddleProblem(
        components=(create_quadratic_component(np.array([[1.0]]), np.array([1.0])),),
        conjugate=QuadraticConjugate(1.0),
        coupling=create_identity_map(1),
    )


@pytest.fixture
def quadratic_problem() -> SaddleProblem:
    """Diagonal quadratic-quadratic instance with gaussian coupling."""
    return build_quadratic_quadratic(d1=4, d2=3, N=3, seed=1)


@pytest.fixture
def identity_quadratic_problem() -> SaddleProblem:
    """Quadratic-quadratic instance with K = I."""
    return build_quadratic_quadratic(d1=3, d2=3, N=3, seed=2, coupling="identity")


@pytest.fixture
def lasso_problem() -> SaddleProblem:
    """Generalized lasso with identity coupling."""
    return build_lasso_dual(d1=3, d2=3, N=2, seed=3, lam=0.5)


@pytest.fixture
def zero_dual_problem() -> SaddleProblem:
    """h* = indicator of {0}: the dual stays at 0 and PD-PIAG reduces to PIAG."""
    components = (
        create_quadratic_component(np.diag([2.0, 1.0]), np.array([1.0, -2.0])),
        create_quadratic_component(np.diag([1.0, 3.0]), np.array([0.0, 1.0])),
        create_quadratic_component(np.diag([1.0, 1.0]), np.array([-1.0, 2.0])),
    )
    return SaddleProblem(
        components=components,
        conjugate=BoxIndicatorConjugate(0.0),
        coupling=create_identity_map(2),
    )
