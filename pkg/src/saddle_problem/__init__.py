"""
Saddle problem data model.

    min_x max_y  sum_i f_i(x) + <Kx, y> - h*(y)

Usage:
    from src.saddle_problem import build_problem, eval_lagrangian

    problem = build_problem("quadratic-quadratic", d1=10, d2=10, N=5, seed=0)
    value = eval_lagrangian(problem, x, y)
"""

from src.saddle_problem.catalog import (
    FamilyMetadata,
    FamilyRegistry,
    build_coupling,
    build_lasso_dual,
    build_problem,
    build_quadratic_quadratic,
    get_global_registry,
    register_family,
)
from src.saddle_problem.components import (
    QuadraticData,
    SaddleProblem,
    SmoothComponent,
    create_linear_component,
    create_quadratic_component,
)
from src.saddle_problem.conjugates import (
    BoxIndicatorConjugate,
    ConjugateTerm,
    QuadraticConjugate,
    ZeroConjugate,
)
from src.saddle_problem.evaluation import (
    apply_primal_prox,
    apply_prox,
    eval_lagrangian,
    eval_smooth,
    grad_full,
)
from src.saddle_problem.linear_maps import (
    LinearMap,
    NormEstimate,
    check_adjoint,
    create_identity_map,
    create_linear_map,
    create_zero_map,
    operator_norm,
)
from src.saddle_problem.validation import (
    AssumptionCheck,
    ValidationReport,
    validate_assumptions,
)

__all__ = [
    # Components
    "QuadraticData",
    "SaddleProblem",
    "SmoothComponent",
    "create_linear_component",
    "create_quadratic_component",
    # Conjugates
    "BoxIndicatorConjugate",
    "ConjugateTerm",
    "QuadraticConjugate",
    "ZeroConjugate",
    # Linear maps
    "LinearMap",
    "NormEstimate",
    "check_adjoint",
    "create_identity_map",
    "create_linear_map",
    "create_zero_map",
    "operator_norm",
    # Evaluation
    "apply_primal_prox",
    "apply_prox",
    "eval_lagrangian",
    "eval_smooth",
    "grad_full",
    # Validation
    "AssumptionCheck",
    "ValidationReport",
    "validate_assumptions",
    # Catalog
    "FamilyMetadata",
    "FamilyRegistry",
    "build_coupling",
    "build_lasso_dual",
    "build_problem",
    "build_quadratic_quadratic",
    "get_global_registry",
    "register_family",
]
