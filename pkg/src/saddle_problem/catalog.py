"""
Problem family registry and built-in catalog.

Families are registered by name with metadata describing which closed-form
tools apply to them (analytic saddle, separable gap oracle).
"""

import contextlib
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.errors import InvalidArgumentError
from src.saddle_problem.components import SaddleProblem, create_quadratic_component
from src.saddle_problem.conjugates import BoxIndicatorConjugate, QuadraticConjugate
from src.saddle_problem.linear_maps import (
    LinearMap,
    create_identity_map,
    create_linear_map,
    create_zero_map,
)
from src.types import CouplingKind, FamilyBuilderFn


@dataclass
class FamilyMetadata:
    """Metadata for a registered problem family."""

    name: str
    display_name: str
    description: str
    builder: FamilyBuilderFn
    analytic_saddle: bool
    separable_oracle: bool


class FamilyRegistry:
    """
    Registry for problem families.

    Side effects:
        Maintains global registry of families.
    """

    def __init__(self) -> None:
        """Initialize empty registry."""
        self._families: dict[str, FamilyMetadata] = {}

    def register(self, metadata: FamilyMetadata) -> None:
        """
        Register family with metadata.

        Args:
            metadata: Family metadata.

        Side effects:
            Adds family to registry.

        Raises:
            ValueError: If family already registered.
        """
        if metadata.name in self._families:
            raise ValueError(f"Family '{metadata.name}' already registered")
        self._families[metadata.name] = metadata

    def get(self, name: str) -> FamilyMetadata | None:
        """
        Get family metadata by name.

        Args:
            name: Family name.

        Returns:
            FamilyMetadata or None if not found.
        """
        return self._families.get(name)

    def list_families(self) -> list[str]:
        """List all registered family names."""
        return list(self._families.keys())

    def is_registered(self, name: str) -> bool:
        """Check if family is registered."""
        return name in self._families


# Global registry instance
_global_registry = FamilyRegistry()


def get_global_registry() -> FamilyRegistry:
    """
    Get global family registry instance, populated with the built-ins.

    Returns:
        Global FamilyRegistry.
    """
    register_default_families()
    return _global_registry


def register_family(metadata: FamilyMetadata) -> None:
    """
    Register family in global registry.

    Args:
        metadata: Family metadata.

    Side effects:
        Adds to global registry.
    """
    _global_registry.register(metadata)


def build_problem(family: str, **params: Any) -> SaddleProblem:
    """
    Build a catalog instance by family name.

    Args:
        family: Registered family name.
        **params: Builder keyword arguments.

    Returns:
        SaddleProblem.

    Raises:
        InvalidArgumentError: If the family is unknown.
    """
    metadata = get_global_registry().get(family)
    if metadata is None:
        raise InvalidArgumentError(f"Unknown problem family: {family}")
    return metadata.builder(**params)


def build_coupling(
    kind: CouplingKind,
    d1: int,
    d2: int,
    rng: np.random.Generator,
    scale: float = 1.0,
) -> LinearMap:
    """
    Build the coupling operator for a catalog instance.

    Args:
        kind: "identity" (needs d1 == d2), "gaussian" or "zero".
        d1: Primal dimension.
        d2: Dual dimension.
        rng: Generator for the gaussian entries.
        scale: Multiplier for the gaussian entries.

    Returns:
        LinearMap with cached norm.
    """
    if kind == "identity":
        if d1 != d2:
            raise InvalidArgumentError(f"Identity coupling needs d1 == d2, got {d1} != {d2}")
        return create_identity_map(d1)
    if kind == "zero":
        return create_zero_map(d2, d1)
    if kind == "gaussian":
        return create_linear_map(scale * rng.standard_normal((d2, d1)) / np.sqrt(d2))
    raise InvalidArgumentError(f"Unknown coupling kind: {kind}")


def build_quadratic_quadratic(
    d1: int,
    d2: int,
    N: int,
    seed: int = 0,
    gamma: float = 1.0,
    conditioning: float = 4.0,
    coupling: CouplingKind = "gaussian",
    coupling_scale: float = 1.0,
    diagonal: bool = True,
) -> SaddleProblem:
    """
    f_i(x) = 1/2 x^T A_i x - b_i^T x, h* = (gamma / 2)|y|^2.

    Diagonal A_i have entries uniform in [1/conditioning, 1]; dense A_i are
    B B^T / d1 + I / conditioning with gaussian B.

    Args:
        d1: Primal dimension.
        d2: Dual dimension.
        N: Number of components.
        seed: Matrix generation seed.
        gamma: Modulus of h*.
        conditioning: Spread of each A_i's spectrum.
        coupling: Coupling kind.
        coupling_scale: Gaussian coupling multiplier.
        diagonal: Generate diagonal A_i (enables the separable gap oracle).

    Returns:
        SaddleProblem with analytic saddle.
    """
    _validate_sizes(d1, d2, N)
    if conditioning < 1:
        raise InvalidArgumentError(f"conditioning must be at least 1, got {conditioning}")

    rng = np.random.default_rng(seed)
    components = []
    for _ in range(N):
        if diagonal:
            hessian = np.diag(rng.uniform(1.0 / conditioning, 1.0, size=d1))
        else:
            basis = rng.standard_normal((d1, d1))
            hessian = basis @ basis.T / d1 + np.eye(d1) / conditioning
            hessian = 0.5 * (hessian + hessian.T)
        linear = rng.standard_normal(d1)
        components.append(create_quadratic_component(hessian, linear))

    return SaddleProblem(
        components=tuple(components),
        conjugate=QuadraticConjugate(gamma),
        coupling=build_coupling(coupling, d1, d2, rng, coupling_scale),
        family="quadratic-quadratic",
        params={
            "d1": d1,
            "d2": d2,
            "N": N,
            "seed": seed,
            "gamma": gamma,
            "conditioning": conditioning,
            "coupling": coupling,
            "coupling_scale": coupling_scale,
            "diagonal": diagonal,
        },
    )


def build_lasso_dual(
    d1: int,
    d2: int,
    N: int,
    seed: int = 0,
    lam: float = 1.0,
    rows_per_component: int | None = None,
    coupling: CouplingKind = "identity",
    coupling_scale: float = 1.0,
) -> SaddleProblem:
    """
    f_i(x) = 1/2 |M_i x - c_i|^2 over a row block, h* = indicator of [-lam, lam]^{d2}.

    Args:
        d1: Primal dimension.
        d2: Dual dimension.
        N: Number of row blocks.
        seed: Data generation seed.
        lam: l1 weight.
        rows_per_component: Rows per block (default d1, so every block is full rank).
        coupling: Coupling kind (identity gives the classical lasso).
        coupling_scale: Gaussian coupling multiplier.

    Returns:
        SaddleProblem; the saddle has no closed form.
    """
    _validate_sizes(d1, d2, N)
    if lam < 0:
        raise InvalidArgumentError(f"lam must be non-negative, got {lam}")
    rows = rows_per_component or d1

    rng = np.random.default_rng(seed)
    components = []
    for _ in range(N):
        block = rng.standard_normal((rows, d1)) / np.sqrt(rows * N)
        target = rng.standard_normal(rows)
        hessian = block.T @ block
        hessian = 0.5 * (hessian + hessian.T)
        components.append(
            create_quadratic_component(
                hessian, block.T @ target, offset=0.5 * float(np.dot(target, target))
            )
        )

    return SaddleProblem(
        components=tuple(components),
        conjugate=BoxIndicatorConjugate(lam),
        coupling=build_coupling(coupling, d1, d2, rng, coupling_scale),
        family="lasso-dual",
        params={
            "d1": d1,
            "d2": d2,
            "N": N,
            "seed": seed,
            "lam": lam,
            "rows_per_component": rows,
            "coupling": coupling,
            "coupling_scale": coupling_scale,
        },
    )


def _validate_sizes(d1: int, d2: int, N: int) -> None:
    for name, value in (("d1", d1), ("d2", d2), ("N", N)):
        if value < 1:
            raise InvalidArgumentError(f"{name} must be positive, got {value}")


def register_default_families() -> None:
    """
    Register the built-in families.

    Side effects:
        Populates global registry.
    """
    families = [
        FamilyMetadata(
            name="quadratic-quadratic",
            display_name="Quadratic / quadratic",
            description="Convex quadratic components with a quadratic conjugate",
            builder=build_quadratic_quadratic,
            analytic_saddle=True,
            separable_oracle=True,
        ),
        FamilyMetadata(
            name="lasso-dual",
            display_name="Generalized lasso",
            description="Least-squares row blocks with the l1 conjugate box indicator",
            builder=build_lasso_dual,
            analytic_saddle=False,
            separable_oracle=False,
        ),
    ]

    for family in families:
        with contextlib.suppress(ValueError):
            # Already registered, skip
            register_family(family)
