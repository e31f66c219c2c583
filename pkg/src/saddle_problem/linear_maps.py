"""
Linear coupling operators K: R^{d1} -> R^{d2}.

Maps carry forward/adjoint callables so black-box operators are allowed;
dense matrices are the common case and get a convenience constructor.
The operator norm is estimated once, at construction, by power iteration.
"""

import logging
from dataclasses import dataclass, replace

import numpy as np

from src.config import get_coupling_config
from src.errors import InvalidArgumentError
from src.types import MapFn, Matrix, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormEstimate:
    """Power-iteration estimate of ||K||."""

    value: float
    achieved_tol: float
    converged: bool
    iterations: int


@dataclass(frozen=True)
class LinearMap:
    """
    Linear operator with explicit adjoint.

    Args:
        forward_fn: x -> Kx.
        adjoint_fn: y -> K^T y.
        d1: Domain dimension.
        d2: Range dimension.
        is_identity: True when K = I (enables the FBS/PIAG baselines).
        matrix: Dense matrix when available.
        norm_estimate: Cached ||K|| (filled in by create_linear_map).
    """

    forward_fn: MapFn
    adjoint_fn: MapFn
    d1: int
    d2: int
    is_identity: bool = False
    matrix: Matrix | None = None
    norm_estimate: NormEstimate | None = None

    def forward(self, x: Vector) -> Vector:
        """Apply K."""
        if x.shape != (self.d1,):
            raise InvalidArgumentError(f"K expects a vector of size {self.d1}, got {x.shape}")
        return self.forward_fn(x)

    def adjoint(self, y: Vector) -> Vector:
        """Apply K^T."""
        if y.shape != (self.d2,):
            raise InvalidArgumentError(f"K^T expects a vector of size {self.d2}, got {y.shape}")
        return self.adjoint_fn(y)

    @property
    def norm(self) -> float:
        """Cached operator norm (0.0 if never estimated)."""
        return self.norm_estimate.value if self.norm_estimate else 0.0


def operator_norm(
    linear_map: LinearMap,
    tol: float,
    max_iters: int | None = None,
    seed: int | None = None,
) -> NormEstimate:
    """
    Estimate ||K|| by power iteration on K^T K.

    Args:
        linear_map: Operator to measure.
        tol: Relative tolerance on successive eigenvalue estimates.
        max_iters: Iteration cap (default: factor * max(d1, d2) from config).
        seed: Start-vector seed (default from config).

    Returns:
        NormEstimate; `converged` is False when the cap was hit first.

    Raises:
        InvalidArgumentError: If tol is not positive.
    """
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")

    coupling_cfg = get_coupling_config()
    if max_iters is None:
        max_iters = coupling_cfg["norm_max_iters_factor"] * max(linear_map.d1, linear_map.d2)
    if seed is None:
        seed = coupling_cfg["norm_seed"]

    rng = np.random.default_rng(seed)
    x = rng.standard_normal(linear_map.d1)
    x /= np.linalg.norm(x)

    eigenvalue = 0.0
    rel_change = np.inf
    iterations = 0
    for iterations in range(1, max(max_iters, 1) + 1):
        w = linear_map.adjoint_fn(linear_map.forward_fn(x))
        new_eigenvalue = float(np.linalg.norm(w))
        if new_eigenvalue == 0.0:
            # K^T K annihilates the start vector: K = 0 for generic starts
            return NormEstimate(value=0.0, achieved_tol=0.0, converged=True, iterations=iterations)

        rel_change = abs(new_eigenvalue - eigenvalue) / new_eigenvalue
        eigenvalue = new_eigenvalue
        x = w / new_eigenvalue
        if rel_change <= tol:
            return NormEstimate(
                value=float(np.sqrt(eigenvalue)),
                achieved_tol=float(rel_change),
                converged=True,
                iterations=iterations,
            )

    logger.warning(
        f"Power iteration stopped after {iterations} iterations "
        f"with relative change {rel_change:.3e} > {tol:.1e}"
    )
    return NormEstimate(
        value=float(np.sqrt(eigenvalue)),
        achieved_tol=float(rel_change),
        converged=False,
        iterations=iterations,
    )


def _with_norm(linear_map: LinearMap, tol: float | None) -> LinearMap:
    if tol is None:
        tol = get_coupling_config()["norm_tol"]
    return replace(linear_map, norm_estimate=operator_norm(linear_map, tol))


def create_linear_map(matrix: Matrix, tol: float | None = None) -> LinearMap:
    """
    Build a map from a dense d2 x d1 matrix and estimate its norm.

    Args:
        matrix: 2-D array K.
        tol: Power iteration tolerance (default from config).

    Returns:
        LinearMap with cached norm estimate.
    """
    k_matrix = np.array(matrix, dtype=np.float64)
    if k_matrix.ndim != 2 or min(k_matrix.shape) < 1:
        raise InvalidArgumentError(f"K must be a non-empty 2-D matrix, got shape {k_matrix.shape}")
    k_matrix.setflags(write=False)
    k_t = k_matrix.T

    linear_map = LinearMap(
        forward_fn=lambda x: k_matrix @ x,
        adjoint_fn=lambda y: k_t @ y,
        d1=k_matrix.shape[1],
        d2=k_matrix.shape[0],
        matrix=k_matrix,
    )
    return _with_norm(linear_map, tol)


def create_identity_map(dim: int) -> LinearMap:
    """Identity coupling K = I on R^dim."""
    if dim < 1:
        raise InvalidArgumentError(f"dim must be positive, got {dim}")
    linear_map = LinearMap(
        forward_fn=lambda x: x.copy(),
        adjoint_fn=lambda y: y.copy(),
        d1=dim,
        d2=dim,
        is_identity=True,
        matrix=np.eye(dim),
    )
    return _with_norm(linear_map, None)


def create_zero_map(d2: int, d1: int) -> LinearMap:
    """Decoupled problem, K = 0."""
    return create_linear_map(np.zeros((d2, d1)))


def check_adjoint(
    linear_map: LinearMap,
    num_samples: int = 100,
    seed: int = 0,
    rel_tol: float | None = None,
) -> tuple[bool, float]:
    """
    Check <Kx, y> = <x, K^T y> on random pairs.

    Args:
        linear_map: Operator to check.
        num_samples: Number of random (x, y) pairs.
        seed: Sampling seed.
        rel_tol: Relative tolerance (default from config).

    Returns:
        Tuple of (passed, worst relative mismatch).
    """
    if rel_tol is None:
        rel_tol = get_coupling_config()["adjoint_tol"]

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(num_samples):
        x = rng.standard_normal(linear_map.d1)
        y = rng.standard_normal(linear_map.d2)
        lhs = float(np.dot(linear_map.forward(x), y))
        rhs = float(np.dot(x, linear_map.adjoint(y)))
        scale = max(1.0, abs(lhs), abs(rhs))
        worst = max(worst, abs(lhs - rhs) / scale)

    return worst <= rel_tol, worst
