"""
Verifier for the geometric-decay lemma on perturbed recursions.

If V_k >= V_{k+1}/a + b w_k - c sum_{j=k-k0}^{k} w_j for all k, with
w_k >= 0 (w_k = 0 for k < 0) and (c/(1-a)) (1 - a^{k0+1}) / a^{k0} <= b,
then V_k <= a^k V_0.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError


@dataclass(frozen=True)
class LemmaVerdict:
    """Which parts of the lemma hold for a given sequence."""

    hypothesis_ok: bool
    condition_ok: bool
    conclusion_ok: bool
    condition_lhs: float


def lemma_condition_lhs(a: float, c: float, k0: int) -> float:
    """(c / (1 - a)) (1 - a^{k0+1}) / a^{k0}."""
    return (c / (1.0 - a)) * (1.0 - a ** (k0 + 1)) / a**k0


def _window_sums(omega: np.ndarray, k0: int) -> np.ndarray:
    cumulative = np.concatenate(([0.0], np.cumsum(omega)))
    k = np.arange(len(omega))
    start = np.maximum(k - k0, 0)
    return cumulative[k + 1] - cumulative[start]


def lemma1_verify(
    V: Sequence[float],
    omega_seq: Sequence[float],
    a: float,
    b: float,
    c: float,
    k0: int,
    rel_tol: float = 1e-9,
) -> LemmaVerdict:
    """
    Check hypothesis, condition and conclusion of the lemma on finite sequences.

    Args:
        V: V_0, ..., V_n.
        omega_seq: w_0, ..., w_n (nonnegative).
        a: Contraction in (0, 1).
        b: Nonnegative weight.
        c: Nonnegative weight.
        k0: Window length, at least 1.
        rel_tol: Relative slack for floating-point comparisons.

    Returns:
        LemmaVerdict. The conclusion is evaluated independently of the other two.

    Raises:
        InvalidArgumentError: On length mismatch or parameters outside their ranges.
    """
    if len(V) != len(omega_seq):
        raise InvalidArgumentError(f"Sequence lengths differ: {len(V)} vs {len(omega_seq)}")
    if len(V) == 0:
        raise InvalidArgumentError("Sequences must be non-empty")
    if not 0.0 < a < 1.0:
        raise InvalidArgumentError(f"a must be in (0, 1), got {a}")
    if b < 0 or c < 0:
        raise InvalidArgumentError(f"b and c must be non-negative, got b={b}, c={c}")
    if k0 < 1:
        raise InvalidArgumentError(f"k0 must be at least 1, got {k0}")

    values = np.asarray(V, dtype=np.float64)
    omega = np.asarray(omega_seq, dtype=np.float64)
    if bool(np.any(omega < 0)):
        raise InvalidArgumentError("omega_seq must be non-negative")

    windows = _window_sums(omega, k0)
    rhs = values[1:] / a + b * omega[:-1] - c * windows[:-1]
    scale = np.abs(values[:-1]) + np.abs(values[1:] / a) + b * omega[:-1] + c * windows[:-1]
    hypothesis_ok = bool(np.all(values[:-1] >= rhs - rel_tol * scale))

    condition_lhs = lemma_condition_lhs(a, c, k0)
    condition_ok = condition_lhs <= b * (1.0 + rel_tol)

    bound = a ** np.arange(len(values)) * values[0]
    conclusion_ok = bool(
        np.all(values <= bound + rel_tol * (np.abs(bound) + np.abs(values)) + 1e-300)
    )

    return LemmaVerdict(
        hypothesis_ok=hypothesis_ok,
        condition_ok=condition_ok,
        conclusion_ok=conclusion_ok,
        condition_lhs=condition_lhs,
    )


def generate_lemma_sequence(
    rng: np.random.Generator,
    length: int,
    a: float,
    b: float,
    c: float,
    k0: int,
    V0: float = 1.0,
    omega_scale: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Build sequences meeting the hypothesis with equality.

    w_k is drawn uniformly from [0, omega_scale) and
    V_{k+1} = a (V_k - b w_k + c sum_{j=k-k0}^{k} w_j).

    Returns:
        Tuple of (V, omega) arrays of the given length.
    """
    if length < 1:
        raise InvalidArgumentError(f"length must be positive, got {length}")
    omega = rng.random(length) * omega_scale
    windows = _window_sums(omega, k0)
    values = np.empty(length)
    values[0] = V0
    for k in range(length - 1):
        values[k + 1] = a * (values[k] - b * omega[k] + c * windows[k])
    return values, omega
