"""Automatic step-size selection by halving a common scale."""

import logging
from dataclasses import dataclass

from src.certificates.conditions import (
    StepSizeCertificate,
    certify_thm1,
    certify_thm2,
    certify_thm3,
    theta_range,
)
from src.config import get_stepsize_config
from src.errors import InfeasibleStepSizeError, InvalidArgumentError
from src.saddle_problem.components import SaddleProblem
from src.types import Variant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepSizeChoice:
    """Certified parameters found by the search."""

    sigma: float
    tau: float
    theta: float | None
    certificate: StepSizeCertificate
    halvings: int


def certify_variant(
    variant: Variant,
    sigma: float,
    tau: float,
    theta: float | None,
    L: float,
    K_norm: float,
    delta: float,
    gamma: float,
    T: int,
) -> StepSizeCertificate:
    """
    Dispatch to the certificate of a variant.

    Raises:
        InvalidArgumentError: For an unknown variant or a thm2 call without theta.
    """
    if variant == "thm1":
        return certify_thm1(sigma, tau, K_norm, L, T)
    if variant == "thm2":
        if theta is None:
            raise InvalidArgumentError("thm2 certificate needs theta")
        return certify_thm2(sigma, tau, theta, delta, gamma, L, T, K_norm)
    if variant == "thm3":
        return certify_thm3(sigma, tau, L, T, K_norm, delta)
    raise InvalidArgumentError(f"Unknown variant: {variant}")


def midpoint_theta(sigma: float, tau: float, delta: float, gamma: float) -> float:
    """Midpoint of [theta_min, 1]; 1.0 when the linear-rate range does not exist."""
    if not (delta > 0 and gamma > 0):
        return 1.0
    theta_min, theta_max = theta_range(sigma, tau, delta, gamma)
    return 0.5 * (theta_min + theta_max)


def auto_stepsize_from_constants(
    L: float,
    K_norm: float,
    delta: float,
    gamma: float,
    T: int,
    variant: Variant,
    ratio: float | None = None,
    max_halvings: int | None = None,
) -> StepSizeChoice:
    """
    Halve s from 1/(L + |K| + 1) until sigma = s, tau = ratio * s is certified.

    Args:
        L: Sum of smoothness constants.
        K_norm: |K|.
        delta: Sum of strong-convexity moduli of f.
        gamma: Modulus of h*.
        T: Delay bound.
        variant: Which certificate to satisfy.
        ratio: tau / sigma (default from config).
        max_halvings: Search budget (default from config).

    Returns:
        StepSizeChoice with the first certified scale.

    Raises:
        InfeasibleStepSizeError: When no scale within the budget passes.
    """
    cfg = get_stepsize_config()
    if ratio is None:
        ratio = cfg["ratio"]
    if max_halvings is None:
        max_halvings = cfg["max_halvings"]
    if not ratio > 0:
        raise InvalidArgumentError(f"ratio must be positive, got {ratio}")

    scale = 1.0 / (L + K_norm + 1.0)
    certificate: StepSizeCertificate | None = None
    for halvings in range(max_halvings + 1):
        sigma = scale
        tau = ratio * scale
        theta = midpoint_theta(sigma, tau, delta, gamma) if variant == "thm2" else None
        certificate = certify_variant(variant, sigma, tau, theta, L, K_norm, delta, gamma, T)
        if certificate.passed:
            logger.info(
                f"Certified {variant} step sizes after {halvings} halvings: "
                f"sigma={sigma:.6g}, tau={tau:.6g}, theta={theta}"
            )
            return StepSizeChoice(
                sigma=sigma, tau=tau, theta=theta, certificate=certificate, halvings=halvings
            )
        scale *= 0.5

    failed = ", ".join(certificate.failed()) if certificate else "none evaluated"
    raise InfeasibleStepSizeError(
        f"No certified {variant} step sizes within {max_halvings} halvings (failing: {failed})",
        last_certificate=certificate,
    )


def auto_stepsize(
    problem: SaddleProblem,
    T: int,
    variant: Variant,
    ratio: float | None = None,
    max_halvings: int | None = None,
) -> StepSizeChoice:
    """
    Certified (sigma, tau, theta) for a problem and delay bound.

    Args:
        problem: Saddle problem supplying L, |K|, delta and gamma.
        T: Delay bound.
        variant: Which certificate to satisfy.
        ratio: tau / sigma (default from config).
        max_halvings: Search budget (default from config).

    Returns:
        StepSizeChoice.

    Raises:
        InfeasibleStepSizeError: When no scale within the budget passes.
    """
    return auto_stepsize_from_constants(
        L=problem.L,
        K_norm=problem.K_norm,
        delta=problem.delta,
        gamma=problem.gamma,
        T=T,
        variant=variant,
        ratio=ratio,
        max_halvings=max_halvings,
    )
