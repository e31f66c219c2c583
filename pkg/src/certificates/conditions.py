"""
Step-size conditions for the three convergence variants and the rate
constants of the linear-rate variant.

Failing conditions are values, not errors: every check records its lhs, rhs
and slack = rhs - lhs. A strict check passes iff slack > 0, a non-strict one
iff slack >= 0.

    thm1  sqrt(tau sigma)|K| + sigma L (T+1)^2 < 1,  tau sigma |K|^2 < 1
    thm2  sigma (L + delta)(T+1) a^{-T} + sigma |K| <= 1,
          sigma tau |K|^2 < 1,  theta tau |K| <= 1,  theta_min <= theta <= 1
    thm3  sigma L (T+1)^2 < 1,  |K|^2 tau <= delta,  delta > 0
"""

import math
from dataclasses import dataclass

from src.errors import InternalInconsistencyError, InvalidArgumentError
from src.types import CertificateData, ConditionCheckData, RateConstantsData, Variant


@dataclass(frozen=True)
class ConditionCheck:
    """One inequality lhs < rhs (strict) or lhs <= rhs."""

    name: str
    lhs: float
    rhs: float
    strict: bool

    @property
    def slack(self) -> float:
        """rhs - lhs."""
        return self.rhs - self.lhs

    @property
    def satisfied(self) -> bool:
        """Whether the inequality holds."""
        return self.slack > 0 if self.strict else self.slack >= 0

    def to_data(self) -> ConditionCheckData:
        """Serialize."""
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "strict": self.strict,
            "satisfied": self.satisfied,
            "slack": self.slack,
        }


@dataclass(frozen=True)
class StepSizeCertificate:
    """
    Condition set evaluated at recorded inputs.

    Args:
        theorem: Variant the conditions belong to.
        sigma: Primal step.
        tau: Dual step.
        theta: Extrapolation weight (thm2 only).
        T: Delay bound.
        K_norm: |K|.
        L: Sum of smoothness constants.
        delta: Sum of strong-convexity moduli.
        gamma: Modulus of h*.
        checks: Evaluated conditions in display order.
    """

    theorem: Variant
    sigma: float
    tau: float
    theta: float | None
    T: int
    K_norm: float
    L: float
    delta: float
    gamma: float
    checks: tuple[ConditionCheck, ...]

    @property
    def passed(self) -> bool:
        """True when every condition holds."""
        return all(check.satisfied for check in self.checks)

    @property
    def min_slack(self) -> float:
        """Smallest slack over the conditions."""
        return min(check.slack for check in self.checks)

    def check(self, name: str) -> ConditionCheck:
        """Look up a condition by name."""
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failed(self) -> list[str]:
        """Names of failing conditions."""
        return [check.name for check in self.checks if not check.satisfied]

    def to_data(self) -> CertificateData:
        """Serialize for summaries."""
        return {
            "theorem": self.theorem,
            "sigma": self.sigma,
            "tau": self.tau,
            "theta": self.theta,
            "T": self.T,
            "K_norm": self.K_norm,
            "L": self.L,
            "delta": self.delta,
            "gamma": self.gamma,
            "passed": self.passed,
            "checks": [check.to_data() for check in self.checks],
        }


@dataclass(frozen=True)
class RateConstants:
    """
    Constants of the linear rate.

    Args:
        a: min{1 + 3 delta sigma / 2, 1 + 2 gamma tau}^{-1}.
        omega: Contraction factor a (1 + theta sigma |K|) / (1 + a sigma |K|).
        theta_min: Lower end of the admissible theta range.
        C: (1 - tau sigma |K|^2)^{-1}, None when undefined.
        C1: (L + delta)(T + 1), None when L or T was not supplied.
    """

    a: float
    omega: float
    theta_min: float
    C: float | None
    C1: float | None

    def to_data(self) -> RateConstantsData:
        """Serialize."""
        return {
            "a": self.a,
            "omega": self.omega,
            "theta_min": self.theta_min,
            "C": self.C,
            "C1": self.C1,
        }


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise InvalidArgumentError(f"{name} must be positive, got {value}")


def _require_T(T: int) -> None:
    if T < 0:
        raise InvalidArgumentError(f"T must be non-negative, got {T}")


def _contraction_margin(sigma: float, tau: float, delta: float, gamma: float) -> float:
    return min(1.0 + 1.5 * delta * sigma, 1.0 + 2.0 * gamma * tau)


def compute_C(sigma: float, tau: float, K_norm: float) -> float:
    """
    Boundedness constant (1 - tau sigma |K|^2)^{-1}.

    Raises:
        InvalidArgumentError: If tau sigma |K|^2 >= 1.
    """
    product = tau * sigma * K_norm**2
    if product >= 1.0:
        raise InvalidArgumentError(f"tau*sigma*|K|^2 = {product:.6g} >= 1, C undefined")
    return 1.0 / (1.0 - product)


def theta_range(sigma: float, tau: float, delta: float, gamma: float) -> tuple[float, float]:
    """
    Admissible extrapolation weights [theta_min, 1].

    Args:
        sigma: Primal step.
        tau: Dual step.
        delta: Strong-convexity modulus of f.
        gamma: Strong-convexity modulus of h*.

    Returns:
        (theta_min, 1.0) with theta_min = (min{3 delta sigma / 2, 2 gamma tau} + 1)^{-1}.

    Raises:
        InvalidArgumentError: If delta or gamma is not positive.
    """
    if not (delta > 0 and gamma > 0):
        raise InvalidArgumentError(
            f"Linear rate needs delta > 0 and gamma > 0, got delta={delta}, gamma={gamma}"
        )
    return 1.0 / (min(1.5 * delta * sigma, 2.0 * gamma * tau) + 1.0), 1.0


def compute_a_omega(
    theta: float,
    sigma: float,
    tau: float,
    delta: float,
    gamma: float,
    K_norm: float,
    L: float | None = None,
    T: int | None = None,
) -> RateConstants:
    """
    Rate constants a and omega (plus theta_min, C and C1).

    Raises:
        InvalidArgumentError: If delta or gamma is not positive.
        InternalInconsistencyError: If a <= omega <= theta fails.
    """
    theta_min, _ = theta_range(sigma, tau, delta, gamma)
    a = 1.0 / _contraction_margin(sigma, tau, delta, gamma)
    sk = sigma * K_norm
    omega = a * (1.0 + theta * sk) / (1.0 + a * sk)

    slack = 1e-12 * max(1.0, abs(theta))
    if not (a <= omega + slack and omega <= theta + slack):
        raise InternalInconsistencyError(
            f"Expected a <= omega <= theta, got a={a:.17g}, omega={omega:.17g}, theta={theta:.17g}"
        )

    product = tau * sigma * K_norm**2
    C = 1.0 / (1.0 - product) if product < 1.0 else None
    C1 = (L + delta) * (T + 1) if L is not None and T is not None else None
    return RateConstants(a=a, omega=omega, theta_min=theta_min, C=C, C1=C1)


def certify_thm1(sigma: float, tau: float, K_norm: float, L: float, T: int) -> StepSizeCertificate:
    """
    Certify steps for the PDHG-extrapolated variant.

    Args:
        sigma: Primal step.
        tau: Dual step.
        K_norm: |K|.
        L: Sum of smoothness constants.
        T: Delay bound.

    Returns:
        Certificate with checks "step_size" and "coupling_product".
    """
    _require_positive(sigma=sigma, tau=tau)
    _require_T(T)
    checks = (
        ConditionCheck(
            name="step_size",
            lhs=math.sqrt(tau * sigma) * K_norm + sigma * L * (T + 1) ** 2,
            rhs=1.0,
            strict=True,
        ),
        ConditionCheck(
            name="coupling_product",
            lhs=tau * sigma * K_norm**2,
            rhs=1.0,
            strict=True,
        ),
    )
    return StepSizeCertificate(
        theorem="thm1",
        sigma=sigma,
        tau=tau,
        theta=None,
        T=T,
        K_norm=K_norm,
        L=L,
        delta=0.0,
        gamma=0.0,
        checks=checks,
    )


def certify_thm2(
    sigma: float,
    tau: float,
    theta: float,
    delta: float,
    gamma: float,
    L: float,
    T: int,
    K_norm: float,
) -> StepSizeCertificate:
    """
    Certify steps and theta for the linear-rate variant.

    Args:
        sigma: Primal step.
        tau: Dual step.
        theta: Extrapolation weight.
        delta: Sum of strong-convexity moduli of f.
        gamma: Modulus of h*.
        L: Sum of smoothness constants.
        T: Delay bound.
        K_norm: |K|.

    Returns:
        Certificate with checks "strong_convexity", "theta_range", "theta_upper",
        "delay_contraction", "coupling_product" and "extrapolation_coupling".
    """
    _require_positive(sigma=sigma, tau=tau, theta=theta)
    _require_T(T)

    strongly_convex = delta > 0 and gamma > 0
    theta_min = theta_range(sigma, tau, delta, gamma)[0] if strongly_convex else math.inf
    checks = (
        ConditionCheck(name="strong_convexity", lhs=0.0, rhs=min(delta, gamma), strict=True),
        ConditionCheck(name="theta_range", lhs=theta_min, rhs=theta, strict=False),
        ConditionCheck(name="theta_upper", lhs=theta, rhs=1.0, strict=False),
        ConditionCheck(
            name="delay_contraction",
            lhs=sigma * (L + delta) * (T + 1) * _contraction_margin(sigma, tau, delta, gamma) ** T
            + sigma * K_norm,
            rhs=1.0,
            strict=False,
        ),
        ConditionCheck(
            name="coupling_product",
            lhs=sigma * tau * K_norm**2,
            rhs=1.0,
            strict=True,
        ),
        ConditionCheck(
            name="extrapolation_coupling",
            lhs=theta * tau * K_norm,
            rhs=1.0,
            strict=False,
        ),
    )
    return StepSizeCertificate(
        theorem="thm2",
        sigma=sigma,
        tau=tau,
        theta=theta,
        T=T,
        K_norm=K_norm,
        L=L,
        delta=delta,
        gamma=gamma,
        checks=checks,
    )


def certify_thm3(
    sigma: float,
    tau: float,
    L: float,
    T: int,
    K_norm: float,
    delta: float,
) -> StepSizeCertificate:
    """
    Certify steps for the Arrow-Hurwicz variant.

    The delay condition is 1 - sigma L (T+1)^2 > 0.

    Args:
        sigma: Primal step.
        tau: Dual step.
        L: Sum of smoothness constants.
        T: Delay bound.
        K_norm: |K|.
        delta: Sum of strong-convexity moduli of f.

    Returns:
        Certificate with checks "strong_convexity", "delay_step" and "coupling_delta".
    """
    _require_positive(sigma=sigma, tau=tau)
    _require_T(T)
    checks = (
        ConditionCheck(name="strong_convexity", lhs=0.0, rhs=delta, strict=True),
        ConditionCheck(name="delay_step", lhs=sigma * L * (T + 1) ** 2, rhs=1.0, strict=True),
        ConditionCheck(name="coupling_delta", lhs=K_norm**2 * tau, rhs=delta, strict=False),
    )
    return StepSizeCertificate(
        theorem="thm3",
        sigma=sigma,
        tau=tau,
        theta=None,
        T=T,
        K_norm=K_norm,
        L=L,
        delta=delta,
        gamma=0.0,
        checks=checks,
    )
