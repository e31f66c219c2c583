"""
Sampling-based checks of the standing assumptions.

Components are black boxes, so A1/B1 (per component), A2 (prox of h*) and B2
(strong convexity of h*) are checked on random point pairs drawn from a ball.
Violations are reported, never raised.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from src.config import get_validation_config
from src.errors import InvalidArgumentError
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.linear_maps import check_adjoint
from src.types import Vector

logger = logging.getLogger(__name__)


@dataclass
class AssumptionCheck:
    """Outcome of one sampled inequality."""

    name: str
    passed: bool = True
    worst_violation: float = 0.0
    samples: int = 0

    def record(self, violation: float, tolerance: float) -> None:
        """
        Fold one sample into the check.

        Args:
            violation: lhs - rhs of the inequality (positive = violated).
            tolerance: Allowed slack for this sample.

        Side effects:
            Updates worst_violation, passed and samples.
        """
        self.samples += 1
        self.worst_violation = max(self.worst_violation, violation)
        if violation > tolerance:
            self.passed = False


@dataclass
class ValidationReport:
    """Per-assumption verdicts."""

    checks: dict[str, AssumptionCheck] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(check.passed for check in self.checks.values())

    def check(self, name: str) -> AssumptionCheck:
        """Get or create a named check."""
        if name not in self.checks:
            self.checks[name] = AssumptionCheck(name=name)
        return self.checks[name]


def sample_ball(rng: np.random.Generator, dim: int, radius: float) -> Vector:
    """Uniform sample from the Euclidean ball of given radius."""
    direction = rng.standard_normal(dim)
    direction /= max(float(np.linalg.norm(direction)), 1e-300)
    return radius * rng.random() ** (1.0 / dim) * direction


def validate_assumptions(
    problem: SaddleProblem,
    num_samples: int | None = None,
    seed: int | None = None,
    radius: float | None = None,
) -> ValidationReport:
    """
    Check A1, B1 per component and A2, B2 for h* on sampled points.

    Args:
        problem: Problem to validate.
        num_samples: Point pairs per check (default from config).
        seed: Sampling seed (default from config).
        radius: Sampling ball radius (default from config).

    Returns:
        ValidationReport with one entry per check:
        "A1[i]", "B1[i]", "A2.nonexpansive", "A2.optimality", "B2", "K.adjoint".
    """
    cfg = get_validation_config()
    if num_samples is None:
        num_samples = cfg["num_samples"]
    if seed is None:
        seed = cfg["seed"]
    if radius is None:
        radius = cfg["sample_radius"]
    if num_samples < 1:
        raise InvalidArgumentError(f"num_samples must be at least 1, got {num_samples}")
    tolerance = cfg["tolerance"]

    rng = np.random.default_rng(seed)
    report = ValidationReport()

    for i, component in enumerate(problem.components):
        a1 = report.check(f"A1[{i}]")
        b1 = report.check(f"B1[{i}]")
        for _ in range(num_samples):
            x = sample_ball(rng, problem.d1, radius)
            y = sample_ball(rng, problem.d1, radius)
            fx = component.value(x)
            fy = component.value(y)
            linearization_gap = fy - fx - float(np.dot(component.gradient(x), y - x))
            dist_sq = float(np.dot(y - x, y - x))
            scale = tolerance * (1.0 + abs(fx) + abs(fy))

            a1.record(abs(linearization_gap) - 0.5 * component.L * dist_sq, scale)
            b1.record(0.5 * component.delta * dist_sq - linearization_gap, scale)

    _validate_conjugate(problem, num_samples, rng, radius, tolerance, report)

    adjoint = report.check("K.adjoint")
    adjoint_ok, adjoint_worst = check_adjoint(problem.coupling, seed=int(rng.integers(2**31)))
    adjoint.samples = 100
    adjoint.worst_violation = adjoint_worst
    adjoint.passed = adjoint_ok

    failed = [name for name, check in report.checks.items() if not check.passed]
    if failed:
        logger.warning(f"Assumption checks failed: {', '.join(failed)}")
    return report


def _validate_conjugate(
    problem: SaddleProblem,
    num_samples: int,
    rng: np.random.Generator,
    radius: float,
    tolerance: float,
    report: ValidationReport,
) -> None:
    """Prox nonexpansiveness/optimality (A2) and gamma-strong convexity (B2)."""
    term = problem.conjugate
    nonexpansive = report.check("A2.nonexpansive")
    optimality = report.check("A2.optimality")
    b2 = report.check("B2")

    for _ in range(num_samples):
        tau = float(10.0 ** rng.uniform(-2, 1))
        u = sample_ball(rng, problem.d2, radius)
        v = sample_ball(rng, problem.d2, radius)
        pu = term.prox(tau, u)
        pv = term.prox(tau, v)
        nonexpansive.record(
            float(np.linalg.norm(pu - pv)) - float(np.linalg.norm(u - v)),
            tolerance * (1.0 + float(np.linalg.norm(u - v))),
        )

        # Perturbations kept inside the domain by projecting through the prox
        w = term.prox(1.0, pv + sample_ball(rng, problem.d2, 1.0))
        objective_at_prox = term.value(pv) + float(np.dot(pv - v, pv - v)) / (2 * tau)
        objective_at_w = term.value(w) + float(np.dot(w - v, w - v)) / (2 * tau)
        optimality.record(
            objective_at_prox - objective_at_w,
            tolerance * (1.0 + abs(objective_at_prox)),
        )

        # B2 on (a, b, subgradient at b) with a, b in the domain
        a = term.prox(1.0, u)
        b = pv
        ha = term.value(a)
        hb = term.value(b)
        lower = hb + float(np.dot(term.subgradient(b), a - b)) + 0.5 * term.gamma * float(
            np.dot(a - b, a - b)
        )
        b2.record(lower - ha, tolerance * (1.0 + abs(ha) + abs(hb)))
