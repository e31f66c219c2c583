"""
Step-size certificates, rate constants and the sequence lemma verifier.

Usage:
    from src.certificates import auto_stepsize, certify_thm1

    certificate = certify_thm1(sigma=0.4, tau=0.4, K_norm=1.0, L=1.0, T=0)
    choice = auto_stepsize(problem, T=4, variant="thm2")
"""

from src.certificates.conditions import (
    ConditionCheck,
    RateConstants,
    StepSizeCertificate,
    certify_thm1,
    certify_thm2,
    certify_thm3,
    compute_a_omega,
    compute_C,
    theta_range,
)
from src.certificates.lemma import (
    LemmaVerdict,
    generate_lemma_sequence,
    lemma1_verify,
    lemma_condition_lhs,
)
from src.certificates.stepsize import (
    StepSizeChoice,
    auto_stepsize,
    auto_stepsize_from_constants,
    certify_variant,
    midpoint_theta,
)

__all__ = [
    # Conditions
    "ConditionCheck",
    "RateConstants",
    "StepSizeCertificate",
    "certify_thm1",
    "certify_thm2",
    "certify_thm3",
    "compute_C",
    "compute_a_omega",
    "theta_range",
    # Lemma
    "LemmaVerdict",
    "generate_lemma_sequence",
    "lemma1_verify",
    "lemma_condition_lhs",
    # Step sizes
    "StepSizeChoice",
    "auto_stepsize",
    "auto_stepsize_from_constants",
    "certify_variant",
    "midpoint_theta",
]
