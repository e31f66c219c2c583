"""Unit tests for step-size conditions and rate constants."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.certificates import (
    certify_thm1,
    certify_thm2,
    certify_thm3,
    compute_a_omega,
    compute_C,
    theta_range,
)
from src.errors import InvalidArgumentError

positive = st.floats(min_value=1e-3, max_value=10.0, allow_nan=False, allow_infinity=False)


class TestCertifyThm1:
    """PDHG-extrapolated variant."""

    def test_worked_example(self):
        """sigma = tau = 0.4, |K| = L = 1, T = 0 passes with slack 0.2."""
        certificate = certify_thm1(sigma=0.4, tau=0.4, K_norm=1.0, L=1.0, T=0)
        step = certificate.check("step_size")
        assert step.lhs == pytest.approx(0.8)
        assert step.slack == pytest.approx(0.2)
        assert step.strict
        assert certificate.check("coupling_product").lhs == pytest.approx(0.16)
        assert certificate.passed
        assert certificate.min_slack == pytest.approx(0.2)

    def test_delay_penalty(self):
        """(T+1)^2 makes the same steps fail for T = 1."""
        certificate = certify_thm1(sigma=0.4, tau=0.4, K_norm=1.0, L=1.0, T=1)
        assert not certificate.passed
        assert certificate.failed() == ["step_size"]

    def test_boundary_is_strict(self):
        """lhs == rhs fails a strict check."""
        certificate = certify_thm1(sigma=0.5, tau=0.5, K_norm=1.0, L=1.0, T=0)
        assert certificate.check("step_size").slack == pytest.approx(0.0)
        assert not certificate.check("step_size").satisfied

    @pytest.mark.parametrize("sigma,tau,T", [(0.0, 0.1, 0), (0.1, -1.0, 0), (0.1, 0.1, -1)])
    def test_invalid_inputs(self, sigma, tau, T):
        """Non-positive steps or negative T raise."""
        with pytest.raises(InvalidArgumentError):
            certify_thm1(sigma=sigma, tau=tau, K_norm=1.0, L=1.0, T=T)

    def test_serialization(self):
        """to_data carries every check with its verdict."""
        data = certify_thm1(sigma=0.4, tau=0.4, K_norm=1.0, L=1.0, T=0).to_data()
        assert data["theorem"] == "thm1"
        assert data["passed"] is True
        assert [check["name"] for check in data["checks"]] == ["step_size", "coupling_product"]

    def test_unknown_check(self):
        """Lookup of a missing name raises KeyError."""
        with pytest.raises(KeyError):
            certify_thm1(sigma=0.1, tau=0.1, K_norm=1.0, L=1.0, T=0).check("theta_range")


class TestCertifyThm2:
    """Linear-rate variant."""

    def test_theta_below_range(self):
        """theta < theta_min fails only theta_range."""
        certificate = certify_thm2(
            sigma=0.1, tau=0.1, theta=0.5, delta=1.0, gamma=1.0, L=1.0, T=0, K_norm=1.0
        )
        assert certificate.check("theta_range").lhs == pytest.approx(1.0 / 1.15)
        assert certificate.failed() == ["theta_range"]

    def test_admissible_parameters(self):
        """theta = 1 with small steps passes."""
        certificate = certify_thm2(
            sigma=0.1, tau=0.1, theta=1.0, delta=1.0, gamma=1.0, L=1.0, T=0, K_norm=1.0
        )
        assert certificate.passed

    def test_delay_contraction_grows_with_T(self):
        """sigma (L + delta)(T+1) a^{-T} increases with T."""
        lhs = [
            certify_thm2(
                sigma=0.1, tau=0.1, theta=1.0, delta=1.0, gamma=1.0, L=1.0, T=T, K_norm=1.0
            )
            .check("delay_contraction")
            .lhs
            for T in range(4)
        ]
        assert lhs == sorted(lhs)
        assert lhs[0] == pytest.approx(0.1 * 2.0 + 0.1)

    def test_not_strongly_convex(self):
        """delta = 0 fails strong_convexity and the theta range."""
        certificate = certify_thm2(
            sigma=0.1, tau=0.1, theta=1.0, delta=0.0, gamma=1.0, L=1.0, T=0, K_norm=1.0
        )
        assert "strong_convexity" in certificate.failed()
        assert certificate.check("theta_range").lhs == math.inf


class TestCertifyThm3:
    """Arrow-Hurwicz variant."""

    def test_coupling_delta_fails(self):
        """|K|^2 tau above delta fails."""
        certificate = certify_thm3(sigma=0.1, tau=0.5, L=1.0, T=0, K_norm=2.0, delta=1.0)
        assert certificate.check("coupling_delta").lhs == pytest.approx(2.0)
        assert certificate.failed() == ["coupling_delta"]

    def test_coupling_delta_boundary_passes(self):
        """coupling_delta is non-strict."""
        certificate = certify_thm3(sigma=0.1, tau=0.25, L=1.0, T=0, K_norm=2.0, delta=1.0)
        assert certificate.passed

    def test_delay_step(self):
        """sigma L (T+1)^2 < 1."""
        certificate = certify_thm3(sigma=0.1, tau=0.1, L=1.0, T=3, K_norm=1.0, delta=1.0)
        assert certificate.check("delay_step").lhs == pytest.approx(1.6)
        assert not certificate.passed


class TestRateConstants:
    """compute_C, theta_range and compute_a_omega."""

    def test_compute_C(self):
        """C = 1 / (1 - tau sigma |K|^2)."""
        assert compute_C(0.5, 0.5, 1.0) == pytest.approx(4.0 / 3.0)

    def test_compute_C_undefined(self):
        """tau sigma |K|^2 >= 1 raises."""
        with pytest.raises(InvalidArgumentError):
            compute_C(1.0, 1.0, 1.0)

    def test_theta_range(self):
        """theta_min = 1 / (min(1.5 delta sigma, 2 gamma tau) + 1)."""
        theta_min, theta_max = theta_range(0.2, 0.1, 1.0, 2.0)
        assert theta_min == pytest.approx(1.0 / 1.3)
        assert theta_max == 1.0

    def test_theta_range_needs_strong_convexity(self):
        """delta or gamma zero raises."""
        with pytest.raises(InvalidArgumentError):
            theta_range(0.1, 0.1, 0.0, 1.0)

    def test_constants(self):
        """a, omega, C and C1 on a hand-computed instance."""
        constants = compute_a_omega(
            theta=1.0, sigma=0.1, tau=0.1, delta=1.0, gamma=1.0, K_norm=1.0, L=2.0, T=1
        )
        a = 1.0 / 1.15
        assert constants.a == pytest.approx(a)
        assert constants.omega == pytest.approx(a * 1.1 / (1.0 + 0.1 * a))
        assert constants.theta_min == pytest.approx(a)
        assert constants.C == pytest.approx(1.0 / 0.99)
        assert constants.C1 == pytest.approx(6.0)

    def test_C1_absent_without_L(self):
        """C1 needs L and T."""
        constants = compute_a_omega(
            theta=1.0, sigma=0.1, tau=0.1, delta=1.0, gamma=1.0, K_norm=1.0
        )
        assert constants.C1 is None

    @given(
        sigma=positive,
        tau=positive,
        delta=positive,
        gamma=positive,
        K_norm=positive,
        u=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_ordering(self, sigma, tau, delta, gamma, K_norm, u):
        """a <= omega <= theta for every admissible theta."""
        theta_min, _ = theta_range(sigma, tau, delta, gamma)
        theta = theta_min + u * (1.0 - theta_min)
        constants = compute_a_omega(theta, sigma, tau, delta, gamma, K_norm)
        assert constants.a <= constants.omega * (1 + 1e-12)
        assert constants.omega <= theta * (1 + 1e-12)
