import math

import numpy as np
import pytest

from services.errors import DomainError
from services.numerics import (
    chiani_q_approx,
    erf,
    exp_integral_e1,
    gauss_laguerre_rule,
    integrate_2d,
    integrate_adaptive,
    integrate_semi_infinite,
    q_function,
    scaled_exp_integral_e1,
    std_normal_cdf,
)


class TestGaussianTails:
    def test_cdf_reference_values(self):
        assert std_normal_cdf(0.0) == 0.5
        assert abs(std_normal_cdf(40.0) - 1.0) < 1e-15
        np.testing.assert_allclose(std_normal_cdf(1.0), 0.841345, atol=1e-6)

    def test_q_reference_values(self):
        assert q_function(0.0) == 0.5
        np.testing.assert_allclose(q_function(2.9261), 1.716e-3, rtol=1e-3)

    def test_symmetry_on_random_points(self):
        x = np.random.default_rng(1).uniform(-8.0, 8.0, 10_000)
        np.testing.assert_allclose(std_normal_cdf(x) + std_normal_cdf(-x), 1.0, atol=1e-12)
        np.testing.assert_allclose(q_function(x), std_normal_cdf(-x), atol=1e-12)
        np.testing.assert_allclose(q_function(x) + std_normal_cdf(x), 1.0, atol=1e-12)

    def test_q_keeps_relative_accuracy_in_the_tail(self):
        # Q(10) ≈ 7.62e-24, far below what 1 − Φ can represent
        np.testing.assert_allclose(q_function(10.0), 7.619853024160527e-24, rtol=1e-10)

    def test_erf(self):
        assert erf(0.0) == 0.0
        np.testing.assert_allclose(erf(1.0), 0.8427007929497149, atol=1e-12)
        np.testing.assert_allclose(erf(2.18094), 0.99798, atol=3e-5)
        x = np.linspace(0.1, 4.0, 25)
        np.testing.assert_allclose(erf(-x), -erf(x), atol=1e-15)


class TestExponentialIntegral:
    def test_reference_value(self):
        np.testing.assert_allclose(exp_integral_e1(1.0), 0.2193839, atol=1e-6)

    def test_asymptotics(self):
        assert exp_integral_e1(50.0) < math.exp(-50.0) / 50.0 * 1.03
        x = 500.0
        np.testing.assert_allclose(x * scaled_exp_integral_e1(x), 1.0, rtol=3e-3)

    def test_scaled_form_is_continuous_at_the_switch(self):
        below = scaled_exp_integral_e1(50.0)
        above = scaled_exp_integral_e1(50.0 + 1e-9)
        np.testing.assert_allclose(below, above, rtol=1e-9)

    def test_rejects_nonpositive_argument(self):
        with pytest.raises(DomainError):
            exp_integral_e1(0.0)
        with pytest.raises(DomainError):
            scaled_exp_integral_e1(-1.0)


class TestChiani:
    def test_values(self):
        np.testing.assert_allclose(chiani_q_approx(0.0), 1.0 / 3.0, atol=1e-15)
        expected = math.exp(-0.5) / 12.0 + math.exp(-2.0 / 3.0) / 4.0
        np.testing.assert_allclose(chiani_q_approx(1.0), expected, atol=1e-15)
        np.testing.assert_allclose(chiani_q_approx(1.0), 0.178899, atol=2e-6)

    def test_monotone_decreasing(self):
        values = chiani_q_approx(np.linspace(0.0, 6.0, 200))
        assert np.all(np.diff(values) < 0)

    def test_upper_bounds_q_away_from_zero(self):
        x = np.linspace(1.0, 6.0, 200)
        assert np.all(chiani_q_approx(x) >= q_function(x))

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            chiani_q_approx(-0.1)


class TestQuadrature:
    def test_semi_infinite_examples(self):
        assert abs(integrate_semi_infinite(lambda t: np.exp(-t)).value - 1.0) < 1e-10
        assert abs(integrate_semi_infinite(lambda t: t * np.exp(-t * t)).value - 0.5) < 1e-10
        expected = math.e * 0.21938393439552062 / math.log(2.0)
        value = integrate_semi_infinite(lambda t: np.log2(1.0 + t) * np.exp(-t)).value
        assert abs(value - expected) < 1e-8

    def test_adaptive_examples(self):
        assert abs(integrate_adaptive(lambda x: 1.0, 0.0, 1.0).value - 1.0) < 1e-12
        assert abs(integrate_adaptive(lambda x: x * x, 0.0, 1.0).value - 1.0 / 3.0) < 1e-12

    def test_outage_kernel_example(self):
        f = lambda x: 2.0 * x * float(std_normal_cdf(4.2426 * x)) * math.exp(-x * x)
        assert abs(integrate_adaptive(f, 0.0, 0.68969).value - 0.35297) < 1e-4

    def test_empty_interval_rejected(self):
        with pytest.raises(DomainError):
            integrate_adaptive(lambda x: x, 1.0, 1.0)

    def test_laguerre_rule(self):
        rule = gauss_laguerre_rule(16)
        assert rule.kind == "gauss-laguerre"
        np.testing.assert_allclose(rule.apply(lambda t: t ** 3), 6.0, rtol=1e-12)
        with pytest.raises(DomainError):
            gauss_laguerre_rule(0)

    def test_iterated_2d(self):
        # triangle 0 ≤ y ≤ x ≤ 1
        value = integrate_2d(lambda x, y: 1.0, (0.0, 1.0), lambda x: (0.0, x)).value
        np.testing.assert_allclose(value, 0.5, atol=1e-10)
