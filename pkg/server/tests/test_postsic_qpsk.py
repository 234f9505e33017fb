import math

import numpy as np
import pytest

from services.postsic_qpsk import (
    ComplexNoiseSample,
    equal_rail_success_prob,
    psi_kernel,
    psi_kernel_quadrature,
    qpsk_joint_noise_pdf,
    qpsk_noise_variance,
    qpsk_outage_given_success,
    qpsk_pdf_beta_success,
    qpsk_pdf_noise_imag,
    qpsk_pdf_noise_real,
    qpsk_rail_second_moments,
    qpsk_second_moment_quadrature,
    qpsk_second_moment_w,
    qpsk_success_prob,
    qpsk_success_prob_exact,
    qpsk_success_prob_given_beta,
    qpsk_summary,
    quadrant_levels,
    rail_level,
    table_rails,
    truncation_depth,
)
from services.numerics import integrate_adaptive, q_function
from services.scenario import build_scenario


class TestRails:
    def test_levels(self, ten_db):
        np.testing.assert_allclose(rail_level(ten_db, 1), (math.sqrt(0.8) + math.sqrt(0.2)) / math.sqrt(2.0))
        np.testing.assert_allclose(rail_level(ten_db, -1), (math.sqrt(0.8) - math.sqrt(0.2)) / math.sqrt(2.0))
        with pytest.raises(ValueError):
            rail_level(ten_db, 0)

    def test_table_order(self, ten_db):
        rails = table_rails(ten_db)
        assert [(q.i, q.j) for q in rails] == [(1, 1), (-1, -1), (1, -1), (-1, 1)]
        assert [q.equal_rails for q in rails] == [True, True, False, False]
        assert rails[2].swapped() == rails[3]


class TestSuccessProbability:
    def test_given_beta_limits(self, ten_db):
        for q in table_rails(ten_db):
            assert qpsk_success_prob_given_beta(q, 0.0) == 0.25
            np.testing.assert_allclose(qpsk_success_prob_given_beta(q, 50.0), 1.0, atol=1e-12)

    def test_separable(self, ten_db):
        q = table_rails(ten_db)[2]
        beta = np.linspace(0.0, 3.0, 31)
        np.testing.assert_allclose(qpsk_success_prob_given_beta(q, beta),
                                   (1.0 - q_function(beta * q.chi_i)) * (1.0 - q_function(beta * q.chi_j)))

    @pytest.mark.parametrize("snr_db", [0.0, 10.0, 20.0])
    def test_equal_rail_closed_form_matches_quadrature(self, snr_db):
        s = build_scenario(0.8, snr_db)
        for q in table_rails(s)[:2]:
            np.testing.assert_allclose(equal_rail_success_prob(q.mu_i), qpsk_success_prob_exact(s, q),
                                       atol=1e-7)

    def test_equal_rail_limits(self):
        assert equal_rail_success_prob(0.0) == 0.25
        np.testing.assert_allclose(equal_rail_success_prob(1.0 - 1e-12), 1.0, atol=1e-9)

    def test_rail_average_is_close_on_mixed_rails(self, ten_db):
        q = table_rails(ten_db)[2]
        exact = qpsk_success_prob_exact(ten_db, q)
        assert abs(qpsk_success_prob(ten_db, q) - exact) < 0.05

    def test_fading_density_normalized(self, ten_db):
        for q in table_rails(ten_db):
            mass = integrate_adaptive(lambda b: qpsk_pdf_beta_success(ten_db, q, b), 0.0, 8.0,
                                      points=[0.5, 1.0, 2.0]).value
            np.testing.assert_allclose(mass, 1.0, atol=1e-7)


class TestPsiKernel:
    def test_reference_value(self):
        expected = 0.25 - (math.pi / 4.0 + 0.5) / (2.0 * math.pi)
        np.testing.assert_allclose(psi_kernel(1.0, 1.0), expected, rtol=1e-14)
        np.testing.assert_allclose(psi_kernel(1.0, 1.0), 0.0454225, atol=1e-7)

    def test_limits(self):
        # b → 0: half the Gaussian second moment, times Φ(0) = 1/2
        np.testing.assert_allclose(psi_kernel(2.0, 0.0), 4.0 / 4.0, rtol=1e-14)
        assert psi_kernel(1.0, 1e9) < 1e-8
        np.testing.assert_allclose(psi_kernel(1.0, -1e9), 0.5, atol=1e-8)

    @pytest.mark.parametrize("a, b", [(0.1, 3.0), (0.5, -2.0), (1.0, 1.0), (2.5, 0.4), (0.3, -15.0)])
    def test_matches_quadrature(self, a, b):
        np.testing.assert_allclose(psi_kernel(a, b), psi_kernel_quadrature(a, b), atol=1e-9)

    def test_rejects_nonpositive_scale(self):
        with pytest.raises(ValueError):
            psi_kernel(0.0, 1.0)


class TestNoise:
    def test_truncation_depth(self, ten_db):
        q = table_rails(ten_db)[0]
        assert truncation_depth(q, ComplexNoiseSample(re=0.1, im=0.2)) == 0.0
        np.testing.assert_allclose(truncation_depth(q, ComplexNoiseSample(re=-0.3, im=0.1)), 0.3 / q.lambda_i)

    def test_joint_density_in_the_open_quadrant(self, ten_db):
        q = table_rails(ten_db)[0]
        w = ComplexNoiseSample(re=0.2, im=0.3)
        p_s = equal_rail_success_prob(q.mu_i)
        plain = math.exp(-(0.04 + 0.09) / (2.0 * ten_db.sigma_n_sq)) / (2.0 * math.pi * ten_db.sigma_n_sq)
        np.testing.assert_allclose(qpsk_joint_noise_pdf(ten_db, q, w), plain / p_s, rtol=1e-12)

    def test_equal_rails_have_symmetric_moments(self, ten_db):
        for q in table_rails(ten_db)[:2]:
            m2_r, m2_i = qpsk_rail_second_moments(ten_db, q)
            np.testing.assert_allclose(m2_r, m2_i, rtol=1e-14)
            np.testing.assert_allclose(qpsk_second_moment_w(ten_db, q), 2.0 * m2_r, rtol=1e-14)

    def test_mixed_rails_sum_both_rails(self, ten_db):
        q = table_rails(ten_db)[2]
        m2_r, m2_i = qpsk_rail_second_moments(ten_db, q)
        assert m2_r != pytest.approx(m2_i, rel=1e-6)
        np.testing.assert_allclose(qpsk_second_moment_w(ten_db, q), m2_r + m2_i, rtol=1e-14)

    def test_conditioning_lowers_power(self):
        for snr_db in (0.0, 10.0, 20.0):
            s = build_scenario(0.8, snr_db)
            for q in table_rails(s):
                assert qpsk_second_moment_w(s, q) < 2.0 * s.sigma_n_sq
                assert qpsk_noise_variance(s, q) <= qpsk_second_moment_w(s, q)

    def test_summary_keys(self, ten_db):
        summary = qpsk_summary(ten_db, table_rails(ten_db)[0])
        assert set(summary) == {"p_success", "p_success_formula", "m2_real", "m2_imag", "m2_total",
                                "variance", "noise_power"}
        np.testing.assert_allclose(summary["noise_power"], 0.2, rtol=1e-12)

    @pytest.mark.slow
    def test_second_moment_matches_plane_quadrature(self, ten_db):
        for q in table_rails(ten_db):
            np.testing.assert_allclose(qpsk_second_moment_w(ten_db, q),
                                       qpsk_second_moment_quadrature(ten_db, q), rtol=1e-4)


class TestQuadrantLevels:
    def test_mu_and_chi(self, ten_db):
        q = quadrant_levels(ten_db, 1, -1)
        np.testing.assert_allclose(q.chi_i, q.lambda_i / ten_db.sigma_n)
        snr = q.lambda_j ** 2 * ten_db.gamma_bar
        np.testing.assert_allclose(q.mu_j, math.sqrt(snr / (2.0 + snr)))


class TestMarginalsAndOutage:
    def test_rail_marginals_are_normalized(self, ten_db):
        span = 8.0 * ten_db.sigma_n
        for q in table_rails(ten_db)[::2]:
            for marginal in (qpsk_pdf_noise_real, qpsk_pdf_noise_imag):
                f = lambda w: marginal(ten_db, q, w)
                mass = integrate_adaptive(f, -span, 0.0).value + integrate_adaptive(f, 0.0, span).value
                np.testing.assert_allclose(mass, 1.0, atol=1e-5)

    def test_positive_half_line_is_the_scaled_gaussian(self, ten_db):
        q = table_rails(ten_db)[0]
        w = 0.1
        plain = math.exp(-w * w / (2.0 * ten_db.sigma_n_sq)) / math.sqrt(2.0 * math.pi * ten_db.sigma_n_sq)
        expected = plain * (1.0 + q.mu_j) / (2.0 * qpsk_success_prob_exact(ten_db, q))
        np.testing.assert_allclose(qpsk_pdf_noise_real(ten_db, q, w), expected, rtol=1e-6)

    def test_outage_limits(self):
        s = build_scenario(0.8, 10.0, rate=1e-9)
        assert qpsk_outage_given_success(s, table_rails(s)[0]) < 1e-6
        s = build_scenario(0.8, 80.0)
        assert qpsk_outage_given_success(s, table_rails(s)[0]) < 1e-4

    def test_outage_is_a_probability(self, ten_db):
        values = [qpsk_outage_given_success(ten_db, q) for q in table_rails(ten_db)]
        assert all(0.0 < v < 1.0 for v in values)

    @pytest.mark.parametrize("i,j,expected", [
        (1, 1, 0.5641442),
        (-1, -1, 0.4138833),
        (1, -1, 0.4907857),
        (-1, 1, 0.4907857),
    ])
    def test_outage_reference_values(self, ten_db, i, j, expected):
        q = quadrant_levels(ten_db, i, j)
        np.testing.assert_allclose(qpsk_outage_given_success(ten_db, q), expected, atol=1e-6)


class TestRailDependence:
    def test_joint_density_is_not_the_product_of_marginals(self, unit_snr):
        # 성공 분기에서 W_R, W_I 는 β 를 공유하므로 독립이 아님
        q = table_rails(unit_snr)[0]
        w = ComplexNoiseSample(re=-unit_snr.sigma_n, im=-unit_snr.sigma_n)
        joint = qpsk_joint_noise_pdf(unit_snr, q, w)
        product = qpsk_pdf_noise_real(unit_snr, q, w.re) * qpsk_pdf_noise_imag(unit_snr, q, w.im)
        np.testing.assert_allclose(joint, 0.031154, rtol=1e-3)
        np.testing.assert_allclose(product, 0.013511, rtol=1e-3)
        assert joint > 2.0 * product
