import math

import numpy as np
import pytest

from services.errors import ScenarioError
from services.numerics import integrate_semi_infinite
from services.scenario import (
    LegacyModel,
    bpsk_constellation,
    build_scenario,
    noise_pdf,
    rayleigh_pdf,
    representative_points,
    scenario_from_config,
)


class TestBuildScenario:
    def test_unit_conversions(self):
        s = build_scenario(0.8, 0.0, 1.0, 1.0)
        assert s.gamma_bar == 1.0
        assert s.sigma_n_sq == 1.0
        assert s.gamma_th == 1.0
        np.testing.assert_allclose(s.alpha2, 0.2, atol=1e-15)

    def test_ten_db_noise_variance(self):
        np.testing.assert_allclose(build_scenario(0.8, 10.0).sigma_n_sq, 0.1, rtol=1e-12)

    @pytest.mark.parametrize("field, kwargs", [
        ("alpha1", {"alpha1": 0.5, "gamma_bar_db": 10.0}),
        ("alpha1", {"alpha1": 1.0, "gamma_bar_db": 10.0}),
        ("omega", {"alpha1": 0.8, "gamma_bar_db": 10.0, "omega": 0.0}),
        ("rate", {"alpha1": 0.8, "gamma_bar_db": 10.0, "rate": -1.0}),
        ("snr_db", {"alpha1": 0.8, "gamma_bar_db": math.inf}),
        ("snr_db", {"alpha1": 0.8, "gamma_bar_db": 4000.0}),
        ("snr_db", {"alpha1": 0.8, "gamma_bar_db": -4000.0}),
    ])
    def test_rejects_invalid_fields(self, field, kwargs):
        with pytest.raises(ScenarioError) as exc:
            build_scenario(**kwargs)
        assert exc.value.field == field

    def test_replace_keeps_other_fields(self):
        s = build_scenario(0.75, 10.0, omega=2.0, rate=0.5)
        t = s.replace(snr_db=20.0)
        assert (t.alpha1, t.omega, t.rate) == (0.75, 2.0, 0.5)
        np.testing.assert_allclose(t.gamma_bar, 100.0, rtol=1e-12)

    def test_from_config_reports_missing_key(self):
        with pytest.raises(ScenarioError) as exc:
            scenario_from_config({"alpha1": 0.8, "rate": 1.0})
        assert exc.value.field == "snr_db"


class TestConstellation:
    def test_points(self):
        s = build_scenario(0.8, 10.0)
        x00, x01, x10, x11 = bpsk_constellation(s)
        np.testing.assert_allclose(x11.value, 1.34164, atol=1e-5)
        np.testing.assert_allclose(x10.value, 0.44721, atol=1e-5)
        assert x11.value + x00.value == 0.0
        assert x10.value + x01.value == 0.0
        assert [p.label for p in (x00, x01, x10, x11)] == ["X00", "X01", "X10", "X11"]
        assert all(p.prob == 0.25 for p in (x00, x01, x10, x11))

    def test_orientation_follows_sign(self):
        s = build_scenario(0.6, 5.0)
        for p in bpsk_constellation(s):
            assert p.orientation == (1 if p.value > 0 else -1)

    def test_representative_points_are_the_positive_pair(self):
        x11, x10 = representative_points(build_scenario(0.9, 0.0))
        assert (x11.label, x10.label) == ("X11", "X10")
        assert x11.value > x10.value > 0


class TestDensities:
    def test_rayleigh_normalization_and_second_moment(self):
        s = build_scenario(0.8, 10.0, omega=1.7)
        mass = integrate_semi_infinite(lambda b: rayleigh_pdf(s, b)).value
        power = integrate_semi_infinite(lambda b: np.asarray(b) ** 2 * rayleigh_pdf(s, b)).value
        np.testing.assert_allclose(mass, 1.0, atol=1e-9)
        np.testing.assert_allclose(power, 1.7, atol=1e-9)

    def test_rayleigh_is_zero_below_origin(self):
        s = build_scenario(0.8, 10.0)
        assert rayleigh_pdf(s, -0.5) == 0.0

    def test_noise_pdf_peak(self):
        s = build_scenario(0.8, 10.0)
        np.testing.assert_allclose(noise_pdf(s, 0.0), 1.0 / math.sqrt(2.0 * math.pi * 0.1), rtol=1e-12)


class TestLegacyModel:
    def test_from_eta(self):
        assert LegacyModel.from_eta(0.5).zeta == 0.25
        with pytest.raises(ScenarioError):
            LegacyModel.from_eta(1.5)

    def test_eta_undefined_above_one(self):
        assert LegacyModel(zeta=0.25).eta == 0.5
        assert LegacyModel(zeta=1.6).eta is None

    def test_negative_zeta_rejected(self):
        with pytest.raises(ValueError):
            LegacyModel(zeta=-0.1)
