import pytest

from services.montecarlo_service import McConfig
from services.scenario import build_scenario, representative_points


@pytest.fixture
def unit_snr():
    """α₁=0.8, γ̄=1 (0 dB), Ω=1, R=1"""
    return build_scenario(0.8, 0.0)


@pytest.fixture
def ten_db():
    return build_scenario(0.8, 10.0)


@pytest.fixture
def x11(ten_db):
    return representative_points(ten_db)[0]


@pytest.fixture
def small_mc():
    return McConfig(samples=200_000, seed=7, chunk=50_000, workers=2)
