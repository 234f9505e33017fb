import pytest

from services.errors import UnknownTargetError
from services.montecarlo_service import McConfig
from services.reproduce_service import (
    OUTAGE_SPOTS,
    TARGETS,
    ReproCheck,
    ReproductionResult,
    get_reproduction_service,
    reproduce,
)

QUICK_MC = McConfig(samples=20_000, seed=9)


class TestResult:
    def test_informational_checks_do_not_gate(self):
        result = ReproductionResult(target="demo", text="body\n", checks=[
            ReproCheck(name="a", passed=True, detail="ok"),
            ReproCheck(name="b", passed=False, detail="soft", gating=False),
        ], notes=["something"])
        assert result.passed
        lines = result.report().splitlines()
        assert lines[0] == "body"
        assert "[PASS] a: ok" in lines
        assert "[INFO] b: soft" in lines
        assert "note: something" in lines
        assert lines[-1] == "demo: PASS"

    def test_gating_failure(self):
        result = ReproductionResult(target="demo", text="", checks=[ReproCheck(name="a", passed=False)])
        assert not result.passed
        assert result.report().splitlines()[-1] == "demo: FAIL"


class TestTargets:
    def test_unknown_target(self):
        with pytest.raises(UnknownTargetError):
            reproduce("fig99")

    def test_singleton(self):
        assert get_reproduction_service() is get_reproduction_service()
        assert len(TARGETS) == 9

    def test_outage_minimum_over_alpha(self):
        result = reproduce("fig8")
        assert result.passed, result.report()
        assert set(result.data["minima"]) == {"1", "3"}
        assert abs(result.data["minima"]["1"] - 0.75) <= 0.05

    @pytest.mark.parametrize("target, bound", [("fig9", 0.6036), ("fig10", 1.6095)])
    def test_zeta_figures_end_at_the_bound(self, target, bound):
        result = reproduce(target)
        assert result.passed, result.report()
        assert result.data["bound"] == pytest.approx(bound, abs=1e-3)

    def test_published_zeta_range_is_flagged(self):
        assert any("6.036" in note for note in reproduce("fig9").notes)
        assert reproduce("fig10").notes == []

    def test_legacy_outage_converges(self):
        result = reproduce("fig7")
        assert result.passed, result.report()
        assert len(result.checks) == 3
        assert len(result.data["curves"]) == 12

    @pytest.mark.slow
    def test_outage_spots(self):
        result = reproduce("fig6", QUICK_MC)
        assert len(result.checks) == 12
        assert len(result.data["spots"]) == 12

    @pytest.mark.slow
    def test_capacity_spots_share_the_outage_spots(self):
        result = reproduce("fig11", QUICK_MC)
        spots = result.data["spots"]
        assert len(spots) == 12
        assert len(result.checks) == 12 + 1
        assert {(p["alpha1"], p["rate"], p["snr_db"]) for p in spots} == set(OUTAGE_SPOTS)

    @pytest.mark.slow
    def test_qpsk_table_layout(self):
        result = reproduce("table2", QUICK_MC)
        assert set(result.data["cells"]) == {"0", "10", "20"}
        for cells in result.data["cells"].values():
            assert len(cells["theory"]) == 4
            assert all(v <= t for v, t in zip(cells["variance"], cells["theory"]))
        assert "(λ1,λ1)" in result.text

    @pytest.mark.slow
    def test_capacity_error_table_layout(self):
        result = reproduce("table3")
        assert len(result.data["summaries"]["approx"]) == 8
        assert len(result.checks) == 8 * 4
        assert "Appr. avg" in result.text

    @pytest.mark.slow
    def test_capacity_crossings(self):
        result = reproduce("fig12")
        assert set(result.data["crossings"]) == {"0.55", "0.8", "0.95"}
        assert len(result.checks) == 1
