import os

import numpy as np
import pytest

from services.errors import ConfigError
from services.montecarlo_service import McConfig
from services.outage_service import outage_total
from services.scenario import build_scenario, representative_points
from services.sweep_service import (
    check_curve_normalization,
    ec_sweep,
    op_sweep,
    parse_grid,
    parse_records_csv,
    pdf_dump,
    point_config,
    read_curve_csv,
    records_to_csv,
    records_to_table,
    zeta_grid,
)


class TestGrids:
    def test_parse(self):
        assert parse_grid("0:2:4") == [0.0, 2.0, 4.0]
        assert parse_grid("1") == [1.0]
        assert parse_grid("0.55:0.05:0.95") == pytest.approx([0.55 + 0.05 * k for k in range(9)])
        assert len(parse_grid("0:2:40")) == 21

    @pytest.mark.parametrize("spec", ["", "a:b:c", "0:1", "0:0:4", "4:1:0", "0:-1:4"])
    def test_rejects_bad_grids(self, spec):
        with pytest.raises(ConfigError) as exc:
            parse_grid(spec)
        assert exc.value.key == "grid"

    def test_default_zeta_grid_ends_at_the_bound(self):
        s = build_scenario(0.6, 10.0, rate=0.5)
        grid = zeta_grid(s)
        assert len(grid) == 21
        assert grid[0] == 0.0
        np.testing.assert_allclose(grid[-1], 1.6095, atol=1e-3)

    def test_given_zeta_grid_is_clipped_to_the_bound(self):
        s = build_scenario(0.8, 10.0, rate=0.5)
        grid = zeta_grid(s, "0:0.25:2")
        assert grid[:3] == [0.0, 0.25, 0.5]
        assert len(grid) == 4
        np.testing.assert_allclose(grid[-1], 0.6036, atol=1e-3)

    def test_point_seeds(self):
        mc = McConfig(samples=1000, seed=10)
        assert [point_config(mc, k).seed for k in range(3)] == [10, 11, 12]


class TestSweeps:
    def test_outage_columns(self, ten_db):
        records = op_sweep(ten_db, axis="snr", grid="0:10:20", workers=1)
        assert [r.x for r in records] == [0.0, 10.0, 20.0]
        assert list(records[0].columns) == ["po_exact", "po_legacy"]
        np.testing.assert_allclose(records[1].columns["po_exact"], outage_total(ten_db), rtol=1e-14)

    def test_threaded_sweep_matches_sequential(self, ten_db):
        sequential = op_sweep(ten_db, axis="alpha1", workers=1)
        threaded = op_sweep(ten_db, axis="alpha1", workers=4)
        assert [r.columns for r in sequential] == [r.columns for r in threaded]

    def test_capacity_columns_skip_the_axis(self, ten_db):
        records = ec_sweep(ten_db, axis="alpha1", grid="0.6:0.1:0.8", workers=1)
        assert list(records[0].columns) == ["snr_db", "zeta", "ec_exact", "ec_approx", "ec_legacy"]
        assert all(r.columns["snr_db"] == 10.0 for r in records)

    def test_zeta_axis_reaches_certain_legacy_outage(self):
        s = build_scenario(0.6, 10.0, rate=0.5)
        records = op_sweep(s, axis="zeta", workers=1)
        np.testing.assert_allclose(records[-1].columns["po_legacy"], 1.0, atol=1e-9)
        assert len({r.columns["po_exact"] for r in records}) == 1

    def test_mc_columns(self, ten_db):
        mc = McConfig(samples=20_000, seed=5)
        records = op_sweep(ten_db, axis="snr", grid="10", mc=mc)
        assert list(records[0].columns) == ["po_exact", "po_legacy", "po_mc", "mc_stderr"]
        again = op_sweep(ten_db, axis="snr", grid="10", mc=mc)
        assert records[0].columns == again[0].columns

    def test_unknown_axis(self, ten_db):
        with pytest.raises(ConfigError) as exc:
            op_sweep(ten_db, axis="rate")
        assert exc.value.key == "axis"


class TestOutputs:
    def test_csv_round_trip(self, ten_db):
        records = ec_sweep(ten_db, axis="snr", grid="0:5:10", workers=1)
        text = records_to_csv(records, "snr_db")
        assert text.splitlines()[0] == "snr_db,alpha1,zeta,ec_exact,ec_approx,ec_legacy"
        parsed = parse_records_csv(text)
        assert [(r.x, r.columns) for r in parsed] == [(r.x, r.columns) for r in records]

    def test_mixed_columns_rejected(self, ten_db):
        records = op_sweep(ten_db, axis="snr", grid="0:10:10", workers=1)
        records[1].columns["extra"] = 1.0
        with pytest.raises(ValueError):
            records_to_csv(records, "snr_db")

    def test_parses_quoted_csv_from_other_writers(self):
        text = '"snr_db","po_exact"\r\n"0.0","0.25"\r\n"10.0","0.5"\r\n'
        parsed = parse_records_csv(text)
        assert [(r.x, r.columns) for r in parsed] == [(0.0, {"po_exact": 0.25}), (10.0, {"po_exact": 0.5})]

    def test_ragged_row_rejected(self):
        with pytest.raises(ValueError):
            parse_records_csv("snr_db,po_exact\n0.0,0.25,1.0\n")

    def test_table(self, ten_db):
        records = op_sweep(ten_db, axis="snr", grid="0:10:20", workers=1)
        lines = records_to_table(records, "snr_db").splitlines()
        assert len(lines) == 4
        assert lines[0].split() == ["snr_db", "po_exact", "po_legacy"]


class TestPdfDump:
    def test_analytic_curves_are_normalized(self, tmp_path, ten_db):
        x = representative_points(ten_db)[0]
        paths = pdf_dump(ten_db, x, str(tmp_path))
        assert [os.path.basename(p) for p in paths] == [
            "fading_unconditional.csv", "noise_unconditional.csv",
            "fading_success.csv", "noise_success.csv",
            "fading_failure.csv", "noise_failure.csv",
        ]
        for path in paths:
            assert check_curve_normalization(path)

    def test_curve_file_reads_back(self, tmp_path, ten_db):
        x = representative_points(ten_db)[1]
        path = pdf_dump(ten_db, x, str(tmp_path))[2]
        curve = read_curve_csv(path)
        assert curve.branch == "success" and curve.variable == "fading"
        assert curve.params["alpha1"] == 0.8
        assert len(curve.grid) == 2048

    def test_histograms_are_written_with_mc(self, tmp_path, ten_db):
        x = representative_points(ten_db)[0]
        paths = pdf_dump(ten_db, x, str(tmp_path), mc=McConfig(samples=5000, seed=1))
        assert len(paths) == 12
        assert os.path.basename(paths[6]) == "fading_success_mc.csv"
