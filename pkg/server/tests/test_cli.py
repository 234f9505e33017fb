import json

import cli
from services.sweep_service import parse_records_csv


class TestCli:
    def test_print_config(self, capsys):
        assert cli.main(["op-sweep", "--alpha1", "0.7", "--seed", "5", "--print-config"]) == cli.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert "alpha1=0.7" in lines
        assert "seed=5" in lines
        assert len(lines) == 7

    def test_config_file_and_flag_precedence(self, tmp_path, capsys):
        conf = tmp_path / "run.conf"
        conf.write_text("alpha1=0.6\nrate=2.0\n", encoding="utf-8")
        assert cli.main(["ec-sweep", "--config", str(conf), "--rate", "0.5", "--print-config"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "alpha1=0.6" in lines
        assert "rate=0.5" in lines

    def test_outage_sweep_is_reproducible(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["op-sweep", "--alpha1", "0.75", "--rate", "1", "--grid", "0:10:20"]
        assert cli.main(argv + ["--out", str(first)]) == 0
        assert cli.main(argv + ["--out", str(second)]) == 0
        text = first.read_text(encoding="utf-8")
        assert text == second.read_text(encoding="utf-8")
        assert text.splitlines()[0] == "snr_db,po_exact,po_legacy"
        assert [r.x for r in parse_records_csv(text)] == [0.0, 10.0, 20.0]

    def test_capacity_table_to_stdout(self, capsys):
        assert cli.main(["ec-sweep", "--axis", "alpha1", "--grid", "0.6:0.1:0.8", "--format", "table"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].split()[0] == "alpha1"
        assert len(lines) == 4

    def test_pdf_dump_then_check(self, tmp_path, capsys):
        out = tmp_path / "curves"
        assert cli.main(["pdf-dump", "--point", "X10", "--out", str(out)]) == 0
        paths = capsys.readouterr().out.split()
        assert len(paths) == 6
        assert cli.main(["check-pdf", *paths]) == cli.EXIT_OK

    def test_check_pdf_flags_an_unnormalized_curve(self, tmp_path):
        path = tmp_path / "bad.csv"
        rows = "\n".join(f"{x / 10!r},2.0" for x in range(11))
        path.write_text(f"# branch=success variable=fading\nbeta,density\n{rows}\n", encoding="utf-8")
        assert cli.main(["check-pdf", str(path)]) == cli.EXIT_ACCEPTANCE

    def test_invalid_scenario(self):
        assert cli.main(["op-sweep", "--alpha1", "0.5"]) == cli.EXIT_CONFIG
        assert cli.main(["ec-sweep", "--zeta", "-1"]) == cli.EXIT_CONFIG

    def test_out_of_range_snr(self):
        for snr_db in ("4000", "-4000"):
            assert cli.main(["op-sweep", "--axis", "alpha1", "--grid", "0.8", "--snr-db", snr_db]) == cli.EXIT_CONFIG

    def test_monte_carlo_manifest(self, tmp_path):
        manifest = tmp_path / "runs.jsonl"
        argv = ["op-sweep", "--mc", "--samples", "2000", "--seed", "4", "--grid", "0:10:20",
                "--out", str(tmp_path / "po.csv"), "--manifest", str(manifest)]
        assert cli.main(argv) == cli.EXIT_OK
        records = [json.loads(line) for line in manifest.read_text(encoding="utf-8").splitlines()]
        assert [r["operation"] for r in records] == ["bpsk-outage"] * 3
        assert [r["seed"] for r in records] == [4, 5, 6]
        assert all(r["samples"] == 2000 and r["wall_time_s"] >= 0.0 for r in records)

    def test_bad_seed_is_named(self, caplog):
        assert cli.main(["op-sweep", "--mc", "--seed", "-1", "--grid", "0:10:10"]) == cli.EXIT_CONFIG
        assert "seed:" in caplog.text

    def test_bad_grid_and_config(self, tmp_path):
        assert cli.main(["op-sweep", "--grid", "0:0:10"]) == cli.EXIT_CONFIG
        conf = tmp_path / "bad.conf"
        conf.write_text("beta=1\n", encoding="utf-8")
        assert cli.main(["op-sweep", "--config", str(conf)]) == cli.EXIT_CONFIG

    def test_unknown_target(self):
        assert cli.main(["reproduce", "fig99"]) == cli.EXIT_CONFIG

    def test_reproduce_writes_report(self, tmp_path):
        out = tmp_path / "fig10.txt"
        assert cli.main(["reproduce", "fig10", "--out", str(out)]) == cli.EXIT_OK
        assert out.read_text(encoding="utf-8").splitlines()[-1] == "fig10: PASS"
