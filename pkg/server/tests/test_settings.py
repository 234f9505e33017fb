import pytest

from config.settings import (
    CONFIG_KEYS,
    defaults,
    format_config,
    load_config_file,
    parse_config_text,
    resolve_config,
)
from services.errors import ConfigError


class TestConfigText:
    def test_parse_with_comments(self):
        text = "# scenario\nalpha1 = 0.75\n\nsnr_db=20  # dB\nseed=7\n"
        assert parse_config_text(text) == {"alpha1": 0.75, "snr_db": 20.0, "seed": 7}

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config_text("alpha3=0.1\n")
        assert exc.value.key == "alpha3"

    def test_bad_value(self):
        with pytest.raises(ConfigError) as exc:
            parse_config_text("samples=1e6\n")
        assert exc.value.key == "samples"

    def test_line_without_assignment(self):
        with pytest.raises(ConfigError) as exc:
            parse_config_text("alpha1=0.8\nrate\n")
        assert exc.value.key == "line 2"

    def test_format_parses_back(self):
        values = {"alpha1": 0.8, "snr_db": 12.5, "omega": 1.0, "rate": 0.5,
                  "zeta": 0.01, "seed": 3, "samples": 100000}
        assert parse_config_text(format_config(values)) == values


class TestResolution:
    def test_defaults_cover_every_key(self):
        assert set(defaults()) == set(CONFIG_KEYS)

    def test_precedence(self):
        resolved = resolve_config({"alpha1": 0.7, "rate": 2.0}, {"alpha1": 0.9, "rate": None})
        assert resolved["alpha1"] == 0.9
        assert resolved["rate"] == 2.0
        assert resolved["omega"] == defaults()["omega"]

    def test_file(self, tmp_path):
        path = tmp_path / "noma.conf"
        path.write_text("alpha1=0.6\nzeta=0.02\n", encoding="utf-8")
        assert load_config_file(str(path)) == {"alpha1": 0.6, "zeta": 0.02}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            load_config_file(str(tmp_path / "absent.conf"))
        assert exc.value.key == "config"
