"""Tests for run-configuration parsing and validation."""

import json

import pytest

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from pushedfronts.config import (
    ConfigError,
    RunConfig,
    dump_defaults,
    from_dict,
    load_config,
    resolve_weight_rate,
    to_dict,
    validate,
    validate_against_spectrum,
)


class TestDefaults:
    def test_dump_parses_and_round_trips(self):
        text = dump_defaults()
        raw = tomllib.loads(text)
        cfg = from_dict(raw)
        assert to_dict(cfg) == to_dict(RunConfig())

    def test_dump_is_deterministic(self):
        assert dump_defaults() == dump_defaults()

    def test_defaults_valid(self):
        validate(RunConfig())


class TestLoading:
    def test_toml_file(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text('h = 0.1\n[simulation]\nT = 40.0\n')
        cfg = load_config(str(path))
        assert cfg.h == 0.1
        assert cfg.simulation.T == 40.0
        assert cfg.simulation.dx == RunConfig().simulation.dx

    def test_json_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"h": 0.2, "profile": {"tol_c": 0.01}}))
        cfg = load_config(str(path))
        assert cfg.h == 0.2
        assert cfg.profile.tol_c == 0.01

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.toml"
        path.write_text("")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_malformed_rejected(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("not toml at all")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError):
            from_dict({"simulaton": {}})
        with pytest.raises(ConfigError):
            from_dict({"simulation": {"dt_targe": 0.01}})


class TestValidation:
    def test_negative_delay(self):
        with pytest.raises(ConfigError, match="h must be nonnegative"):
            from_dict({"h": -1})

    def test_dt_must_divide_delay(self):
        with pytest.raises(ConfigError, match="divide"):
            from_dict({"h": 0.1, "simulation": {"dt": 0.03}})
        from_dict({"h": 0.1, "simulation": {"dt": 0.025}})  # fine

    def test_empty_domain(self):
        with pytest.raises(ConfigError):
            from_dict({"simulation": {"x_lo": 10.0, "x_hi": -10.0}})

    def test_bad_discard_fraction(self):
        with pytest.raises(ConfigError):
            from_dict({"diagnostics": {"discard_fraction": 1.0}})

    def test_empty_window(self):
        with pytest.raises(ConfigError):
            from_dict({"diagnostics": {"window_lo": 5.0, "window_hi": 5.0}})


class TestSpectralCrossChecks:
    def test_lam_must_sit_in_band(self):
        cfg = RunConfig()
        cfg.diagnostics.lam = 0.9
        with pytest.raises(ConfigError, match="decay band"):
            validate_against_spectrum(cfg, 1.0, 0.45, 0.56)

    def test_domain_must_outrun_front(self):
        cfg = RunConfig()
        cfg.simulation.T = 400.0
        with pytest.raises(ConfigError, match="outrun"):
            validate_against_spectrum(cfg, 1.0, 0.45, 0.56)

    def test_weight_rate_resolution(self):
        cfg = RunConfig()
        cfg.diagnostics.band_fraction = 0.25
        assert resolve_weight_rate(cfg, 0.4, 0.6) == pytest.approx(0.45)
        cfg.diagnostics.lam = 0.5
        assert resolve_weight_rate(cfg, 0.4, 0.6) == 0.5
