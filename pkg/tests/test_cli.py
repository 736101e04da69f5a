"""Tests for the command-line front end: exit codes, artifacts,
round-trip readers, and determinism."""

import json

import numpy as np
import pytest

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from pushedfronts.cli import main, read_csv, read_json, write_csv, write_json


class TestSpectrumCommand:
    def test_reference_speeds(self, tmp_path, capsys):
        out = str(tmp_path / "hr")
        assert main(["spectrum", "--preset", "hadeler_rothe", "--h", "0",
                     "--out-dir", out]) == 0
        payload = read_json(str(tmp_path / "hr" / "spectrum.json"))
        assert payload["c_linear"] == pytest.approx(1.0, abs=1e-12)
        assert payload["rate_double"] == pytest.approx(0.5, abs=1e-12)

        out2 = str(tmp_path / "kpp")
        assert main(["spectrum", "--preset", "kpp", "--h", "0",
                     "--out-dir", out2]) == 0
        payload = read_json(str(tmp_path / "kpp" / "spectrum.json"))
        assert payload["c_linear"] == pytest.approx(2.0, abs=1e-12)

    def test_negative_delay_exits_2(self, tmp_path, capsys):
        code = main(["spectrum", "--preset", "hadeler_rothe", "--h", "-1",
                     "--out-dir", str(tmp_path)])
        assert code == 2
        assert "h must be nonnegative" in capsys.readouterr().err

    def test_deterministic_output(self, tmp_path):
        for sub in ("a", "b"):
            assert main(["spectrum", "--preset", "hadeler_rothe", "--h", "0.1",
                         "--out-dir", str(tmp_path / sub)]) == 0
        a = (tmp_path / "a" / "spectrum.json").read_bytes()
        b = (tmp_path / "b" / "spectrum.json").read_bytes()
        assert a == b


class TestConfigPlumbing:
    def test_dump_defaults(self, capsys):
        assert main(["simulate", "--dump-defaults"]) == 0
        text = capsys.readouterr().out
        raw = tomllib.loads(text)
        assert raw["simulation"]["T"] == 120.0

    def test_empty_config_exits_2(self, tmp_path, capsys):
        path = tmp_path / "empty.toml"
        path.write_text("")
        assert main(["simulate", "--config", str(path)]) == 2

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.toml"
        path.write_text("] nonsense [")
        assert main(["simulate", "--config", str(path)]) == 2

    def test_unknown_key_exits_2(self, tmp_path, capsys):
        path = tmp_path / "typo.toml"
        path.write_text("[simulation]\ndt_targe = 0.01\n")
        assert main(["simulate", "--config", str(path)]) == 2


class TestRoundTrip:
    def test_csv(self, tmp_path):
        path = str(tmp_path / "t.csv")
        rows = [(0.0, 1.5, float("nan")), (0.5, -2.25, 3.125)]
        write_csv(path, ["t", "a", "b"], rows)
        back = read_csv(path)
        np.testing.assert_allclose(back["t"], [0.0, 0.5])
        np.testing.assert_allclose(back["a"], [1.5, -2.25])
        assert np.isnan(back["b"][0]) and back["b"][1] == 3.125

    def test_json(self, tmp_path):
        path = str(tmp_path / "t.json")
        payload = {"z": [1.0, 2.0], "a": {"b": 3.5}}
        write_json(path, payload)
        assert read_json(path) == payload


class TestSimulateCommand:
    def test_small_run_artifacts(self, tmp_path):
        cfgfile = tmp_path / "run.toml"
        cfgfile.write_text(
            "\n".join(
                [
                    'out_dir = "%s"' % (tmp_path / "out"),
                    "[simulation]",
                    "x_lo = -30.0",
                    "x_hi = 30.0",
                    "T = 2.0",
                    "dt_target = 0.01",
                    "[diagnostics]",
                    "every = 0.5",
                ]
            )
        )
        assert main(["simulate", "--config", str(cfgfile)]) == 0
        ts = read_csv(str(tmp_path / "out" / "timeseries.csv"))
        assert set(ts) == {"t", "origin", "half_level_left", "half_level_right"}
        assert ts["t"].size == 5
        state = read_csv(str(tmp_path / "out" / "final_state.csv"))
        assert state["x"].size == 601
        assert np.all(state["u"] >= 0.0)
        meta = read_json(str(tmp_path / "out" / "simulate.json"))
        assert meta["datum"] == "front_like"


@pytest.mark.slow
class TestVerifyCommand:
    def test_origin_approach_passes(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.toml"
        cfgfile.write_text(
            "\n".join(
                [
                    'out_dir = "%s"' % (tmp_path / "out"),
                    "[profile]",
                    "tol_c = 0.02",
                    "[simulation]",
                    'datum = "heaviside"',
                    "x_lo = -80.0",
                    "x_hi = 80.0",
                    "T = 40.0",
                    "dt_target = 0.002",
                    "[simulation.datum_params]",
                    "x0 = 10.0",
                    "mu = 1.0",
                    "[diagnostics]",
                    "every = 1.0",
                ]
            )
        )
        code = main(["verify", "origin-approach", "--config", str(cfgfile)])
        out = capsys.readouterr().out
        assert code == 0, out
        assert "PASS approach_rate_positive" in out
        payload = read_json(str(tmp_path / "out" / "verify_origin-approach.json"))
        assert payload["fits"]["nu"] > 0.0
        assert payload["checks"][0]["passed"] is True

    def test_coarse_global_front_fails_honestly(self, tmp_path, capsys):
        # at a coarse time step the fitted phase ramps more than the
        # Cauchy tolerance; the scenario must report FAIL and exit 1
        cfgfile = tmp_path / "run.toml"
        cfgfile.write_text(
            "\n".join(
                [
                    'out_dir = "%s"' % (tmp_path / "out"),
                    "[profile]",
                    "tol_c = 0.02",
                    "[simulation]",
                    "x_lo = -65.0",
                    "x_hi = 65.0",
                    "T = 30.0",
                    "dt_target = 0.002",
                    "[diagnostics]",
                    "every = 1.0",
                ]
            )
        )
        code = main(["verify", "global-front", "--config", str(cfgfile)])
        out = capsys.readouterr().out
        assert code == 1
        assert "FAIL" in out
        assert "scenario FAILED on:" in out
