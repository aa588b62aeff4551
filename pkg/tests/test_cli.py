"""Command-line front end: config validation, outputs, exit codes."""

import json

import pytest

from swelldiff.cli import config_from_mapping, main

QUICK_YAML = """\
beta1: 1.3
beta2: 0.018
chi: 0.425
mu_p_star: 0.1
mu_G_star: 0.1
gamma_star: 20.0
N: 31
dt_star: 0.025
t_final: 0.1
"""


def write_config(tmp_path, text=QUICK_YAML, name="run.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestConfigParsing:
    def test_minimal_mapping(self):
        import yaml
        cfg = config_from_mapping(yaml.safe_load(QUICK_YAML))
        assert cfg.nd.beta1 == 1.3
        assert cfg.n_points == 31
        assert cfg.tolerance == 1e-4          # default
        assert cfg.schedule.segments == ((0.1, 0.0),)

    def test_missing_key_names_field(self):
        import yaml
        data = yaml.safe_load(QUICK_YAML)
        del data["beta2"]
        with pytest.raises(Exception, match="beta2"):
            config_from_mapping(data)

    def test_unknown_key_rejected(self):
        import yaml
        data = yaml.safe_load(QUICK_YAML)
        data["chii"] = 0.4
        with pytest.raises(Exception, match="chii"):
            config_from_mapping(data)

    def test_schedule_parsing(self):
        import yaml
        data = yaml.safe_load(QUICK_YAML)
        data["schedule"] = [[0.5, 0.0], [1.0, 1.0]]
        cfg = config_from_mapping(data)
        assert cfg.schedule.segments == ((0.5, 0.0), (1.0, 1.0))
        data["schedule"] = [[0.5, 0.0], [0.4, 1.0]]
        with pytest.raises(Exception, match="schedule"):
            config_from_mapping(data)

    def test_boolean_is_not_a_number(self):
        import yaml
        data = yaml.safe_load(QUICK_YAML)
        data["beta2"] = True
        with pytest.raises(Exception, match="beta2"):
            config_from_mapping(data)


class TestRunCommand:
    def test_writes_outputs(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["run", "--config", cfg, "--out", str(out)]) == 0
        fields = (out / "fields.csv").read_text().splitlines()
        assert fields[0] == "t_star,Z_star,p,g"
        assert fields[1].startswith("0.0,-1.0,1.0,1.0")
        mass = (out / "mass.csv").read_text().splitlines()
        assert mass[0] == "t_star,mass_ratio,normalized_mass"
        assert mass[-1].endswith(",1.0")      # normalized to its own endpoint
        summary = json.loads((out / "summary.json").read_text())
        assert summary["preset"] is None
        assert summary["N"] == 31
        assert summary["samples"] == 5
        assert summary["final_t_star"] == pytest.approx(0.1)

    def test_overrides(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["run", "--config", cfg, "--out", str(out),
                   "--grid", "11", "--t-final", "0.05", "--dt", "0.05"])
        assert rc == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["N"] == 11
        assert summary["t_final"] == 0.05
        assert summary["samples"] == 2

    def test_deterministic_outputs(self, tmp_path):
        cfg = write_config(tmp_path)
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["run", "--config", cfg, "--out", str(a)]) == 0
        assert main(["run", "--config", cfg, "--out", str(b)]) == 0
        for name in ("fields.csv", "mass.csv", "summary.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_missing_key_exits_2(self, tmp_path, capsys):
        text = QUICK_YAML.replace("beta2: 0.018\n", "")
        cfg = write_config(tmp_path, text)
        assert main(["run", "--config", cfg, "--out", str(tmp_path)]) == 2
        assert "beta2" in capsys.readouterr().err

    def test_unreadable_config_exits_2(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "absent.yaml")]) == 2

    def test_invalid_yaml_exits_2(self, tmp_path):
        cfg = write_config(tmp_path, "beta1: [unclosed\n")
        assert main(["run", "--config", cfg]) == 2

    def test_numeric_breakdown_exits_3(self, tmp_path):
        # no elastic resistance and chi < 1/2: the wall traction equation has
        # no root, which surfaces as a numerical failure
        text = QUICK_YAML.replace("mu_p_star: 0.1", "mu_p_star: 0.0")
        text = text.replace("mu_G_star: 0.1", "mu_G_star: 0.0")
        cfg = write_config(tmp_path, text)
        assert main(["run", "--config", cfg, "--out", str(tmp_path)]) == 3

    def test_stalled_iteration_exits_4(self, tmp_path):
        text = QUICK_YAML + "max_inner_iters: 1\n"
        cfg = write_config(tmp_path, text)
        assert main(["run", "--config", cfg, "--out", str(tmp_path)]) == 4

    def test_requires_config_or_preset(self):
        with pytest.raises(SystemExit):
            main(["run"])


class TestOtherCommands:
    def test_presets_listing(self, capsys):
        assert main(["presets"]) == 0
        out = capsys.readouterr().out
        for name in ("dmso-pmda-oda", "nmp-pmda-oda", "water-hfpe",
                     "compress-cycle"):
            assert name in out

    def test_converge_micro(self, tmp_path, capsys):
        cfg = write_config(tmp_path, QUICK_YAML.replace("t_final: 0.1",
                                                        "t_final: 1.0"))
        out = tmp_path / "conv"
        rc = main(["converge", "--config", cfg, "--out", str(out),
                   "--grids", "11,21", "--reference", "41",
                   "--probe-t", "0.1"])
        assert rc == 0
        lines = (out / "convergence.csv").read_text().splitlines()
        assert lines[0] == "grid,error"
        assert lines[1].startswith("11,")
        assert len(lines) == 3
        summary = json.loads((out / "summary.json").read_text())
        assert summary["reference"] == 41

    def test_compare_roundtrip(self, tmp_path):
        text = """\
beta1: 1.3
beta2: 0.018
chi: 0.425
mu_p_star: 0.1
mu_G_star: 0.1
gamma_star: 0.5
N: 11
dt_star: 0.1
t_final: 8.0
characteristic_time: 100.0
"""
        cfg = write_config(tmp_path, text)
        data = tmp_path / "measured.csv"
        data.write_text("time,normalized_mass\n10.0,0.5\n100.0,0.9\n400.0,1.0\n")
        out = tmp_path / "cmp"
        assert main(["compare", str(data), "--config", cfg,
                     "--out", str(out)]) == 0
        payload = json.loads((out / "comparison.json").read_text())
        assert payload["n_points"] == 3
        assert payload["rmse"] >= 0.0
