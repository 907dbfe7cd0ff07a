import json

import pytest

from matsusy.core.errors import ConfigError
from matsusy.main import EXIT_NUMERICAL, EXIT_PASS, EXIT_TOLERANCE, EXIT_USAGE, main
from matsusy.pipeline.orchestrator import PipelineOrchestrator
from matsusy.pipeline.run_config import RunConfig
from matsusy.settings import Settings


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestSettings:

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("MATSUSY_GAP_TOL", "0.01")
        monkeypatch.setenv("MATSUSY_GRID_POINTS", "800")
        settings = Settings()
        assert settings.gap_tol == 0.01 and settings.grid_points == 800

    def test_layers(self):
        settings = Settings()
        config = RunConfig.from_layers(
            "verify", settings, {"family": "W17", "omega": "2", "shape_tol": "1e-8"}, {"omega": 1.0}
        )
        assert config.params == {"omega": 1.0}
        assert config.shape_tol == 1e-8
        assert config.N == settings.grid_points

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="accepted keys"):
            RunConfig.from_layers("verify", Settings(), {"zeta": "1"})

    def test_bad_integer(self):
        with pytest.raises(ConfigError):
            RunConfig.from_layers("spectrum", Settings(), {"levels": "three"})

    def test_orchestrator_steps(self):
        assert PipelineOrchestrator.step_names("verify") == ["VerifyStep", "ExportStep"]

    def test_orchestrator_timings(self):
        config = RunConfig.from_layers("verify", Settings(), {}, {"family": "W17"})
        context = PipelineOrchestrator(Settings()).run(config)
        assert set(context["timings"]) == {"VerifyStep", "ExportStep", "total"}
        assert context["timings"]["total"] >= 0.0


class TestListAndCatalog:

    def test_list(self, capsys):
        code, doc = run_json(capsys, "list")
        assert code == EXIT_PASS
        assert doc["result"]["counts"] == {"families_2x2": 17, "families_3x3": 7, "models": 9}

    def test_list_dim3(self, capsys):
        code, doc = run_json(capsys, "list", "--dim", "3")
        assert code == EXIT_PASS
        assert len(doc["result"]["families"]) == 7
        assert {m["tag"] for m in doc["result"]["models"]} == {"vector2d", "vector3d"}

    def test_list_table(self, capsys):
        assert main(["list"]) == EXIT_PASS
        out = capsys.readouterr().out
        assert out.startswith("24 families, 9 models")

    def test_catalog(self, capsys):
        code, doc = run_json(capsys, "catalog")
        assert code == EXIT_PASS
        assert len(doc["result"]["families"]) == 24 and len(doc["result"]["models"]) == 9


class TestVerify:

    def test_oscillator_family(self, capsys):
        code, doc = run_json(capsys, "verify", "--family", "W17", "--omega", "2", "--mu", "0.3", "--kappa", "1")
        assert code == EXIT_PASS
        assert doc["passed"] is True
        assert doc["result"]["shape"]["fitted"]["C_kappa"] == pytest.approx(2.0, abs=1e-9)

    def test_r_constraint(self, capsys):
        assert main(["verify", "--family", "W7", "--r2", "3", "--r3", "4", "--omega", "5"]) == EXIT_PASS
        assert main(["verify", "--family", "W7", "--r2", "3", "--r3", "4", "--omega", "6"]) == EXIT_USAGE
        assert "omega" in capsys.readouterr().err

    def test_missing_family(self):
        assert main(["verify"]) == EXIT_USAGE

    def test_config_file_then_cli(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("family = W17\nomega = 2\nkappa = 1\n", encoding="utf-8")
        code, doc = run_json(capsys, "verify", "--config", str(cfg), "--omega", "1.0")
        assert code == EXIT_PASS
        assert doc["result"]["shape"]["fitted"]["C_kappa"] == pytest.approx(1.0, abs=1e-9)

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("family = W17\nfrobnicate = 1\n", encoding="utf-8")
        assert main(["verify", "--config", str(cfg)]) == EXIT_USAGE
        assert "frobnicate" in capsys.readouterr().err

    def test_unknown_flag_rejected(self):
        with pytest.raises(SystemExit):
            main(["verify", "--family", "W17", "--omga", "2"])


class TestReduce:

    def test_spinor(self, capsys):
        code, doc = run_json(capsys, "reduce", "--model", "spinor3d", "--j", "1.5", "--omega", "2")
        assert code == EXIT_PASS
        assert doc["result"]["deviation"] < 1e-10

    def test_plus_convention_fails_tolerance(self):
        assert main(["reduce", "--model", "vector2d", "--convention", "plus"]) == EXIT_TOLERANCE


class TestSpectrum:

    def test_model_csv_output(self, tmp_path, capsys):
        out = tmp_path / "levels.csv"
        states = tmp_path / "states.csv"
        code = main([
            "spectrum", "--model", "oscillatorA", "--levels", "3", "--N", "1000",
            "--format", "csv", "--output", str(out), "--states-csv", str(states),
        ])
        assert code == EXIT_PASS
        assert capsys.readouterr().out == ""
        lines = out.read_text().splitlines()
        assert lines[0] == "level,eigenvalue,extrapolated,gap,analytic_gap,deviation"
        assert len(lines) == 4
        assert states.read_text().splitlines()[0].startswith("x,re_0_0,im_0_0,re_0_1")

    def test_family_spectrum(self, capsys):
        code, doc = run_json(
            capsys, "spectrum", "--family", "W17", "--omega", "2", "--mu", "0.5", "--kappa", "1",
            "--L", "14", "--levels", "3", "--N", "1000",
        )
        assert code == EXIT_PASS
        assert doc["result"]["analytic_gaps"] == pytest.approx([0.0, 2.0, 4.0])
        assert 2 not in doc["result"]["solver_levels"]
        assert doc["result"]["grid"]["xmin"] > 0

    def test_model_and_family_exclusive(self):
        with pytest.raises(SystemExit):
            main(["spectrum", "--model", "scarf", "--family", "W5"])

    def test_memory_budget(self, capsys):
        code = main(["spectrum", "--model", "oscillatorA", "--memory-limit-mb", "0.001"])
        assert code == EXIT_USAGE
        assert "MB" in capsys.readouterr().err

    def test_guard(self):
        assert main(["spectrum", "--model", "tanhexp", "--kappa", "2"]) == EXIT_USAGE


class TestLadder:

    def test_oscillator(self, capsys):
        code, doc = run_json(capsys, "ladder", "--model", "oscillatorA", "--n", "2", "--N", "1000")
        assert code == EXIT_PASS
        rungs = doc["result"]["rungs"]
        assert len(rungs) == 3
        assert [r["solver_level"] for r in rungs][:2] == [0, 1]

    def test_hydrogen_broken(self, capsys):
        assert main(["ladder", "--model", "hydrogenlike", "--n", "1", "--epsilon", "0"]) == EXIT_NUMERICAL
        assert "numerical failure" in capsys.readouterr().err
