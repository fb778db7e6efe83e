import csv
import json

import pytest

from alphafractal.cli import main

RUNNING_CONFIG = {
    "partition": {"knots": [0.0, 0.5, 1.0]},
    "germ": {"family": "polynomial", "coeffs": [0.0, 1.0]},
    "levels": [{
        "scaling": {"family": "constant", "value": 0.4},
        "base": {"family": "polynomial", "coeffs": [0.0, 0.0, 1.0]},
    }],
    "grid": 1025,
}


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestBuild:
    def test_running_example_curve(self, tmp_path):
        cfg = write_config(tmp_path, RUNNING_CONFIG)
        assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "curve.csv")
        row = next(r for r in rows if float(r["x"]) == 0.25)
        assert float(row["falpha"]) == pytest.approx(0.35, abs=1e-6)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["alpha_sup"] == pytest.approx(0.4)
        assert summary["r_bound"] == pytest.approx(7.0 / 6.0)
        assert summary["knot_residual_max"] <= 1e-8
        assert summary["validation"]["ok"] is True

    def test_zero_scaling_curve_equals_germ(self, tmp_path):
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["levels"][0]["scaling"]["value"] = 0.0
        cfg = write_config(tmp_path, data)
        assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        for row in read_csv(tmp_path / "curve.csv"):
            assert row["falpha"] == row["f"]

    def test_non_contractive_exits_2(self, tmp_path, capsys):
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["levels"][0]["scaling"]["value"] = 1.2
        cfg = write_config(tmp_path, data)
        assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "ScalingNotContractive"

    def test_missing_section_exits_2(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"partition": {"knots": [0, 0.5, 1]}})
        assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "ConfigError"

    def test_deterministic_output(self, tmp_path):
        cfg = write_config(tmp_path, RUNNING_CONFIG)
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        assert main(["build", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["build", "--config", str(cfg), "--out", str(out2)]) == 0
        assert (out1 / "curve.csv").read_bytes() == (out2 / "curve.csv").read_bytes()

    def test_lip_mode_summary(self, tmp_path):
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["levels"][0]["scaling"]["value"] = 0.2
        data["mode"] = "lip"
        cfg = write_config(tmp_path, data)
        assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["lip_hypothesis"]["pass"] is True

    def test_csv_partition_ingestion(self, tmp_path):
        data_csv = tmp_path / "data.csv"
        data_csv.write_text("x,y\n0.0,0.0\n0.5,0.5\n1.0,1.0\n")
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["partition"] = {"csv": "data.csv"}
        cfg = write_config(tmp_path, data)
        assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["knot_residual_max"] <= 1e-8


class TestVerify:
    def test_all_suites_pass(self, tmp_path):
        cfg = write_config(tmp_path, RUNNING_CONFIG)
        rc = main(["verify", "--config", str(cfg), "--suite", "all",
                   "--trials", "5", "--seed", "7", "--out", str(tmp_path)])
        assert rc == 0
        rows = read_csv(tmp_path / "report.csv")
        assert rows
        assert all(r["pass"] == "true" for r in rows)
        detail = json.loads((tmp_path / "report.json").read_text())
        assert len(detail) == len(rows)

    def test_error_suite_zero_scaling(self, tmp_path):
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["levels"][0]["scaling"]["value"] = 0.0
        cfg = write_config(tmp_path, data)
        rc = main(["verify", "--config", str(cfg), "--suite", "error",
                   "--trials", "3", "--seed", "1", "--out", str(tmp_path)])
        assert rc == 0

    def test_invalid_config_exits_2(self, tmp_path, capsys):
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["levels"][0]["base"] = {"family": "polynomial", "coeffs": [0.1, 0.0, 1.0]}
        cfg = write_config(tmp_path, data)
        rc = main(["verify", "--config", str(cfg), "--suite", "error",
                   "--trials", "2", "--out", str(tmp_path)])
        assert rc == 2
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "EndpointMismatch"

    def test_lip_mode_suites_draw_admissible_scalings(self, tmp_path):
        data = json.loads(json.dumps(RUNNING_CONFIG))
        data["levels"][0]["scaling"]["value"] = 0.2
        data["mode"] = "lip"
        cfg = write_config(tmp_path, data)
        rc = main(["verify", "--config", str(cfg), "--suite", "all",
                   "--trials", "3", "--seed", "11", "--out", str(tmp_path)])
        assert rc == 0

    def test_sensitivity_precondition_exits_2(self, tmp_path, capsys):
        cfg = write_config(tmp_path, RUNNING_CONFIG)
        rc = main(["verify", "--config", str(cfg), "--suite", "sensitivity",
                   "--trials", "5", "--seed", "3", "--t-scale", "0.9",
                   "--out", str(tmp_path)])
        assert rc == 2
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "PerturbationTooLarge"

    def test_deterministic_reports(self, tmp_path):
        cfg = write_config(tmp_path, RUNNING_CONFIG)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["verify", "--config", str(cfg), "--suite", "stability",
                         "--trials", "4", "--seed", "3", "--out", str(out)]) == 0
        assert (out1 / "report.csv").read_bytes() == (out2 / "report.csv").read_bytes()


class TestSweep:
    def _manifest(self, tmp_path, experiments):
        man = {"config": RUNNING_CONFIG, "experiments": experiments}
        path = tmp_path / "manifest.json"
        path.write_text(json.dumps(man))
        return path

    def test_base_pair(self, tmp_path):
        man = self._manifest(tmp_path, [{
            "kind": "base",
            "bases_a": [{"family": "polynomial", "coeffs": [0.0, 0.0, 1.0]}],
            "bases_b": [{"family": "polynomial", "coeffs": [0.0, 0.0, 0.0, 1.0]}],
        }])
        assert main(["sweep", "--manifest", str(man), "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "results.csv")
        assert len(rows) == 1
        assert float(rows[0]["observed"]) <= 2.0 / 3.0 + 1e-4

    def test_empty_manifest(self, tmp_path):
        man = self._manifest(tmp_path, [])
        assert main(["sweep", "--manifest", str(man), "--out", str(tmp_path)]) == 0
        assert read_csv(tmp_path / "results.csv") == []

    def test_partition_triplet_decreasing(self, tmp_path):
        man = self._manifest(tmp_path, [{
            "kind": "partition", "knots": [0.0, 0.48, 1.0], "halvings": 3,
        }])
        assert main(["sweep", "--manifest", str(man), "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "results.csv")
        assert len(rows) == 3

    def test_scaling_pair(self, tmp_path):
        man = self._manifest(tmp_path, [{
            "kind": "scaling",
            "alphas_a": [[{"family": "constant", "value": 0.4},
                          {"family": "constant", "value": 0.4}]],
            "alphas_b": [[{"family": "constant", "value": 0.35},
                          {"family": "constant", "value": 0.35}]],
            "s_cap": 0.4,
        }])
        assert main(["sweep", "--manifest", str(man), "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "results.csv")
        assert rows[0]["pass"] == "true"

    def test_bad_manifest_exits_2(self, tmp_path, capsys):
        man = self._manifest(tmp_path, [{"kind": "nonsense"}])
        assert main(["sweep", "--manifest", str(man), "--out", str(tmp_path)]) == 2
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "ConfigError"

    def test_missing_field_exits_2(self, tmp_path, capsys):
        man = self._manifest(tmp_path, [{"kind": "base", "bases_a": []}])
        assert main(["sweep", "--manifest", str(man), "--out", str(tmp_path)]) == 2
