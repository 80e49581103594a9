"""End-to-end CLI tests driven through main()."""

import csv
import json

import pytest

from edflow.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestRun:
    def test_baseline_summary(self, capsys):
        code, out, err = run_cli(capsys, "run")
        assert code == 0 and err == ""
        assert "1008 steps" in out
        assert "activations 0" in out

    def test_csv_output(self, capsys, tmp_path):
        path = tmp_path / "run.csv"
        code, out, _ = run_cli(capsys, "run", "--out", str(path))
        assert code == 0 and str(path) in out
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0][0] == "time_h" and len(rows) == 1009

    def test_json_output(self, capsys, tmp_path):
        path = tmp_path / "run.json"
        code, _, _ = run_cli(capsys, "run", "--preset", "stressed",
                             "--out", str(path))
        assert code == 0
        with open(path) as f:
            doc = json.load(f)
        assert doc["type"] == "trajectory"
        assert doc["data"]["spec"]["exogenous"]["kind"] == "pulse"

    def test_param_override(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--param", "total_beds=400")
        assert code == 0

    def test_horizon_and_dt(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--horizon", "24", "--dt", "0.5")
        assert code == 0 and "48 steps" in out

    def test_bad_param_is_error(self, capsys):
        code, _, err = run_cli(capsys, "run", "--param", "bogus=1")
        assert code == 2 and "error:" in err

    def test_malformed_param_is_error(self, capsys):
        code, _, err = run_cli(capsys, "run", "--param", "total_beds")
        assert code == 2 and "k=v" in err

    def test_unknown_preset_is_error(self, capsys):
        code, _, err = run_cli(capsys, "run", "--preset", "nope")
        assert code == 2 and "error:" in err


class TestSweep:
    def test_transfer_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--parameter",
                               "transfer_time_h", "--min", "0.78",
                               "--max", "3.12")
        assert code == 0
        assert "boarders:" in out and "t_div" in out

    def test_report_csv(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, _, _ = run_cli(capsys, "sweep", "--parameter", "total_beds",
                             "--min", "400", "--max", "900",
                             "--out", str(path))
        assert code == 0
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
        assert len(rows) == 5 and rows[1][0] == "total_beds"

    def test_unswept_parameter_rejected_by_argparse(self, capsys):
        with pytest.raises(SystemExit):
            main(["sweep", "--parameter", "admit_fraction",
                  "--min", "0", "--max", "1"])


class TestMonteCarlo:
    def test_small_batch(self, capsys):
        code, out, _ = run_cli(capsys, "mc", "--n", "5")
        assert code == 0
        assert "p50" in out and "census" in out

    def test_custom_ranges_file(self, capsys, tmp_path):
        ranges = tmp_path / "r.json"
        ranges.write_text(json.dumps({"total_beds": [450, 550]}))
        out_path = tmp_path / "mc.json"
        code, _, _ = run_cli(capsys, "mc", "--n", "3",
                             "--ranges", str(ranges), "--out", str(out_path))
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["type"] == "monte_carlo_result"
        assert all(450 <= r["params"]["total_beds"] <= 550
                   for r in doc["data"]["runs"])

    def test_bad_ranges_path(self, capsys):
        code, _, err = run_cli(capsys, "mc", "--n", "2",
                               "--ranges", "/no/such/file.json")
        assert code == 2 and "error:" in err


class TestFit:
    def test_fit_against_csv(self, capsys, tmp_path):
        obs = tmp_path / "obs.csv"
        obs.write_text("time_h,census\n2,48\n26,55\n50,52\n")
        code, out, _ = run_cli(capsys, "fit", "--observed", str(obs))
        assert code == 0
        assert "rmse" in out and "n 3" in out

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "fit", "--observed", "/no/file.csv")
        assert code == 2 and "error:" in err


class TestParser:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0

    def test_requires_subcommand(self):
        with pytest.raises(SystemExit):
            main([])
