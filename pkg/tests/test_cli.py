import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import FIXTURE_DIR
from entrans import cli, network, scenario

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fixture_args():
    return {
        "panel": str(FIXTURE_DIR / "history.csv"),
        "schema": str(FIXTURE_DIR / "fixture.schema.json"),
        "spec": str(FIXTURE_DIR / "fixture.spec.json"),
        "model": str(FIXTURE_DIR / "fixture.model.json"),
        "future": str(FIXTURE_DIR / "fixture.panel.csv"),
    }


class TestValidate:
    def test_valid_fixture(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "validate", "--panel", fx["panel"], "--schema", fx["schema"]
        )
        assert code == 0
        assert "panel OK" in out
        assert "RNCAP" in out

    def test_month_gap_names_gap(self, capsys, tmp_path):
        fx = fixture_args()
        bad = tmp_path / "gap.csv"
        lines = Path(fx["panel"]).read_text().splitlines()
        del lines[3]  # drop 2016-03
        bad.write_text("\n".join(lines) + "\n")
        code, _, err = run_cli(
            capsys, "validate", "--panel", str(bad), "--schema", fx["schema"]
        )
        assert code == 1
        assert "2016-03" in err

    def test_unknown_column(self, capsys, tmp_path):
        fx = fixture_args()
        lines = Path(fx["panel"]).read_text().splitlines()
        lines[0] = lines[0].replace("GDP", "MYSTERY")
        bad = tmp_path / "unknown.csv"
        bad.write_text("\n".join(lines) + "\n")
        code, _, err = run_cli(
            capsys, "validate", "--panel", str(bad), "--schema", fx["schema"]
        )
        assert code == 1
        assert "MYSTERY" in err


class TestTrain:
    def test_trains_below_five_percent(self, capsys, tmp_path):
        fx = fixture_args()
        out_path = tmp_path / "model.json"
        code, out, err = run_cli(
            capsys,
            "train",
            "--panel", fx["panel"],
            "--schema", fx["schema"],
            "--target", "RNCAP",
            "--model-out", str(out_path),
            "--epochs", "1200",
            "--seed", "7",
            "--standardize-labels",
        )
        assert code == 0
        assert "seed: 7" in err
        match = re.search(r"holdout MAPE: ([0-9.]+)%", out)
        assert match is not None
        assert float(match.group(1)) < 5.0
        assert out_path.exists()

    def test_zero_epochs_saves_initial_model(self, capsys, tmp_path):
        fx = fixture_args()
        out_path = tmp_path / "model.json"
        code, out, _ = run_cli(
            capsys,
            "train",
            "--panel", fx["panel"],
            "--schema", fx["schema"],
            "--target", "RNCAP",
            "--model-out", str(out_path),
            "--epochs", "0",
        )
        assert code == 0
        assert "epochs run: 0" in out
        model = network.load_model(out_path)
        assert model.config.epochs == 0

    def test_model_file_byte_identical_across_runs(self, capsys, tmp_path):
        fx = fixture_args()
        outputs = []
        for name in ("a.json", "b.json"):
            path = tmp_path / name
            code, _, _ = run_cli(
                capsys,
                "train",
                "--panel", fx["panel"],
                "--schema", fx["schema"],
                "--target", "RNCAP",
                "--model-out", str(path),
                "--epochs", "40",
                "--seed", "3",
            )
            assert code == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_screen_threshold_drops_weak_determinants(self, capsys, tmp_path):
        fx = fixture_args()
        out_path = tmp_path / "model.json"
        code, _, err = run_cli(
            capsys,
            "train",
            "--panel", fx["panel"],
            "--schema", fx["schema"],
            "--target", "RNCAP",
            "--model-out", str(out_path),
            "--epochs", "10",
            "--screen-threshold", "0.5",
        )
        assert code == 0
        assert "screened out" in err
        pre = network.load_preprocessing(out_path)
        assert len(pre["input_columns"]) < 6

    def test_missing_target_column(self, capsys, tmp_path):
        fx = fixture_args()
        lines = Path(fx["future"]).read_text().splitlines()  # future has no targets
        panel = tmp_path / "no_targets.csv"
        panel.write_text("\n".join(lines) + "\n")
        code, _, err = run_cli(
            capsys,
            "train",
            "--panel", str(panel),
            "--schema", fx["schema"],
            "--target", "RNCAP",
            "--model-out", str(tmp_path / "m.json"),
        )
        assert code == 1
        assert "RNCAP" in err


class TestPredict:
    def test_monthly_predictions(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys,
            "predict",
            "--model", fx["model"],
            "--panel", fx["future"],
            "--schema", fx["schema"],
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "month,prediction"
        assert len(lines) == 61
        assert lines[1].startswith("2021-01,")
        float(lines[1].split(",")[1])  # plain decimal, no wrapper text

    def test_projection_flag(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys,
            "predict",
            "--model", fx["model"],
            "--panel", fx["panel"],
            "--schema", fx["schema"],
            "--project-to", "2021-06",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1].startswith("2021-01,")
        assert lines[-1].startswith("2021-06,")


class TestScore:
    @pytest.mark.parametrize(
        "region,kind,expected",
        [
            ("singapore", "ceiling", "0.504"),
            ("california", "speed", "0.782"),
            ("london", "speed", "0.764"),
        ],
    )
    def test_builtin(self, capsys, region, kind, expected):
        code, out, _ = run_cli(capsys, "score", "--builtin", region, kind)
        assert code == 0
        assert out.strip() == expected

    def test_card_file(self, capsys, tmp_path):
        from entrans import scoring

        path = tmp_path / "card.json"
        scoring.save_scorecard(scoring.builtin_scorecard("london", "ceiling"), path)
        code, out, _ = run_cli(capsys, "score", "--card", str(path))
        assert code == 0
        assert out.strip() == "0.850"

    def test_malformed_card(self, capsys, tmp_path):
        from entrans import scoring

        path = tmp_path / "bad.json"
        card = scoring.builtin_scorecard("london", "ceiling")
        doc = scoring.card_to_doc(card)
        doc["entries"]["grid_connection_permission"] = 60.0  # off the grid
        path.write_text(json.dumps(doc))
        code, _, err = run_cli(capsys, "score", "--card", str(path))
        assert code == 1
        assert "grid_connection_permission" in err


class TestScenario:
    def test_matches_golden_table(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "scenario", "--spec", fx["spec"], "--format", "table"
        )
        assert code == 0
        assert out == (GOLDEN_DIR / "fixture_report.txt").read_text()

    def test_matches_golden_json(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "scenario", "--spec", fx["spec"], "--format", "json"
        )
        assert code == 0
        assert out == (GOLDEN_DIR / "fixture_report.json").read_text()

    def test_byte_identical_across_runs(self, capsys):
        fx = fixture_args()
        _, first, _ = run_cli(capsys, "scenario", "--spec", fx["spec"], "--format", "csv")
        _, second, _ = run_cli(capsys, "scenario", "--spec", fx["spec"], "--format", "csv")
        assert first == second

    def test_csv_output_parses_back(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "scenario", "--spec", fx["spec"], "--format", "csv"
        )
        assert code == 0
        report = scenario.parse_report_csv(out)
        assert report.years == (2021, 2022, 2023, 2024, 2025)

    def test_gap_flag_zero_shortfall(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "scenario", "--spec", fx["spec"], "--format", "json"
        )
        predicted = json.loads(out)["series"]["policy"][-1]
        code, out, _ = run_cli(
            capsys,
            "scenario",
            "--spec", fx["spec"],
            "--format", "json",
            "--gap", str(predicted),
        )
        assert code == 0
        gap = json.loads(out)["gap"]
        assert abs(gap["shortfall"]) < 1e-9
        assert gap["required_f_p"]["in_envelope"]

    def test_infeasible_target_is_analysis_not_failure(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys,
            "scenario",
            "--spec", fx["spec"],
            "--format", "json",
            "--gap", "1000000",
        )
        assert code == 0
        gap = json.loads(out)["gap"]
        assert not gap["required_f_p"]["in_envelope"]
        assert not gap["required_f_c"]["in_envelope"]

    def test_missing_spec_file(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "scenario", "--spec", str(tmp_path / "ghost.json")
        )
        assert code == 1
        assert "error" in err


class TestGapCommand:
    def test_text_output(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "gap", "--spec", fx["spec"], "--target", "200"
        )
        assert code == 0
        assert "required f_p" in out
        assert "shortfall" in out

    def test_json_output(self, capsys):
        fx = fixture_args()
        code, out, _ = run_cli(
            capsys, "gap", "--spec", fx["spec"], "--target", "200", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["target_value"] == 200.0


class TestUsage:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["transmogrify"])
        assert excinfo.value.code == 2

    def test_missing_required_flag_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["validate"])
        assert excinfo.value.code == 2

    @pytest.mark.parametrize(
        "command", ["validate", "train", "predict", "score", "scenario", "gap", "serve"]
    )
    def test_help_documents_flags(self, capsys, command):
        with pytest.raises(SystemExit) as excinfo:
            cli.main([command, "--help"])
        assert excinfo.value.code == 0
        out = capsys.readouterr().out
        assert command in out
        assert "--" in out

    def test_console_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "entrans.cli", "score", "--builtin", "london", "ceiling"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert result.stdout.strip() == "0.850"
