"""CLI contract: catalog, flags, report files, exit codes."""

import json

import pytest

from nogosim.cli import (
    EXIT_BAD_PARAMS,
    EXIT_IO,
    EXIT_OK,
    EXIT_TEST_FAILED,
    EXIT_UNKNOWN_EXPERIMENT,
    main,
)
from nogosim.experiments import EXPERIMENTS, list_experiments

CATALOG_NAMES = ("ks-color", "ks-spin1-order", "bell-chsh", "bell-original",
                 "ck-singlet", "ck-classical", "dht")


class TestCatalog:
    def test_exactly_seven_experiments(self):
        assert tuple(EXPERIMENTS) == CATALOG_NAMES

    def test_run_experiment_library_entry(self):
        from nogosim.experiments import run_experiment

        report = run_experiment("dht", seed=3, trials=200)
        assert report.experiment == "dht"
        assert report.trials == 200
        with pytest.raises(KeyError, match="unknown"):
            run_experiment("nope", seed=3)
        with pytest.raises(ValueError, match="unknown parameters"):
            run_experiment("dht", seed=3, trials=10, params={"gate": "swap"})

    def test_every_entry_lists_parameters(self):
        for exp in list_experiments():
            assert exp.summary
            assert exp.default_trials >= 1
            for spec in exp.params:
                assert spec.name and spec.help

    def test_list_flag(self, capsys):
        assert main(["--list"]) == EXIT_OK
        out = capsys.readouterr().out
        for name in CATALOG_NAMES:
            assert name in out


class TestExitCodes:
    def test_unknown_experiment(self, capsys):
        assert main(["--experiment", "nope"]) == EXIT_UNKNOWN_EXPERIMENT
        assert "unknown experiment" in capsys.readouterr().err

    def test_missing_experiment(self, capsys):
        assert main([]) == EXIT_BAD_PARAMS

    def test_bad_param_key(self, capsys):
        code = main(["--experiment", "dht", "--param", "gate=swap"])
        assert code == EXIT_BAD_PARAMS

    def test_bad_param_value(self, capsys):
        code = main(["--experiment", "dht", "--param", "variant=teleport"])
        assert code == EXIT_BAD_PARAMS

    def test_bad_trials(self, capsys):
        assert main(["--experiment", "dht", "--trials", "0"]) == EXIT_BAD_PARAMS

    def test_runner_level_validation(self, capsys):
        code = main(["--experiment", "bell-chsh", "--trials", "50",
                     "--param", "scan_steps=2"])
        assert code == EXIT_BAD_PARAMS
        assert "at least 4" in capsys.readouterr().err

    def test_bad_seed(self, capsys):
        assert main(["--experiment", "dht", "--seed", "-3"]) == EXIT_BAD_PARAMS

    def test_io_failure(self, capsys):
        code = main(["--experiment", "dht", "--trials", "50",
                     "--out", "/nonexistent-dir/report.json"])
        assert code == EXIT_IO

    def test_failing_statistical_test_returns_one(self, capsys, tmp_path):
        # Degenerate axes cannot violate the inequality, so that test fails.
        code = main(["--experiment", "bell-original", "--trials", "200",
                     "--param", "angles=0,0,0",
                     "--out", str(tmp_path / "r.json")])
        assert code == EXIT_TEST_FAILED

    def test_successful_run(self, capsys, tmp_path):
        code = main(["--experiment", "dht", "--seed", "4", "--trials", "300",
                     "--out", str(tmp_path / "r.json")])
        assert code == EXIT_OK


class TestReports:
    def test_json_schema(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["--experiment", "ck-classical", "--seed", "5",
                     "--trials", "1000", "--out", str(out)]) == EXIT_OK
        parsed = json.loads(out.read_bytes())
        assert list(parsed) == ["experiment", "seed", "trials", "parameters",
                                "analytic", "empirical", "tests", "runtime_ms",
                                "version"]
        assert parsed["runtime_ms"] is None
        assert parsed["seed"] == 5
        assert parsed["trials"] == 1000

    def test_byte_identical_reruns(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            args = ["--experiment", "bell-chsh", "--seed", "42",
                    "--trials", "500", "--param", "scan_steps=24",
                    "--out", str(path)]
            assert main(args) == EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv_format(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        assert main(["--experiment", "dht", "--trials", "300", "--format", "csv",
                     "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "label,analytic,empirical"
        assert len(lines) == 5

    def test_stdout_when_no_out_path(self, capsys):
        assert main(["--experiment", "dht", "--trials", "200"]) == EXIT_OK
        captured = capsys.readouterr()
        parsed = json.loads(captured.out)
        assert parsed["experiment"] == "dht"
        assert "tests passed" in captured.err

    def test_param_vector_normalization(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["--experiment", "ks-color", "--trials", "200",
                     "--param", "state=4,4,7", "--out", str(out)])
        assert code == EXIT_OK
        parsed = json.loads(out.read_bytes())
        assert parsed["parameters"]["state"][2] == pytest.approx(7 / 9)

    def test_angles_in_degrees(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["--experiment", "bell-chsh", "--trials", "500",
                     "--param", "angles=0,45,90,135",
                     "--param", "scan_steps=24", "--out", str(out)])
        assert code == EXIT_OK
        parsed = json.loads(out.read_bytes())
        assert parsed["parameters"]["angles"] == [0.0, 45.0, 90.0, 135.0]
