from pathlib import Path

import pytest

from quantum_chimera.exceptions import ConfigError, NumericalInstabilityError
from quantum_chimera.fluctuations import coherent_covariance
from quantum_chimera.main import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_PARTIAL_SWEEP,
    main,
    parse_seeds,
)
from quantum_chimera.sim import read_manifest, read_table, write_covariance
from quantum_chimera.sim.oracle_check import CheckResult

PASSING = [lambda: CheckResult("good", passed=True, error=0.0, tolerance=1e-6)]

SMALL_RING = [
    "--params.n_nodes",
    "8",
    "--coupling.d",
    "2",
    "--schedule.t_transient",
    "1",
    "--schedule.window",
    "0.1",
    "--schedule.dt",
    "0.01",
    "--schedule.sample_every",
    "5",
    "--analyses.husimi_nodes",
    "2",
]


def test_runs_without_preset_need_seed_and_out(tmp_path: Path) -> None:
    assert main(["simulate", *SMALL_RING, "--seed", "1"]) == EXIT_CONFIG
    assert main(["simulate", *SMALL_RING, "--out", str(tmp_path)]) == EXIT_CONFIG


def test_unknown_preset_is_a_config_error(tmp_path: Path) -> None:
    assert main(["simulate", "--preset", "nope", "--out", str(tmp_path)]) == EXIT_CONFIG


def test_invalid_flag_value_is_a_config_error(tmp_path: Path) -> None:
    argv = ["simulate", *SMALL_RING, "--seed", "1", "--out", str(tmp_path)]
    assert main([*argv, "--coupling.d", "9"]) == EXIT_CONFIG


def test_quantum_run_writes_manifest(tmp_path: Path) -> None:
    out = tmp_path / "run"
    argv = ["quantum", *SMALL_RING, "--seed", "2", "--out", str(out)]
    assert main(argv) == EXIT_OK
    manifest = read_manifest(out)
    assert manifest.status == "complete"
    assert manifest.config["params.n_nodes"] == 8
    assert (out / "husimi_node2.csv").is_file()


def test_config_file_layers_under_flags(tmp_path: Path) -> None:
    config = tmp_path / "ring.cfg"
    config.write_text("coupling.V = 0.7\nic.seed = 4\n", encoding="utf-8")
    out = tmp_path / "layered"
    argv = ["simulate", *SMALL_RING, "--config", str(config), "--out", str(out)]
    assert main([*argv, "--coupling.V", "0.9"]) == EXIT_OK
    manifest = read_manifest(out)
    assert manifest.seed == 4
    assert manifest.config["coupling.V"] == pytest.approx(0.9)


def test_mi_scan_subcommand(tmp_path: Path) -> None:
    snapshot = write_covariance(coherent_covariance(5, 1.0), tmp_path / "c.csv", 1.0)
    out = tmp_path / "scan"
    argv = ["mi-scan", "--covariance", str(snapshot), "--out", str(out)]
    assert main(argv) == EXIT_OK
    table = read_table(out / "mi_scan.csv")
    assert list(table["L"]) == [1.0, 2.0, 3.0, 4.0]
    assert (out / "mi_scan.json").is_file()


def test_oracle_check_reports_failures(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    monkeypatch.setattr(
        "quantum_chimera.sim.oracle_check.CHECKS",
        [
            lambda: CheckResult("good", passed=True, error=1e-9, tolerance=1e-6),
            lambda: CheckResult("bad", passed=False, error=0.5, tolerance=1e-6),
        ],
    )
    assert main(["oracle-check"]) == EXIT_NUMERICAL
    printed = capsys.readouterr().out
    assert "PASS  good" in printed
    assert "FAIL  bad" in printed


def test_oracle_check_succeeds_when_all_pass(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr("quantum_chimera.sim.oracle_check.CHECKS", PASSING)
    assert main(["oracle-check"]) == EXIT_OK


def test_numerical_failure_exit_code(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    def unstable(*args: object, **kwargs: object) -> None:
        msg = "uncertainty violated"
        raise NumericalInstabilityError(msg, t=1.0)

    monkeypatch.setattr("quantum_chimera.sim.scenario.propagate_covariance", unstable)
    argv = ["quantum", *SMALL_RING, "--seed", "1", "--out", str(tmp_path)]
    assert main(argv) == EXIT_NUMERICAL
    assert read_manifest(tmp_path).status == "partial"


def test_sweep_with_failed_cell(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    def unstable(*args: object, **kwargs: object) -> None:
        msg = "uncertainty violated"
        raise NumericalInstabilityError(msg, t=1.0)

    monkeypatch.setattr("quantum_chimera.sim.sweep.run_scenario", unstable)
    argv = ["sweep", *SMALL_RING, "--out", str(tmp_path), "--seed", "0"]
    assert main([*argv, "--V", "0.5,1.0", "--seeds", "0-1"]) == EXIT_PARTIAL_SWEEP
    assert (tmp_path / "sweep.csv").is_file()


def test_sweep_success(tmp_path: Path) -> None:
    argv = ["sweep", *SMALL_RING, "--out", str(tmp_path), "--seed", "0"]
    assert main([*argv, "--V", "1.0", "--seeds", "0,1"]) == EXIT_OK
    assert (tmp_path / "V1_seed1" / "manifest.json").is_file()


def test_parse_seeds() -> None:
    assert parse_seeds("0-2,5") == [0, 1, 2, 5]
    assert parse_seeds(" 3 ") == [3]
    with pytest.raises(ConfigError):
        parse_seeds("a-b")


def test_oracle_check_writes_expectations(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setattr("quantum_chimera.sim.oracle_check.CHECKS", PASSING)
    assert main(["oracle-check", "--out", str(tmp_path)]) == EXIT_OK
    for name in ("full_expectations.csv", "gutzwiller_expectations.csv"):
        table = read_table(tmp_path / name)
        assert len(table["t"]) == 101
        assert table["t"][-1] == pytest.approx(0.5)
        assert table["im_a_2"][0] > 0
        assert set(table) >= {"re_a_1", "n_1", "re_a_2", "n_2"}


def test_sweep_needs_no_base_seed(tmp_path: Path) -> None:
    argv = ["sweep", *SMALL_RING, "--out", str(tmp_path)]
    assert main([*argv, "--V", "1.0", "--seeds", "3"]) == EXIT_OK
    assert (tmp_path / "V1_seed3" / "manifest.json").is_file()
