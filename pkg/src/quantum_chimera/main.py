"""
Command-line entry point for the chimera simulator.

Subcommands:
    simulate      mean field only (trajectory and regime)
    quantum       mean field, covariance window and analyses
    mi-scan       mutual information scan of a covariance snapshot file
    oracle-check  Fock-space certification suite
    sweep         grid over coupling strength and seed

Exit codes are 0 on success, 2 for configuration errors, 3 for numerical
errors and 4 when some sweep cells failed.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import structlog

from quantum_chimera.exceptions import ChimeraError, ConfigError
from quantum_chimera.info import mi_scan
from quantum_chimera.log_config import configure_logging
from quantum_chimera.settings import settings
from quantum_chimera.sim.config import (
    ScenarioConfig,
    build_config,
    config_keys,
    read_config_file,
)
from quantum_chimera.sim.io import read_covariance, write_mi_scan
from quantum_chimera.sim.oracle_check import export_expectations, run_oracle_checks
from quantum_chimera.sim.presets import PresetLibrary
from quantum_chimera.sim.scenario import run_scenario
from quantum_chimera.sim.sweep import sweep_runner

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_PARTIAL_SWEEP = 4

SHORTCUTS = {"seed": "ic.seed", "out": "output_dir"}


def _add_scenario_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", help="Named preset (chimera, sync, desync)")
    parser.add_argument("--config", type=Path, help="Key-value configuration file")
    parser.add_argument("--seed", help="Initial-condition seed (ic.seed)")
    parser.add_argument("--out", help="Output directory (output_dir)")
    group = parser.add_argument_group("configuration keys")
    for key in config_keys():
        group.add_argument(f"--{key}", dest=key, metavar="VALUE", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantum-chimera",
        description="Quantum signatures of chimera states in oscillator rings",
    )
    parser.add_argument("--log-level", default=settings.log_level)
    parser.add_argument("--json-logs", action="store_true", default=settings.log_json)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_scenario_options(sub.add_parser("simulate", help="Mean field only"))
    _add_scenario_options(
        sub.add_parser("quantum", help="Mean field, covariance and analyses")
    )

    scan = sub.add_parser("mi-scan", help="I2 for every cut of a covariance file")
    scan.add_argument("--covariance", type=Path, required=True)
    scan.add_argument("--out", type=Path, required=True)
    scan.add_argument("--hbar", type=float, default=None)

    oracle = sub.add_parser(
        "oracle-check", help="Run the Fock-space certification suite"
    )
    oracle.add_argument(
        "--out", type=Path, default=None, help="Also write expectation CSVs here"
    )

    sweep = sub.add_parser("sweep", help="Grid over coupling strength and seed")
    _add_scenario_options(sweep)
    sweep.add_argument("--V", dest="sweep_V", required=True, help="e.g. 0.8,1.2,1.6")
    sweep.add_argument("--seeds", required=True, help="e.g. 0,1,2 or 0-9")
    sweep.add_argument("--workers", type=int, default=settings.sweep_workers)
    return parser


def parse_seeds(text: str) -> list[int]:
    """Comma-separated seeds; ``a-b`` expands to the inclusive range."""
    seeds: list[int] = []
    try:
        for item in filter(None, (s.strip() for s in text.split(","))):
            first, sep, last = item.partition("-")
            seeds += list(range(int(first), int(last) + 1)) if sep else [int(item)]
    except ValueError as e:
        msg = f"Cannot parse seeds {text!r}: {e}"
        raise ConfigError(msg) from e
    return seeds


def parse_floats(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        msg = f"Cannot parse values {text!r}: {e}"
        raise ConfigError(msg) from e


def scenario_from_args(args: argparse.Namespace) -> ScenarioConfig:
    """
    Layer preset, config file and flags (later wins) into one configuration.

    Raises:
        ConfigError: If a non-preset run lacks --seed or --out (a sweep only
            needs --out), or any layer is invalid
    """
    values: dict[str, Any] = {}
    if args.preset:
        values |= PresetLibrary().get_preset(args.preset).values
    if args.config:
        values |= read_config_file(args.config)
    flags = {key: getattr(args, key) for key in config_keys()}
    flags |= {SHORTCUTS[k]: getattr(args, k) for k in SHORTCUTS}
    values |= {k: v for k, v in flags.items() if v is not None}
    if not args.preset:
        optional = {"seed"} if args.command == "sweep" else set()
        missing = [
            f"--{k}"
            for k, key in SHORTCUTS.items()
            if key not in values and k not in optional
        ]
        if missing:
            msg = f"Runs without --preset need {' and '.join(missing)}"
            raise ConfigError(msg)
    return build_config(values)


def _run_mi_scan(args: argparse.Namespace) -> int:
    C, header = read_covariance(args.covariance)
    hbar = args.hbar if args.hbar is not None else float(header.get("hbar", 1.0))
    args.out.mkdir(parents=True, exist_ok=True)
    scan = mi_scan(C, hbar)
    paths = write_mi_scan(
        scan,
        args.out / "mi_scan.csv",
        {"t": C.t, "N": C.n_nodes, "source": str(args.covariance)},
    )
    logger.info("mi_scan_written", path=str(paths[0]), asymmetry=scan.asymmetry())
    return EXIT_OK


def _run_oracle_check(args: argparse.Namespace) -> int:
    results = run_oracle_checks()
    if args.out is not None:
        export_expectations(args.out)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name:32s} error={r.error:.3e} tol={r.tolerance:.0e}"
        print(line)  # noqa: T201
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERICAL


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "mi-scan":
        return _run_mi_scan(args)
    if args.command == "oracle-check":
        return _run_oracle_check(args)
    config = scenario_from_args(args)
    if args.command == "sweep":
        report = sweep_runner(
            config,
            parse_floats(args.sweep_V),
            parse_seeds(args.seeds),
            workers=args.workers,
        )
        if report.failed:
            logger.error(
                "sweep_incomplete", failed=report.failed, path=str(report.path)
            )
            return EXIT_PARTIAL_SWEEP
        return EXIT_OK
    manifest = run_scenario(config, quantum=args.command == "quantum")
    logger.info("manifest_written", status=manifest.status, files=len(manifest.files))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, json=args.json_logs)
    try:
        return _dispatch(args)
    except ConfigError as e:
        logger.error("config_error", error=str(e))  # noqa: TRY400
        return EXIT_CONFIG
    except ChimeraError as e:
        logger.error(  # noqa: TRY400
            "numerical_error", error=str(e), kind=type(e).__name__
        )
        return EXIT_NUMERICAL


def start() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    start()
