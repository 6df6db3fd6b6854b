"""
Deterministic parameter sweeps over coupling strength and seed.

Cells run in independent worker processes, each writing to its own output
subdirectory. Rows of the aggregate report follow the grid order (V outer,
seed inner) whatever the number of workers.
"""

import csv
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import structlog

from quantum_chimera.exceptions import ChimeraError, RangeError
from quantum_chimera.sim.config import ScenarioConfig
from quantum_chimera.sim.scenario import run_scenario

logger = structlog.get_logger(__name__)

AGGREGATE_COLUMNS = [
    "V",
    "seed",
    "regime",
    "low_confidence",
    "I2_half",
    "I2_half_mean",
    "status",
    "error",
]


@dataclass(frozen=True)
class SweepRow:
    V: float
    seed: int
    regime: str = ""
    low_confidence: bool = False
    I2_half: float | None = None
    I2_half_mean: float | None = None
    status: str = "complete"
    error: str = ""


@dataclass
class SweepReport:
    """Aggregate of a sweep; ``failed`` counts cells that raised."""

    rows: list[SweepRow]
    path: Path

    @property
    def failed(self) -> int:
        return sum(row.status != "complete" for row in self.rows)


def cell_config(
    base: ScenarioConfig, V: float, seed: int, root: Path
) -> ScenarioConfig:
    """The scenario of one grid cell, writing below ``root``."""
    return base.model_copy(
        update={
            "name": f"{base.name}_V{V:g}_seed{seed}",
            "coupling": base.coupling.model_copy(update={"V": V}),
            "ic": base.ic.model_copy(update={"seed": seed}),
            "output_dir": str(root / f"V{V:g}_seed{seed}"),
        }
    )


def run_cell(config: ScenarioConfig) -> SweepRow:
    """Run one cell; any exception becomes a failed row."""
    V, seed = config.coupling.V, config.ic.seed
    try:
        manifest = run_scenario(config)
    except ChimeraError as e:
        logger.warning("sweep_cell_failed", V=V, seed=seed, error=str(e))
        error = f"{type(e).__name__}: {e}"
        return SweepRow(V=V, seed=seed, status="failed", error=error)
    except Exception as e:
        logger.exception("sweep_cell_crashed", V=V, seed=seed)
        error = f"{type(e).__name__}: {e}"
        return SweepRow(V=V, seed=seed, status="failed", error=error)
    results = manifest.results
    return SweepRow(
        V=V,
        seed=seed,
        regime=results.get("regime", ""),
        low_confidence=results.get("low_confidence", False),
        I2_half=results.get("I2_half"),
        I2_half_mean=results.get("I2_half_mean"),
    )


def write_aggregate(rows: Sequence[SweepRow], path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=AGGREGATE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            record = asdict(row)
            for key in ("I2_half", "I2_half_mean"):
                record[key] = "" if record[key] is None else repr(record[key])
            writer.writerow(record)
    return path


def sweep_runner(
    base: ScenarioConfig,
    V_values: Sequence[float],
    seeds: Sequence[int],
    workers: int = 1,
) -> SweepReport:
    """
    Run every (V, seed) cell and write ``sweep.csv`` under the base output dir.

    Args:
        base: Scenario shared by all cells
        V_values: Coupling strengths
        seeds: Initial-condition seeds
        workers: Maximum concurrent worker processes

    Returns:
        SweepReport with one row per cell in grid order

    Raises:
        RangeError: If the grid is empty or workers < 1
    """
    if not V_values or not seeds:
        msg = "Sweep grid must contain at least one V and one seed"
        raise RangeError(msg)
    if workers < 1:
        msg = f"workers must be >= 1, got {workers}"
        raise RangeError(msg)
    root = base.resolved_output_dir()
    root.mkdir(parents=True, exist_ok=True)
    configs = [cell_config(base, V, seed, root) for V in V_values for seed in seeds]
    logger.info("sweep_start", cells=len(configs), workers=workers, root=str(root))
    if workers == 1:
        rows = [run_cell(c) for c in configs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_cell, configs))
    report = SweepReport(rows=rows, path=write_aggregate(rows, root / "sweep.csv"))
    logger.info("sweep_done", cells=len(rows), failed=report.failed)
    return report
