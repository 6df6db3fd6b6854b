from pathlib import Path

import numpy as np
import pytest

from quantum_chimera.fluctuations import circular_spread
from quantum_chimera.ring import Regime
from quantum_chimera.ring.order import DEFAULT_THRESHOLDS
from quantum_chimera.sim import (
    PresetLibrary,
    build_config,
    read_manifest,
    read_table,
    run_scenario,
)

pytestmark = pytest.mark.slow

SEEDS = range(10)
LO, HI = DEFAULT_THRESHOLDS
MI_CUT = 20


@pytest.fixture(scope="module")
def preset_runs(tmp_path_factory: pytest.TempPathFactory) -> dict[str, list[Path]]:
    library = PresetLibrary()
    root = tmp_path_factory.mktemp("presets")
    runs: dict[str, list[Path]] = {}
    for name in ("sync", "chimera", "desync"):
        base = build_config(library.get_preset(name).values)
        runs[name] = []
        for seed in SEEDS:
            config = base.model_copy(
                update={
                    "ic": base.ic.model_copy(update={"seed": seed}),
                    "output_dir": str(root / f"{name}_seed{seed}"),
                }
            )
            run_scenario(config)
            runs[name].append(config.resolved_output_dir())
    return runs


def _labels(runs: list[Path]) -> list[str]:
    return [read_manifest(out).results["regime"] for out in runs]


def _chimera_runs(preset_runs: dict[str, list[Path]]) -> list[Path]:
    runs = preset_runs["chimera"]
    labels = _labels(runs)
    found = [
        out
        for out, label in zip(runs, labels, strict=True)
        if label == Regime.CHIMERA.value
    ]
    assert found
    return found


def _boundaries(mask: np.ndarray) -> np.ndarray:
    """0-based nodes l whose membership differs from node l - 1 (ring order)."""
    return np.flatnonzero(mask != np.roll(mask, 1))


def _ring_gap(a: int, b: int, n_nodes: int) -> int:
    gap = abs(a - b) % n_nodes
    return min(gap, n_nodes - gap)


def _i2_at(out: Path, cut: int) -> float:
    scan = read_table(out / "mi_scan.csv")
    return float(scan["I2"][scan["L"] == cut][0])


def test_presets_reach_their_regimes(preset_runs: dict[str, list[Path]]) -> None:
    sync = _labels(preset_runs["sync"]).count(Regime.SYNCHRONIZED.value)
    desync = _labels(preset_runs["desync"]).count(Regime.DESYNCHRONIZED.value)
    chimera = _labels(preset_runs["chimera"]).count(Regime.CHIMERA.value)
    assert sync >= 8
    assert desync >= 8
    assert chimera >= 6


def test_uncertainty_margin_holds_in_every_run(
    preset_runs: dict[str, list[Path]],
) -> None:
    for runs in preset_runs.values():
        for out in runs:
            margin = read_table(out / "covariance_diagnostics.csv")
            assert margin["uncertainty_margin"].min() >= -1e-8
            assert read_manifest(out).status == "complete"


def test_psi_starts_at_zero(preset_runs: dict[str, list[Path]]) -> None:
    for runs in preset_runs.values():
        for out in runs:
            np.testing.assert_array_equal(read_table(out / "psi.csv")["psi_initial"], 0)


def test_psi_domains_follow_order_parameter(
    preset_runs: dict[str, list[Path]],
) -> None:
    for out in _chimera_runs(preset_runs):
        table = read_table(out / "psi.csv")
        psi, order = table["psi"], table["order"]
        n_nodes = len(psi)
        coherent = order > 0.5 * (LO + HI)
        roughness = np.abs(np.roll(psi, -1) - 2.0 * psi + np.roll(psi, 1))
        cutoff = np.sqrt(
            max(np.median(roughness[coherent]), 1e-300)
            * max(np.median(roughness[~coherent]), 1e-300)
        )
        regular = roughness < cutoff
        psi_edges = _boundaries(regular)
        for edge in _boundaries(coherent):
            assert min(_ring_gap(edge, e, n_nodes) for e in psi_edges) <= 3


def test_squeezing_follows_domains(preset_runs: dict[str, list[Path]]) -> None:
    for out in _chimera_runs(preset_runs):
        table = read_table(out / "psi.csv")
        angles, order = table["squeeze_angle"], table["order"]
        assert circular_spread(angles[order > HI]) < 0.3
        assert circular_spread(angles[order < LO]) > 0.8


def test_mutual_information_orders_regimes(
    preset_runs: dict[str, list[Path]],
) -> None:
    i2 = {
        name: np.array([_i2_at(out, MI_CUT) for out in runs])
        for name, runs in preset_runs.items()
    }
    spread = 3.0 * max(values.std() for values in i2.values())
    assert i2["desync"].mean() - i2["chimera"].mean() > spread
    assert i2["chimera"].mean() - i2["sync"].mean() > spread


def test_chimera_mi_scan_is_asymmetric(preset_runs: dict[str, list[Path]]) -> None:
    sync = max(
        read_manifest(out).results["mi_asymmetry"] for out in preset_runs["sync"]
    )
    for out in _chimera_runs(preset_runs):
        assert read_manifest(out).results["mi_asymmetry"] > 10.0 * sync


def test_mi_slope_changes_at_domain_edge(preset_runs: dict[str, list[Path]]) -> None:
    for out in _chimera_runs(preset_runs):
        scan = read_table(out / "mi_scan.csv")
        order = read_table(out / "psi.csv")["order"]
        cuts, i2 = scan["L"].astype(int), scan["I2"]
        curvature = np.abs(i2[2:] - 2.0 * i2[1:-1] + i2[:-2])
        kink = int(cuts[1:-1][np.argmax(curvature)])
        edges = _boundaries(order > 0.5 * (LO + HI))
        assert min(abs(kink - int(edge)) for edge in edges) <= 3
