"""
Scenario orchestration.

A scenario integrates the mean field through the transient, restarts the
fluctuations from coherent states at t0, co-propagates mean field and
covariance over the fluctuation window, runs the requested analyses and
writes a manifest that lists every emitted file with its checksum.
"""

from datetime import UTC, datetime
from pathlib import Path
from typing import Any

import numpy as np
import structlog

from quantum_chimera.exceptions import ChimeraError, InsufficientDataError
from quantum_chimera.fluctuations import (
    CovarianceTrajectory,
    circular_spread,
    coherent_covariance,
    husimi_node,
    propagate_covariance,
    squeezing_axes,
    weighted_correlation,
)
from quantum_chimera.info import mi_scan, mi_timeseries
from quantum_chimera.ring import (
    MeanFieldTrajectory,
    build_coupling,
    classify_regime,
    initial_conditions,
    integrate_mean_field,
    local_order_parameter,
)
from quantum_chimera.settings import settings
from quantum_chimera.sim.config import ScenarioConfig, flatten_config
from quantum_chimera.sim.io import (
    Manifest,
    manifest_entry,
    write_covariance,
    write_husimi,
    write_manifest,
    write_mi_scan,
    write_table,
    write_trajectory,
)

logger = structlog.get_logger(__name__)


class ScenarioRunner:
    """
    Runs one scenario and tracks what it has written.

    Attributes:
        config: Validated scenario
        quantum: False runs the mean field only
        out: Output directory
        logger (BoundLogger): Logger bound to the scenario name
    """

    def __init__(self, config: ScenarioConfig, *, quantum: bool = True) -> None:
        self.config = config
        self.quantum = quantum
        self.out = config.resolved_output_dir()
        self.params = config.params
        self.coupling = build_coupling(
            config.params.n_nodes, config.coupling.d, config.coupling.V
        )
        self.files: list[Path] = []
        self.warnings: list[str] = []
        self.results: dict[str, Any] = {}
        self.seed_metadata = {"seed": config.ic.seed, "generator": settings.rng_name}
        self.logger = logger.bind(scenario=config.name, seed=config.ic.seed)

    def _emit(self, *paths: Path) -> None:
        self.files.extend(paths)

    def _warn(self, event: str, message: str, **context: Any) -> None:
        self.logger.warning(event, **context)
        self.warnings.append(message)

    def run(self) -> Manifest:
        """
        Execute all steps and write ``manifest.json``.

        Raises:
            ChimeraError: Any module error, after a partial manifest is written
        """
        self.out.mkdir(parents=True, exist_ok=True)
        self.logger.info("scenario_start", out=str(self.out), quantum=self.quantum)
        try:
            traj = self._mean_field()
            if self.quantum:
                self._fluctuations(traj)
        except ChimeraError as e:
            self.logger.exception("scenario_failed", error=str(e))
            self._finish(status="partial", error=f"{type(e).__name__}: {e}")
            e.add_note(
                f"scenario '{self.config.name}' stopped; partial outputs listed in "
                f"{self.out / 'manifest.json'}"
            )
            raise
        manifest = self._finish(status="complete")
        self.logger.info("scenario_done", files=len(manifest.files), **self.results)
        return manifest

    def _mean_field(self) -> MeanFieldTrajectory:
        schedule = self.config.schedule
        state0 = initial_conditions(self.config.ic, self.params)
        if schedule.t_transient > 0:
            traj = integrate_mean_field(
                state0,
                self.coupling,
                self.params,
                t_end=state0.t + schedule.t_transient,
                dt=schedule.dt,
                sample_every=schedule.sample_every,
                metadata=self.seed_metadata,
            )
        else:
            traj = MeanFieldTrajectory(
                times=np.array([state0.t]),
                alphas=state0.alpha[None, :],
                params=self.params,
                coupling=self.coupling,
                metadata={"dt": schedule.dt, **self.seed_metadata},
            )
        if self.config.analyses.trajectory:
            self._emit(*write_trajectory(traj, self.out / "trajectory.csv"))
        try:
            regime = classify_regime(traj, self.config.order_window)
        except InsufficientDataError as e:
            self._warn("regime_unavailable", str(e), samples=len(traj))
        else:
            self.results["regime"] = regime.label.value
            self.results["low_confidence"] = regime.low_confidence
        return traj

    def _fluctuations(self, traj: MeanFieldTrajectory) -> None:
        schedule, analyses = self.config.schedule, self.config.analyses
        hbar = self.params.hbar
        if schedule.window > 1.0 / self.params.kappa1:
            self._warn(
                "gaussian_validity",
                f"fluctuation window {schedule.window} exceeds 1/kappa1; "
                "non-Gaussian corrections may matter",
                window=schedule.window,
            )
        start = traj.final
        window_traj = integrate_mean_field(
            start,
            self.coupling,
            self.params,
            t_end=start.t + schedule.window,
            dt=schedule.dt,
            metadata=self.seed_metadata,
        )
        cov = propagate_covariance(
            coherent_covariance(self.params.n_nodes, hbar, t=start.t),
            window_traj,
            self.params,
            dt=schedule.dt,
            sample_every=schedule.covariance_sample_every,
        )
        self._emit(
            write_table(
                self.out / "covariance_diagnostics.csv",
                {
                    "t": cov.times,
                    "uncertainty_margin": cov.uncertainty_margin,
                    "log_det": cov.log_det,
                },
            )
        )
        self.results["t0"] = start.t
        self.results["min_uncertainty_margin"] = float(cov.uncertainty_margin.min())

        if analyses.covariance:
            self._emit(
                write_covariance(
                    cov.final, self.out / "covariance.csv", hbar, self.seed_metadata
                )
            )
        if analyses.psi:
            self._node_profile(cov, window_traj)
        for node in analyses.husimi_nodes:
            alpha_l = window_traj.final.alpha[node - 1]
            field = husimi_node(cov.final, alpha_l, node, hbar)
            self._emit(write_husimi(field, self.out / f"husimi_node{node}.csv"))
        self._mutual_information(cov)

    def _node_profile(
        self, cov: CovarianceTrajectory, window_traj: MeanFieldTrajectory
    ) -> None:
        n_nodes = self.params.n_nodes
        axes = [squeezing_axes(cov.final, node) for node in range(1, n_nodes + 1)]
        angles = np.array([a.angle for a in axes])
        self._emit(
            write_table(
                self.out / "psi.csv",
                {
                    "node": np.arange(1, n_nodes + 1),
                    "psi": weighted_correlation(cov.final, self.coupling),
                    "psi_initial": weighted_correlation(cov.states[0], self.coupling),
                    "order": local_order_parameter(
                        window_traj.final, self.config.order_window
                    ),
                    "squeeze_angle": angles,
                    "squeeze_minor": [a.minor for a in axes],
                    "squeeze_major": [a.major for a in axes],
                },
            )
        )
        self.results["squeezing_spread"] = circular_spread(angles)

    def _mutual_information(self, cov: CovarianceTrajectory) -> None:
        hbar, n_nodes = self.params.hbar, self.params.n_nodes
        analyses = self.config.analyses
        half = mi_timeseries(cov.states, n_nodes // 2, hbar)
        self.results["I2_half"] = float(half[-1])
        self.results["I2_half_mean"] = float(half.mean())
        if analyses.mi_timeseries is not None:
            series = mi_timeseries(cov.states, analyses.mi_timeseries, hbar)
            self._emit(
                write_table(
                    self.out / "mi_timeseries.csv", {"t": cov.times, "I2": series}
                )
            )
        if analyses.mi_scan:
            scan = mi_scan(cov.final, hbar)
            self.results["mi_asymmetry"] = scan.asymmetry()
            self._emit(
                *write_mi_scan(
                    scan, self.out / "mi_scan.csv", {"t": cov.final.t, "N": n_nodes}
                )
            )

    def _finish(self, status: str, error: str | None = None) -> Manifest:
        manifest = Manifest(
            name=self.config.name,
            status=status,
            files=[manifest_entry(p, self.out) for p in self.files],
            seed=self.config.ic.seed,
            generator=settings.rng_name,
            config=flatten_config(self.config),
            results=self.results,
            warnings=self.warnings,
            error=error,
            created=datetime.now(UTC).isoformat(),
        )
        write_manifest(manifest, self.out)
        return manifest


def run_scenario(config: ScenarioConfig, *, quantum: bool = True) -> Manifest:
    """Run ``config`` and return its manifest (see :class:`ScenarioRunner`)."""
    return ScenarioRunner(config, quantum=quantum).run()
