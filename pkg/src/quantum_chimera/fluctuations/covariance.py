"""
Covariance propagation along a mean-field trajectory.

The covariance of a Gaussian state obeys the Lyapunov equation
dC/dt = A(t) C + C A(t)^T + B(t), with A and B evaluated on the mean field.
The equation is integrated with the package RK4 scheme; the mean field between
stored samples comes from a cubic Hermite interpolant that uses the exact
mean-field derivative at every sample, so it is exact at sample times and
fourth-order accurate in between.
"""

from collections.abc import Callable

import numpy as np
import structlog
from scipy.interpolate import CubicHermiteSpline

from quantum_chimera.exceptions import (
    InvalidStateError,
    NumericalInstabilityError,
    RangeError,
    ShapeError,
)
from quantum_chimera.fluctuations.matrices import (
    diffusion_entries,
    drift_entries,
    uncertainty_margin,
)
from quantum_chimera.fluctuations.schemas import (
    CovarianceState,
    CovarianceTrajectory,
)
from quantum_chimera.integrator import integrate_fixed
from quantum_chimera.ring.dynamics import mean_field_derivative
from quantum_chimera.ring.schemas import (
    MeanFieldState,
    MeanFieldTrajectory,
    NetworkParams,
    RingCoupling,
)
from quantum_chimera.settings import settings

logger = structlog.get_logger(__name__)

type MatrixHook = Callable[[float, np.ndarray], np.ndarray]


def frozen_trajectory(
    state: MeanFieldState,
    coupling: RingCoupling,
    params: NetworkParams,
    t_end: float,
) -> MeanFieldTrajectory:
    """Trajectory that holds ``state`` fixed from ``state.t`` to ``t_end``."""
    return MeanFieldTrajectory(
        times=np.array([state.t, t_end]),
        alphas=np.vstack([state.alpha, state.alpha]),
        params=params,
        coupling=coupling,
        metadata={"frozen": True},
    )


class MeanFieldInterpolant:
    """
    Continuous mean field built from trajectory samples.

    Real and imaginary parts are interpolated separately with cubic Hermite
    polynomials whose slopes are the mean-field right-hand side.
    """

    def __init__(self, traj: MeanFieldTrajectory) -> None:
        self.n_nodes = traj.coupling.n_nodes
        self.frozen = bool(traj.metadata.get("frozen", False))
        self._constant = traj.alphas[0]
        self.t_min = float(traj.times[0])
        self.t_max = float(traj.times[-1])
        self._spline: CubicHermiteSpline | None = None
        if not self.frozen and len(traj) > 1:
            slopes = np.vstack(
                [
                    mean_field_derivative(a, traj.coupling.matrix, traj.params)
                    for a in traj.alphas
                ]
            )
            self._spline = CubicHermiteSpline(
                traj.times,
                np.hstack([traj.alphas.real, traj.alphas.imag]),
                np.hstack([slopes.real, slopes.imag]),
                axis=0,
            )

    def __call__(self, t: float) -> np.ndarray:
        if self._spline is None:
            return self._constant
        values = self._spline(t)
        return values[: self.n_nodes] + 1j * values[self.n_nodes :]


def propagate_covariance(
    C0: CovarianceState,
    traj: MeanFieldTrajectory,
    params: NetworkParams,
    dt: float | None = None,
    *,
    sample_every: int = 1,
    drift: MatrixHook | None = None,
    diffusion: MatrixHook | None = None,
) -> CovarianceTrajectory:
    """
    Integrate dC/dt = A C + C A^T + B from ``C0.t`` to the end of ``traj``.

    Args:
        C0: Initial covariance, usually (hbar/2) I
        traj: Mean-field trajectory covering [C0.t, t_end]; a trajectory from
            :func:`frozen_trajectory` keeps A and B constant
        params: Network constants
        dt: RK4 step; defaults to the trajectory step or ``settings.dt``
        sample_every: Record every n-th step
        drift: Optional replacement ``A(t, alpha)`` (test hook)
        diffusion: Optional replacement ``B(t, alpha)`` (test hook)

    Returns:
        CovarianceTrajectory with uncertainty and det-growth diagnostics

    Raises:
        ShapeError: If C0 and the trajectory disagree on N
        InvalidStateError: If C0 is not symmetric
        RangeError: If C0.t lies outside the trajectory span
        NumericalInstabilityError: If C + i(hbar/2)Omega acquires an
            eigenvalue below ``-settings.uncertainty_tolerance``
    """
    n_nodes = traj.coupling.n_nodes
    if C0.C.shape != (2 * n_nodes, 2 * n_nodes):
        msg = f"Covariance shape {C0.C.shape} does not match N={n_nodes}"
        raise ShapeError(msg)
    if np.max(np.abs(C0.C - C0.C.T)) > settings.symmetry_tolerance:
        msg = "Initial covariance is not symmetric"
        raise InvalidStateError(msg)
    alpha_at = MeanFieldInterpolant(traj)
    if not alpha_at.t_min <= C0.t < alpha_at.t_max:
        msg = (
            f"Covariance start t={C0.t} outside trajectory span "
            f"[{alpha_at.t_min}, {alpha_at.t_max})"
        )
        raise RangeError(msg)
    step = float(traj.metadata.get("dt", settings.dt)) if dt is None else dt
    hbar = params.hbar
    tolerance = settings.uncertainty_tolerance
    matrix = traj.coupling.matrix

    def drift_at(_t: float, alpha: np.ndarray) -> np.ndarray:
        return drift_entries(alpha, matrix, params)

    def diffusion_at(_t: float, alpha: np.ndarray) -> np.ndarray:
        return diffusion_entries(alpha, params)

    drift_fn = drift or drift_at
    diffusion_fn = diffusion or diffusion_at
    cache: dict[float, tuple[np.ndarray, np.ndarray]] = {}

    def coefficients(t: float) -> tuple[np.ndarray, np.ndarray]:
        if t not in cache:
            cache.clear()
            alpha = alpha_at(t)
            cache[t] = (drift_fn(t, alpha), diffusion_fn(t, alpha))
        return cache[t]

    def rhs(t: float, C: np.ndarray) -> np.ndarray:
        A, B = coefficients(t)
        AC = A @ C
        return AC + AC.T + B

    margins: dict[float, float] = {C0.t: uncertainty_margin(C0.C, hbar)}

    def symmetrize_and_check(t: float, C: np.ndarray) -> np.ndarray:
        C = 0.5 * (C + C.T)
        margin = uncertainty_margin(C, hbar)
        if margin < -tolerance:
            logger.error("uncertainty_violated", t=t, margin=margin)
            msg = (
                f"Covariance violates the uncertainty relation at t={t:.6g} "
                f"(min eigenvalue {margin:.3e})"
            )
            raise NumericalInstabilityError(msg, t=t)
        margins[t] = margin
        return C

    result = integrate_fixed(
        rhs,
        C0.t,
        C0.C,
        alpha_at.t_max,
        step,
        sample_every=sample_every,
        after_step=symmetrize_and_check,
    )
    states = [
        CovarianceState(t=float(t), C=C)
        for t, C in zip(result.times, result.samples, strict=True)
    ]
    log_det = np.array([np.linalg.slogdet(2.0 * s.C / hbar)[1] for s in states])
    logger.debug(
        "propagate_covariance",
        n_nodes=n_nodes,
        steps=result.steps,
        t_end=float(result.times[-1]),
        final_log_det=float(log_det[-1]),
    )
    return CovarianceTrajectory(
        states=states,
        uncertainty_margin=np.array([margins[float(t)] for t in result.times]),
        log_det=log_det,
    )
