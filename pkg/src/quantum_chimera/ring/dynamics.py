"""
Mean-field equations of the quantum Van der Pol ring.

Each node obeys a Stuart-Landau equation with linear gain kappa1 and
nonlinear loss 2 kappa2 |alpha|^2, and the nodes exchange amplitude through
the coupling matrix:

    d alpha_l / dt = alpha_l (kappa1 - 2 kappa2 |alpha_l|^2) - i sum_s K_ls alpha_s
"""

from typing import Any

import numpy as np
import structlog

from quantum_chimera.exceptions import DivergenceError, ShapeError
from quantum_chimera.integrator import integrate_fixed
from quantum_chimera.ring.schemas import (
    MeanFieldState,
    MeanFieldTrajectory,
    NetworkParams,
    RingCoupling,
)
from quantum_chimera.settings import settings

logger = structlog.get_logger(__name__)


def _check_dimensions(n_state: int, coupling: RingCoupling) -> None:
    if n_state != coupling.n_nodes:
        msg = f"State has {n_state} nodes but the coupling has {coupling.n_nodes}"
        raise ShapeError(msg)


def mean_field_derivative(
    alpha: np.ndarray, coupling_matrix: np.ndarray, params: NetworkParams
) -> np.ndarray:
    """Right-hand side on a bare complex vector (no shape checks)."""
    gain = params.kappa1 - 2.0 * params.kappa2 * (alpha.real**2 + alpha.imag**2)
    return alpha * gain - 1j * (coupling_matrix @ alpha)


def mean_field_rhs(
    state: MeanFieldState, coupling: RingCoupling, params: NetworkParams
) -> np.ndarray:
    """
    Evaluate the mean-field right-hand side.

    Args:
        state: Current amplitudes
        coupling: Ring coupling (no implicit 1/N factor is applied)
        params: Rates kappa1, kappa2

    Returns:
        Complex vector d alpha / dt

    Raises:
        ShapeError: If the state and the coupling disagree on N
    """
    _check_dimensions(state.n_nodes, coupling)
    return mean_field_derivative(state.alpha, coupling.matrix, params)


def integrate_mean_field(
    state0: MeanFieldState,
    coupling: RingCoupling,
    params: NetworkParams,
    t_end: float,
    dt: float | None = None,
    sample_every: int = 1,
    metadata: dict[str, Any] | None = None,
) -> MeanFieldTrajectory:
    """
    Integrate the mean-field equations with fixed-step RK4.

    Args:
        state0: Initial state; its time is the start time
        coupling: Ring coupling
        params: Network constants
        t_end: End time (units of 1/kappa1)
        dt: Step size, defaults to ``settings.dt``
        sample_every: Record every n-th step (the last step is always kept)
        metadata: Extra entries (seed, generator) stored on the trajectory

    Returns:
        MeanFieldTrajectory whose final time lies within dt of t_end

    Raises:
        ShapeError: On dimension mismatch
        DivergenceError: If any |alpha_l| exceeds ``settings.divergence_bound``
            or becomes non-finite
    """
    _check_dimensions(state0.n_nodes, coupling)
    step = settings.dt if dt is None else dt
    bound = settings.divergence_bound
    matrix = coupling.matrix

    def rhs(_t: float, alpha: np.ndarray) -> np.ndarray:
        return mean_field_derivative(alpha, matrix, params)

    def guard(t: float, alpha: np.ndarray) -> np.ndarray:
        peak = np.max(np.abs(alpha))
        if not np.isfinite(peak) or peak > bound:
            logger.error("mean_field_diverged", t=t, peak=float(peak), bound=bound)
            msg = f"Mean field diverged at t={t:.6g}: max |alpha| = {peak:.3g}"
            raise DivergenceError(msg, t=t)
        return alpha

    result = integrate_fixed(
        rhs,
        state0.t,
        state0.alpha.astype(complex),
        t_end,
        step,
        sample_every=sample_every,
        after_step=guard,
    )
    logger.debug(
        "integrate_mean_field",
        t0=state0.t,
        t_end=float(result.times[-1]),
        steps=result.steps,
        samples=len(result.samples),
    )
    meta: dict[str, Any] = {"dt": step, "sample_every": sample_every}
    meta.update(metadata or {})
    return MeanFieldTrajectory(
        times=result.times,
        alphas=np.vstack(result.samples),
        params=params,
        coupling=coupling,
        metadata=meta,
    )
