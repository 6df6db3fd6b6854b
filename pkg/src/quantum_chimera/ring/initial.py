"""
Gaussian phase-profile initial conditions.

All nodes start on a circle of common radius; the phases follow a Gaussian
envelope centred at mu whose weight theta is drawn uniformly from
(-theta_range, theta_range), either once per node (a scattered profile) or
once per run (a smooth bump).
"""

import math

import numpy as np
import structlog

from quantum_chimera.exceptions import RangeError
from quantum_chimera.ring.schemas import (
    InitialConditionSpec,
    MeanFieldState,
    NetworkParams,
    ThetaMode,
)
from quantum_chimera.settings import settings

logger = structlog.get_logger(__name__)


def initial_phases(
    ic: InitialConditionSpec, n_nodes: int, theta: np.ndarray
) -> np.ndarray:
    """Phase profile phi_l for 1-based node labels l given the weights theta_l."""
    mu = n_nodes / 2 if ic.mu is None else ic.mu
    labels = np.arange(1, n_nodes + 1)
    envelope = np.exp(-((labels - mu) ** 2) / (2.0 * ic.sigma**2))
    return theta / (math.sqrt(2.0 * math.pi) * ic.sigma) * envelope


def initial_conditions(
    ic: InitialConditionSpec, params: NetworkParams, t0: float = 0.0
) -> MeanFieldState:
    """
    Draw the initial mean field for a ring.

    Args:
        ic: Initial-condition recipe
        params: Network constants (N and the limit-cycle radius)
        t0: Time stamp of the returned state

    Returns:
        MeanFieldState with |alpha_l| = ic.amplitude and Gaussian phases

    Raises:
        RangeError: If mu is outside [1, N]
    """
    n_nodes = params.n_nodes
    mu = n_nodes / 2 if ic.mu is None else ic.mu
    if not 1 <= mu <= n_nodes:
        msg = f"Gaussian centre mu={mu} must lie in [1, {n_nodes}]"
        raise RangeError(msg)
    amplitude = (
        params.limit_cycle_radius if ic.amplitude is None else ic.amplitude
    )
    rng = np.random.default_rng(ic.seed)
    size = n_nodes if ic.theta_mode is ThetaMode.PER_NODE else 1
    theta = np.broadcast_to(
        rng.uniform(-ic.theta_range, ic.theta_range, size=size), (n_nodes,)
    )
    phi = initial_phases(ic, n_nodes, theta)
    logger.debug(
        "initial_conditions",
        seed=ic.seed,
        generator=settings.rng_name,
        amplitude=amplitude,
        mu=mu,
        theta_mode=ic.theta_mode.value,
    )
    return MeanFieldState(t=t0, alpha=amplitude * np.exp(1j * phi))
