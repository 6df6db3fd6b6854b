"""
Nonlocal ring coupling.

Nodes l and m interact with strength V/(2d) when their distance along the ring,
min(|l - m|, N - |l - m|), is between 1 and d inclusive.
"""

import numpy as np
import structlog

from quantum_chimera.exceptions import RangeError, SizeError
from quantum_chimera.ring.schemas import RingCoupling

logger = structlog.get_logger(__name__)

MIN_NODES = 2


def ring_distance(n_nodes: int) -> np.ndarray:
    """Integer matrix of periodic distances min(|l - m|, N - |l - m|)."""
    if n_nodes < MIN_NODES:
        msg = f"A ring needs at least {MIN_NODES} nodes, got n_nodes={n_nodes}"
        raise SizeError(msg)
    idx = np.arange(n_nodes)
    gap = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(gap, n_nodes - gap)


def build_coupling(n_nodes: int, d: int, V: float) -> RingCoupling:
    """
    Build the circulant coupling matrix K of a ring.

    Args:
        n_nodes: Number of nodes N (>= 2)
        d: Coupling range, 1 <= d <= N/2
        V: Coupling strength (>= 0)

    Returns:
        RingCoupling with K[l, m] = V/(2d) for 0 < distance(l, m) <= d

    Raises:
        SizeError: If n_nodes < 2
        RangeError: If d is outside [1, N/2] or V is negative
    """
    distance = ring_distance(n_nodes)
    if not 1 <= d <= n_nodes / 2:
        msg = f"Coupling range d={d} must satisfy 1 <= d <= N/2 = {n_nodes / 2}"
        raise RangeError(msg)
    if V < 0:
        msg = f"Coupling strength must be non-negative, got V={V}"
        raise RangeError(msg)
    matrix = np.where((distance >= 1) & (distance <= d), V / (2.0 * d), 0.0)
    logger.debug("build_coupling", n_nodes=n_nodes, d=d, V=V)
    return RingCoupling(strength=float(V), d=int(d), matrix=matrix)
