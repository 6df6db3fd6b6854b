"""
Synchronization diagnostics.

The local order parameter R_l measures phase coherence among the distinct
nodes within w steps of node l. Time-averaging it over the tail of a
trajectory separates synchronized, desynchronized and chimera regimes; the
tail snapshots are first rolled onto a common frame so that a coherent domain
drifting along the ring is not smeared out.
"""

import numpy as np
import structlog

from quantum_chimera.exceptions import InsufficientDataError, RangeError
from quantum_chimera.ring.schemas import (
    MeanFieldState,
    MeanFieldTrajectory,
    Regime,
    RegimeClassification,
)

logger = structlog.get_logger(__name__)

MIN_SAMPLES = 10
TAIL_FRACTION = 0.2
DOMAIN_FRACTION = 0.25
DEFAULT_THRESHOLDS = (0.6, 0.85)
# Relative size below which an R_l profile has no defined centre
CENTROID_FLOOR = 1e-9


def neighbour_offsets(window: int, n_nodes: int) -> list[int]:
    """Distinct nonzero ring offsets within ``window``; w = N/2 keeps one antipode."""
    offsets = {k % n_nodes for k in range(1, window + 1)}
    offsets |= {-k % n_nodes for k in range(1, window + 1)}
    return sorted(offsets - {0})


def _windowed_coherence(phase: np.ndarray, window: int) -> np.ndarray:
    """Mean of exp(i phi_m) over the distinct neighbours m, along the last axis."""
    unit = np.exp(1j * phase)
    offsets = neighbour_offsets(window, phase.shape[-1])
    total = np.zeros_like(unit)
    for offset in offsets:
        total += np.roll(unit, offset, axis=-1)
    return np.abs(total) / len(offsets)


def align_profiles(order: np.ndarray) -> np.ndarray:
    """
    Roll each row of R_l so that its centre of coherence matches the last row's.

    The centre is the circular mean of node positions weighted by R_l. Rows
    without a defined centre, such as uniform profiles, stay in place.
    """
    n_nodes = order.shape[-1]
    positions = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    centroid = order @ positions
    defined = np.abs(centroid) > CENTROID_FLOOR * n_nodes
    if not defined[-1]:
        return order
    turn = np.angle(centroid[-1] * centroid.conj())
    shifts = np.where(defined, np.rint(turn * n_nodes / (2.0 * np.pi)), 0)
    return np.stack(
        [np.roll(row, int(shift)) for row, shift in zip(order, shifts, strict=True)]
    )


def _check_window(window: int, n_nodes: int) -> None:
    if not 1 <= window <= n_nodes / 2:
        msg = f"Window w={window} must satisfy 1 <= w <= N/2 = {n_nodes / 2}"
        raise RangeError(msg)


def local_order_parameter(state: MeanFieldState, window: int) -> np.ndarray:
    """
    Local order parameter of every node.

    Args:
        state: Mean-field snapshot
        window: Neighbours w on each side, 1 <= w <= N/2

    Returns:
        Real vector R_l in [0, 1]

    Raises:
        RangeError: If the window is out of range
    """
    _check_window(window, state.n_nodes)
    return _windowed_coherence(state.phase, window)


def classify_regime(
    traj: MeanFieldTrajectory,
    window: int,
    thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
) -> RegimeClassification:
    """
    Label a trajectory as synchronized, desynchronized or chimera.

    R_l is averaged over the samples in the final 20% of the time span, each
    snapshot rolled onto the frame of the last one (see :func:`align_profiles`).
    All nodes above ``hi`` gives synchronized, all below ``lo`` desynchronized,
    and at least a quarter of the nodes on each side gives chimera. Anything
    else falls back to the closer pure label with ``low_confidence`` set.

    Args:
        traj: Sampled trajectory with at least 10 samples
        window: Order-parameter window w
        thresholds: Pair (lo, hi)

    Returns:
        RegimeClassification

    Raises:
        InsufficientDataError: If the trajectory has fewer than 10 samples
        RangeError: If the window or thresholds are invalid
    """
    if len(traj) < MIN_SAMPLES:
        msg = f"Need at least {MIN_SAMPLES} samples to classify, got {len(traj)}"
        raise InsufficientDataError(msg)
    lo, hi = thresholds
    if not 0 <= lo <= hi <= 1:
        msg = f"Thresholds must satisfy 0 <= lo <= hi <= 1, got {thresholds}"
        raise RangeError(msg)
    _check_window(window, traj.coupling.n_nodes)

    t_first, t_last = float(traj.times[0]), float(traj.times[-1])
    tail = traj.times >= t_last - TAIL_FRACTION * (t_last - t_first)
    snapshots = _windowed_coherence(np.angle(traj.alphas[tail]), window)
    order = align_profiles(snapshots).mean(axis=0)

    coherent = np.mean(order > hi)
    incoherent = np.mean(order < lo)
    low_confidence = False
    if coherent == 1.0:
        label = Regime.SYNCHRONIZED
    elif incoherent == 1.0:
        label = Regime.DESYNCHRONIZED
    elif coherent >= DOMAIN_FRACTION and incoherent >= DOMAIN_FRACTION:
        label = Regime.CHIMERA
    else:
        low_confidence = True
        label = (
            Regime.SYNCHRONIZED
            if order.mean() >= 0.5 * (lo + hi)
            else Regime.DESYNCHRONIZED
        )
    logger.info(
        "classify_regime",
        label=label.value,
        low_confidence=low_confidence,
        coherent_fraction=float(coherent),
        incoherent_fraction=float(incoherent),
    )
    return RegimeClassification(
        label=label, low_confidence=low_confidence, order=order
    )
