"""
Gaussian Rényi-2 entropies and mutual information.

For a Gaussian state with covariance C the Rényi-2 entropy is
S2 = 1/2 ln det(2C/hbar), and the mutual information of a cut A:B is
I2 = S2(A) + S2(B) - S2(AB). Log-determinants come from a Cholesky
factorization accumulated in log space, which stays finite for 2N = 100.
"""

from collections.abc import Sequence

import numpy as np
import structlog
from scipy.linalg import LinAlgError, cholesky, ldl

from quantum_chimera.exceptions import (
    ConditioningError,
    InvalidStateError,
    RangeError,
    ShapeError,
)
from quantum_chimera.fluctuations.schemas import CovarianceState
from quantum_chimera.info.schemas import Bipartition, MIScan, MutualInformation

logger = structlog.get_logger(__name__)

PHYSICAL_TOLERANCE = 1e-6
CLIP_FLOOR = 1e-8


def _ldl_diagnostics(M: np.ndarray) -> dict[str, float | int]:
    _, d, _ = ldl(M, lower=True)
    pivots = np.linalg.eigvalsh(d)
    return {
        "log_abs_det": float(np.sum(np.log(np.abs(pivots)))),
        "negative_pivots": int(np.sum(pivots < 0)),
        "min_pivot": float(np.min(pivots)),
        "max_pivot": float(np.max(pivots)),
    }


def log_det_spd(M: np.ndarray) -> float:
    """
    Log-determinant of a symmetric positive-definite matrix.

    Raises:
        ConditioningError: If the Cholesky factorization fails; LDL pivot
            magnitudes are attached as diagnostics
    """
    try:
        factor = cholesky(M, lower=True, check_finite=True)
    except (LinAlgError, ValueError) as e:
        diagnostics = _ldl_diagnostics(M) if np.all(np.isfinite(M)) else {}
        logger.warning("cholesky_failed", **diagnostics)
        msg = f"Matrix is singular or not positive definite: {diagnostics}"
        raise ConditioningError(msg, diagnostics=diagnostics) from e
    return float(2.0 * np.sum(np.log(np.diag(factor))))


def _node_rows(nodes: Sequence[int]) -> np.ndarray:
    idx = np.asarray(nodes, dtype=int)
    return np.ravel(np.column_stack([2 * idx, 2 * idx + 1]))


def renyi2_entropy(C_sub: np.ndarray, hbar: float) -> float:
    """
    Rényi-2 entropy 1/2 ln det(2C/hbar) of an M-mode covariance (nats).

    Raises:
        ShapeError: If C_sub is not a square matrix of even size
        InvalidStateError: If det(2C/hbar) < 1 - 1e-6 or 2C/hbar is not
            positive definite
    """
    rows, cols = C_sub.shape
    if rows != cols or rows % 2:
        msg = f"Covariance must be square with even size, got {C_sub.shape}"
        raise ShapeError(msg)
    try:
        log_det = log_det_spd(2.0 * C_sub / hbar)
    except ConditioningError as e:
        msg = "Covariance is not positive definite and cannot describe a state"
        raise InvalidStateError(msg) from e
    if log_det < np.log1p(-PHYSICAL_TOLERANCE):
        msg = f"det(2C/hbar) = {np.exp(log_det):.6g} < 1 violates the uncertainty bound"
        raise InvalidStateError(msg)
    return 0.5 * log_det


def cut_entropies(
    C: CovarianceState, nodes_a: Sequence[int], hbar: float
) -> MutualInformation:
    """
    Entropies and mutual information of the cut between ``nodes_a`` and the rest.

    Args:
        C: Network covariance
        nodes_a: 0-based node indices of Alice
        hbar: Action scale

    Raises:
        RangeError: If Alice is empty, the whole network, or has bad indices
        ConditioningError: If a block is singular, or I2 < -1e-8
    """
    n_nodes = C.n_nodes
    alice = sorted(set(nodes_a))
    if not alice or len(alice) >= n_nodes or alice[0] < 0 or alice[-1] >= n_nodes:
        msg = f"Invalid Alice subset {list(nodes_a)} for N={n_nodes}"
        raise RangeError(msg)
    taken = set(alice)
    bob = [m for m in range(n_nodes) if m not in taken]
    scaled = 2.0 * C.C / hbar
    rows_a, rows_b = _node_rows(alice), _node_rows(bob)
    s2_a = 0.5 * log_det_spd(scaled[np.ix_(rows_a, rows_a)])
    s2_b = 0.5 * log_det_spd(scaled[np.ix_(rows_b, rows_b)])
    s2_ab = 0.5 * log_det_spd(scaled)
    i2 = s2_a + s2_b - s2_ab
    clipped = False
    if i2 < -CLIP_FLOOR:
        diagnostics = {"s2_a": s2_a, "s2_b": s2_b, "s2_ab": s2_ab, "i2": i2}
        msg = f"Mutual information {i2:.3e} is negative beyond round-off"
        raise ConditioningError(msg, diagnostics=diagnostics)
    if i2 < 0:
        logger.warning("mutual_information_clipped", i2=i2, alice_size=len(alice))
        i2, clipped = 0.0, True
    return MutualInformation(s2_a=s2_a, s2_b=s2_b, s2_ab=s2_ab, i2=i2, clipped=clipped)


def mutual_information(C: CovarianceState, part: Bipartition, hbar: float) -> float:
    """
    Rényi-2 mutual information of the contiguous cut 1..L : L+1..N (nats).

    Raises:
        ShapeError: If the partition and the covariance disagree on N
        ConditioningError: If a block is singular or the result is negative
            beyond 1e-8
    """
    if part.N != C.n_nodes:
        msg = f"Partition is for N={part.N} but the covariance has {C.n_nodes} nodes"
        raise ShapeError(msg)
    return cut_entropies(C, part.alice, hbar).i2


def mutual_information_subsets(
    C: CovarianceState, nodes_a: Sequence[int], hbar: float
) -> float:
    """Mutual information for an arbitrary Alice given as 1-based node labels."""
    return cut_entropies(C, [n - 1 for n in nodes_a], hbar).i2


def mi_scan(C: CovarianceState, hbar: float) -> MIScan:
    """Mutual information of every contiguous cut L = 1..N-1."""
    rows = [cut_entropies(C, range(L), hbar) for L in range(1, C.n_nodes)]
    return MIScan(
        L=np.arange(1, C.n_nodes),
        s2_a=np.array([r.s2_a for r in rows]),
        s2_b=np.array([r.s2_b for r in rows]),
        s2_ab=np.array([r.s2_ab for r in rows]),
        i2=np.array([r.i2 for r in rows]),
        clipped=np.array([r.clipped for r in rows]),
    )


def mi_timeseries(
    states: Sequence[CovarianceState], L: int, hbar: float
) -> np.ndarray:
    """I2 at a fixed Alice size L for each covariance snapshot."""
    return np.array(
        [
            mutual_information(s, Bipartition(L=L, N=s.n_nodes), hbar)
            for s in states
        ]
    )
