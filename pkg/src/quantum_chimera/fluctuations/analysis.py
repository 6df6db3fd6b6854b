"""
Observables derived from the covariance matrix: the coupling-weighted momentum
correlation Psi_l, per-node squeezing ellipses and Husimi densities.
"""

import numpy as np
import structlog
from scipy.special import gammaln
from scipy.stats import circstd, multivariate_normal

from quantum_chimera.exceptions import InvalidStateError, RangeError, ShapeError
from quantum_chimera.fluctuations.schemas import (
    CovarianceState,
    GridSpec,
    HusimiField,
    SqueezingAxes,
)
from quantum_chimera.ring.schemas import RingCoupling

logger = structlog.get_logger(__name__)

ISOTROPY_TOLERANCE = 1e-12


def weighted_correlation(C: CovarianceState, coupling: RingCoupling) -> np.ndarray:
    """
    Coupling-weighted spatial average of momentum correlations.

    Psi_l = (V/2d) sum over 0 < distance(l, m) <= d of C[p_l, p_m], which is
    the row sum of K * C_pp.

    Raises:
        ShapeError: If C and the coupling disagree on N
    """
    if C.n_nodes != coupling.n_nodes:
        msg = f"Covariance has {C.n_nodes} nodes, coupling has {coupling.n_nodes}"
        raise ShapeError(msg)
    momentum = C.C[1::2, 1::2]
    return np.sum(coupling.matrix * momentum, axis=1)


def squeezing_axes(C: CovarianceState, node: int) -> SqueezingAxes:
    """
    Principal axes of the 2 x 2 covariance block of a 1-based node.

    Raises:
        RangeError: If ``node`` is not in [1, N]
    """
    if not 1 <= node <= C.n_nodes:
        msg = f"Node {node} outside [1, {C.n_nodes}]"
        raise RangeError(msg)
    block = C.node_block(node)
    variances, vectors = np.linalg.eigh(block)
    minor, major = float(variances[0]), float(variances[1])
    if major - minor <= ISOTROPY_TOLERANCE * max(abs(major), 1.0):
        return SqueezingAxes(angle=0.0, minor=minor, major=major, isotropic=True)
    direction = vectors[:, 0]
    angle = float(np.mod(np.arctan2(direction[1], direction[0]), np.pi))
    return SqueezingAxes(angle=angle, minor=minor, major=major, isotropic=False)


def circular_spread(angles: np.ndarray) -> float:
    """Circular standard deviation of axial angles defined modulo pi."""
    return float(circstd(2.0 * np.asarray(angles), high=2.0 * np.pi, low=0.0) / 2.0)


def husimi_node(
    C: CovarianceState,
    alpha_l: complex,
    node: int,
    hbar: float,
    grid: GridSpec | None = None,
) -> HusimiField:
    """
    Gaussian Husimi density of one node's reduced state.

    The Husimi function is the Wigner function smoothed by a vacuum Gaussian,
    so its covariance is the node block plus (hbar/2) I, centred at
    sqrt(2 hbar) (Re alpha_l, Im alpha_l).

    Args:
        C: Network covariance
        alpha_l: Mean field of the node
        node: 1-based node label
        hbar: Action scale
        grid: Evaluation lattice; defaults to +-6 standard deviations

    Returns:
        HusimiField normalized as a probability density over (q, p)

    Raises:
        RangeError: If ``node`` is not in [1, N]
        InvalidStateError: If the smoothed block is not positive definite
    """
    if not 1 <= node <= C.n_nodes:
        msg = f"Node {node} outside [1, {C.n_nodes}]"
        raise RangeError(msg)
    smoothed = C.node_block(node) + 0.5 * hbar * np.eye(2)
    if np.linalg.eigvalsh(smoothed)[0] <= 0:
        msg = f"Smoothed covariance of node {node} is not positive definite"
        raise InvalidStateError(msg)
    mean = np.sqrt(2.0 * hbar) * np.array([alpha_l.real, alpha_l.imag])
    grid = grid or GridSpec.around(mean, smoothed)
    q, p = grid.axes()
    qq, pp = np.meshgrid(q, p)
    values = multivariate_normal(mean=mean, cov=smoothed).pdf(np.dstack([qq, pp]))
    return HusimiField(
        grid=grid,
        values=np.asarray(values).reshape(qq.shape),
        metadata={
            "node": node,
            "t": C.t,
            "normalization": "density over (q, p); Q_z = 2 hbar Q_qp",
        },
    )


def husimi_from_density(
    rho: np.ndarray, grid: GridSpec, hbar: float
) -> HusimiField:
    """
    Husimi density <z|rho|z>/pi of a truncated single-site density matrix.

    Evaluated on the (q, p) grid with z = (q + ip)/sqrt(2 hbar) and converted to
    a density over (q, p), so it is comparable with :func:`husimi_node`.
    """
    levels = np.arange(rho.shape[0])
    q, p = grid.axes()
    qq, pp = np.meshgrid(q, p)
    z = (qq + 1j * pp).ravel() / np.sqrt(2.0 * hbar)
    # <n|z> = exp(-|z|^2/2) z^n / sqrt(n!)
    amplitudes = (
        np.power(z[:, None], levels)
        * np.exp(-0.5 * gammaln(levels + 1))
        * np.exp(-0.5 * np.abs(z) ** 2)[:, None]
    )
    values = np.einsum("gi,ij,gj->g", amplitudes.conj(), rho, amplitudes).real
    values = values / np.pi / (2.0 * hbar)
    return HusimiField(
        grid=grid,
        values=values.reshape(qq.shape),
        metadata={"normalization": "density over (q, p); Q_z = 2 hbar Q_qp"},
    )
