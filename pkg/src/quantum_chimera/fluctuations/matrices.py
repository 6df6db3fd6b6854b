"""
Drift and diffusion of the linearized fluctuation dynamics.

Writing the fluctuation of node l as (q + i p)/sqrt(2 hbar), the linearized
equation

    d a_l/dt = (kappa1 - 4 kappa2 |alpha_l|^2) a_l - 2 kappa2 alpha_l^2 a_l^*
               - i sum_s K_ls a_s

becomes a real 2N x 2N drift A whose node blocks are

    (kappa1 - 4 kappa2 |alpha|^2) I - 2 kappa2 [[u, v], [v, -u]],  u + iv = alpha^2

and whose off-diagonal blocks are K_ls [[0, 1], [-1, 0]]. One-photon gain and
linearized two-photon loss add phase-insensitive noise, giving the isotropic
diffusion block hbar (kappa1 + 4 kappa2 |alpha|^2) I.
"""

import numpy as np

from quantum_chimera.exceptions import ShapeError
from quantum_chimera.fluctuations.schemas import (
    CovarianceState,
    DiffusionMatrix,
    DriftMatrix,
)
from quantum_chimera.ring.schemas import MeanFieldState, NetworkParams, RingCoupling

ROTATION = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_nodes: int) -> np.ndarray:
    """Block-diagonal symplectic form Omega for the (q1, p1, ..., qN, pN) order."""
    return np.kron(np.eye(n_nodes), ROTATION)


def drift_entries(
    alpha: np.ndarray, coupling_matrix: np.ndarray, params: NetworkParams
) -> np.ndarray:
    """Drift matrix for a bare amplitude vector."""
    n_nodes = alpha.shape[0]
    squared = alpha * alpha
    u, v = squared.real, squared.imag
    gain = params.kappa1 - 4.0 * params.kappa2 * np.abs(alpha) ** 2
    k2 = 2.0 * params.kappa2

    entries = np.kron(coupling_matrix, ROTATION)
    q = 2 * np.arange(n_nodes)
    p = q + 1
    entries[q, q] = gain - k2 * u
    entries[q, p] = -k2 * v
    entries[p, q] = -k2 * v
    entries[p, p] = gain + k2 * u
    return entries


def diffusion_entries(alpha: np.ndarray, params: NetworkParams) -> np.ndarray:
    """Diffusion matrix for a bare amplitude vector."""
    node = params.hbar * (params.kappa1 + 4.0 * params.kappa2 * np.abs(alpha) ** 2)
    return np.diag(np.repeat(node, 2))


def drift_matrix(
    state: MeanFieldState, coupling: RingCoupling, params: NetworkParams
) -> DriftMatrix:
    """
    Drift matrix A(t) of the quadrature fluctuations.

    Raises:
        ShapeError: If the state and the coupling disagree on N
    """
    if state.n_nodes != coupling.n_nodes:
        msg = f"State has {state.n_nodes} nodes but the coupling has {coupling.n_nodes}"
        raise ShapeError(msg)
    return DriftMatrix(
        entries=drift_entries(state.alpha, coupling.matrix, params), t=state.t
    )


def diffusion_matrix(state: MeanFieldState, params: NetworkParams) -> DiffusionMatrix:
    """
    Diffusion matrix B(t) of the quadrature fluctuations.

    Raises:
        ShapeError: If the state size differs from ``params.n_nodes``
    """
    if state.n_nodes != params.n_nodes:
        msg = f"State has {state.n_nodes} nodes, params expect {params.n_nodes}"
        raise ShapeError(msg)
    return DiffusionMatrix(entries=diffusion_entries(state.alpha, params), t=state.t)


def coherent_covariance(n_nodes: int, hbar: float, t: float = 0.0) -> CovarianceState:
    """Covariance (hbar/2) I of a product of coherent states."""
    return CovarianceState(t=t, C=0.5 * hbar * np.eye(2 * n_nodes))


def uncertainty_margin(C: np.ndarray, hbar: float) -> float:
    """Smallest eigenvalue of the Hermitian matrix C + i (hbar/2) Omega."""
    n_nodes = C.shape[0] // 2
    hermitian = C + 0.5j * hbar * symplectic_form(n_nodes)
    return float(np.linalg.eigvalsh(hermitian)[0])


def gaussian_purity(C: np.ndarray, hbar: float) -> float:
    """Purity tr(rho^2) = 1 / sqrt(det(2C/hbar)) of a Gaussian state."""
    _, log_det = np.linalg.slogdet(2.0 * C / hbar)
    return float(np.exp(-0.5 * log_det))
