"""
Oracles for the linearized co-moving-frame dynamics.

With the mean field frozen at alpha, the fluctuation master equation is
quadratic in the ladder operators:

    H/hbar = sum_l i kappa2 (conj(alpha_l)^2 a_l^2 - alpha_l^2 a_l^dag^2)
             + sum_{l != m} K_lm a_l^dag a_m
    jumps:   2 kappa1 D(a_l^dag),  8 kappa2 |alpha_l|^2 D(a_l)

so the first and second moments obey a closed linear system. Writing
P = diag(kappa1 - 4 kappa2 |alpha|^2) - iK and Q_l = -2 kappa2 alpha_l^2,

    d<a>/dt  = P <a> + Q conj(<a>)
    dM/dt    = P M + M P^T + diag(Q) N + (diag(Q) N)^T + diag(Q)
    dN/dt    = conj(P) N + N P^T + diag(conj(Q)) M + conj(M) diag(Q) + 2 kappa1 I

with M_lm = <a_l a_m> and N_lm = <a_l^dag a_m>.
"""

import numpy as np
import structlog

from quantum_chimera.exceptions import ShapeError
from quantum_chimera.fluctuations.schemas import CovarianceState
from quantum_chimera.fock.lindblad import (
    LindbladGenerator,
    check_capacity,
    network_hamiltonian,
    run_generator,
)
from quantum_chimera.fock.operators import (
    network_annihilators,
    product_density,
    vacuum_density,
)
from quantum_chimera.fock.schemas import (
    FockDensityFull,
    FockEvolution,
    MomentTrajectory,
    TruncationConfig,
)
from quantum_chimera.integrator import integrate_fixed
from quantum_chimera.ring.schemas import NetworkParams, RingCoupling

logger = structlog.get_logger(__name__)


def _check_alpha(alpha_frozen: np.ndarray, coupling: RingCoupling) -> np.ndarray:
    alpha = np.asarray(alpha_frozen, dtype=complex)
    if alpha.shape != (coupling.n_nodes,):
        msg = f"alpha has shape {alpha.shape}, coupling expects ({coupling.n_nodes},)"
        raise ShapeError(msg)
    return alpha


def moments_to_covariance(
    first: np.ndarray, pair: np.ndarray, number: np.ndarray, hbar: float, t: float
) -> CovarianceState:
    """Symmetrized quadrature covariance of the centered fluctuation moments."""
    M = pair - np.outer(first, first)
    Nm = number - np.outer(first.conj(), first)
    eye = 0.5 * np.eye(first.shape[0])
    n2 = 2 * first.shape[0]
    C = np.empty((n2, n2))
    C[0::2, 0::2] = hbar * (M.real + Nm.real + eye)
    C[1::2, 1::2] = hbar * (-M.real + Nm.real + eye)
    C[0::2, 1::2] = hbar * (M.imag + Nm.imag)
    C[1::2, 0::2] = C[0::2, 1::2].T
    return CovarianceState(t=t, C=0.5 * (C + C.T))


def linearized_moment_oracle(
    alpha_frozen: np.ndarray,
    coupling: RingCoupling,
    params: NetworkParams,
    t_end: float,
    dt: float,
    sample_every: int = 1,
    first0: np.ndarray | None = None,
    t0: float = 0.0,
) -> MomentTrajectory:
    """
    Integrate the closed moment equations from the co-moving vacuum.

    Args:
        alpha_frozen: Mean field per node, held constant
        coupling: Ring coupling
        params: Rates and hbar
        t_end: End time
        dt: Step size
        sample_every: Record every n-th step
        first0: Optional initial <a_l>; zero by default
        t0: Start time

    Returns:
        MomentTrajectory with the quadrature covariance at each sample
    """
    alpha = _check_alpha(alpha_frozen, coupling)
    n = coupling.n_nodes
    gain_rates = params.kappa1 - 4.0 * params.kappa2 * np.abs(alpha) ** 2
    P = np.diag(gain_rates) - 1j * coupling.matrix
    Q = -2.0 * params.kappa2 * alpha**2
    gain = 2.0 * params.kappa1 * np.eye(n)

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        a, M, Nm = y[:, 0], y[:, 1 : n + 1], y[:, n + 1 :]
        QN = Q[:, None] * Nm
        da = P @ a + Q * a.conj()
        dM = P @ M + M @ P.T + QN + QN.T + np.diag(Q)
        dN = (
            P.conj() @ Nm
            + Nm @ P.T
            + Q.conj()[:, None] * M
            + M.conj() * Q[None, :]
            + gain
        )
        return np.column_stack([da, dM, dN])

    y0 = np.zeros((n, 2 * n + 1), dtype=complex)
    if first0 is not None:
        y0[:, 0] = np.asarray(first0, dtype=complex)
    result = integrate_fixed(rhs, t0, y0, t_end, dt, sample_every=sample_every)
    samples = np.array(result.samples)
    first = samples[:, :, 0]
    pair, number = samples[:, :, 1 : n + 1], samples[:, :, n + 1 :]
    covariances = [
        moments_to_covariance(first[k], pair[k], number[k], params.hbar, float(t))
        for k, t in enumerate(result.times)
    ]
    logger.debug("moment_oracle", n_nodes=n, steps=result.steps)
    return MomentTrajectory(
        times=result.times,
        first=first,
        pair=pair,
        number=number,
        covariances=covariances,
    )


def linearized_generator(
    alpha: np.ndarray,
    coupling: RingCoupling,
    params: NetworkParams,
    trunc: TruncationConfig,
) -> LindbladGenerator:
    """Truncated-Fock generator of the frozen co-moving-frame master equation."""
    ops = network_annihilators(coupling.n_nodes, trunc.n_t)
    hamiltonian = network_hamiltonian(coupling.matrix, ops)
    jumps: list[tuple[float, np.ndarray]] = []
    for a_l, alpha_l in zip(ops, alpha, strict=True):
        a_sq = a_l @ a_l
        hamiltonian = hamiltonian + 1j * params.kappa2 * (
            np.conj(alpha_l) ** 2 * a_sq - alpha_l**2 * a_sq.conj().T
        )
        jumps.append((2.0 * params.kappa1, a_l.conj().T))
        jumps.append((8.0 * params.kappa2 * abs(alpha_l) ** 2, a_l))
    return LindbladGenerator(jumps, hamiltonian)


def evolve_linearized_fock(
    alpha_frozen: np.ndarray,
    coupling: RingCoupling,
    params: NetworkParams,
    trunc: TruncationConfig,
    t_end: float,
    dt: float,
    sample_every: int = 1,
) -> FockEvolution:
    """
    Evolve the co-moving vacuum under the linearized master equation.

    The purity tr(rho^2) of the result is the Fock-space counterpart of the
    Gaussian purity 1/sqrt(det(2C/hbar)).

    Raises:
        CapacityError: If the network exceeds the full-space guard
        TruncationError: If positivity is lost at the chosen n_t
    """
    alpha = _check_alpha(alpha_frozen, coupling)
    check_capacity(coupling.n_nodes, trunc)
    rho0 = FockDensityFull(
        rho=product_density([vacuum_density(trunc.n_t)] * coupling.n_nodes), t=0.0
    )
    generator = linearized_generator(alpha, coupling, params, trunc)
    return run_generator(
        generator, rho0, coupling.n_nodes, trunc, t_end, dt, sample_every
    )
