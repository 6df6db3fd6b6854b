"""
Self-consistent product-state (Gutzwiller) solver.

Each site carries its own truncated density matrix and sees the rest of the
ring only through the field Gamma_l = sum_m K_lm <a_m>, entering the site
Hamiltonian H_l/hbar = Gamma_l a^dag + conj(Gamma_l) a. Gamma is rebuilt from
the current states at every Runge-Kutta stage, and all sites are advanced
together as one (N, D, D) batch.
"""

import numpy as np
import structlog

from quantum_chimera.exceptions import ShapeError
from quantum_chimera.fock.lindblad import LindbladGenerator, check_positivity
from quantum_chimera.fock.operators import annihilation
from quantum_chimera.fock.schemas import (
    FockDensitySites,
    GutzwillerEvolution,
    TruncationConfig,
)
from quantum_chimera.integrator import integrate_fixed
from quantum_chimera.ring.schemas import NetworkParams, RingCoupling

logger = structlog.get_logger(__name__)


def site_expectation(rhos: np.ndarray, op: np.ndarray) -> np.ndarray:
    """tr(rho_l op) for every site."""
    return np.einsum("nij,ji->n", rhos, op)


def site_generator(params: NetworkParams, trunc: TruncationConfig) -> LindbladGenerator:
    """Single-site gain and two-photon loss with the network rate prefactors."""
    a = annihilation(trunc.n_t)
    return LindbladGenerator(
        [(2.0 * params.kappa1, a.conj().T), (2.0 * params.kappa2, a @ a)]
    )


def gutzwiller_evolve(
    rhos0: FockDensitySites,
    coupling: RingCoupling,
    params: NetworkParams,
    trunc: TruncationConfig,
    t_end: float,
    dt: float,
    sample_every: int = 1,
) -> GutzwillerEvolution:
    """
    Integrate the N coupled single-site master equations.

    Raises:
        ShapeError: If rhos0 does not match N sites of dimension n_t + 1
        TruncationError: If a sampled site loses positivity beyond tolerance
    """
    n_nodes, dim = coupling.n_nodes, trunc.site_dim
    if rhos0.rhos.shape != (n_nodes, dim, dim):
        msg = f"rhos0 has shape {rhos0.rhos.shape}, expected ({n_nodes}, {dim}, {dim})"
        raise ShapeError(msg)

    a = annihilation(trunc.n_t)
    a_dag = a.conj().T
    generator = site_generator(params, trunc)
    K = coupling.matrix

    def rhs(_t: float, rhos: np.ndarray) -> np.ndarray:
        gamma = K @ site_expectation(rhos, a)
        hamiltonian = (
            gamma[:, None, None] * a_dag + gamma.conj()[:, None, None] * a
        )
        return generator(rhos, hamiltonian)

    result = integrate_fixed(
        rhs, rhos0.t, rhos0.rhos.astype(complex), t_end, dt, sample_every=sample_every
    )
    states: list[FockDensitySites] = []
    fields, occupations = [], []
    number = a_dag @ a
    for t, rhos in zip(result.times, result.samples, strict=True):
        check_positivity(rhos, float(t), trunc.n_t)
        traces = np.trace(rhos, axis1=-2, axis2=-1).real
        states.append(FockDensitySites(rhos=rhos, t=float(t)))
        fields.append(site_expectation(rhos, a) / traces)
        occupations.append(site_expectation(rhos, number).real / traces)
    logger.debug(
        "gutzwiller_evolution",
        n_nodes=n_nodes,
        n_t=trunc.n_t,
        steps=result.steps,
        coupling_strength=coupling.strength,
    )
    return GutzwillerEvolution(
        states=states,
        mean_fields=np.array(fields),
        occupations=np.array(occupations),
    )
