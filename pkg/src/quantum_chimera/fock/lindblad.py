"""
Full-network Lindblad solver in truncated Fock space.

The network master equation is

    d rho/dt = -i [H/hbar, rho] + sum_l 2 kappa1 D(a_l^dag) + 2 kappa2 D(a_l^2)

with D(O) = O rho O^dag - {O^dag O, rho}/2 and H/hbar = sum_{l != m} K_lm a_l^dag a_m,
normalized so that the Heisenberg equation of <a_l> carries the mean-field
coupling -i sum_m K_lm <a_m>. The dimension (n_t + 1)^N grows quickly, so the
solver is guarded by the resource limits in settings.
"""

from collections.abc import Sequence

import numpy as np
import structlog
from scipy.linalg import null_space

from quantum_chimera.exceptions import CapacityError, ShapeError, TruncationError
from quantum_chimera.fock.operators import network_annihilators
from quantum_chimera.fock.schemas import (
    FockDensityFull,
    FockEvolution,
    TruncationConfig,
)
from quantum_chimera.integrator import integrate_fixed
from quantum_chimera.ring.schemas import NetworkParams, RingCoupling
from quantum_chimera.settings import settings

logger = structlog.get_logger(__name__)


class LindbladGenerator:
    """
    Right-hand side of a Lindblad master equation.

    The dissipators are folded into an effective non-Hermitian Hamiltonian
    H - (i/2) sum gamma L^dag L plus the recycling term sum gamma L rho L^dag.
    Density matrices may carry leading batch axes (one matrix per site), in
    which case ``hamiltonian`` may be batched as well.

    Attributes:
        hamiltonian: Default Hamiltonian in units of hbar
        logger (BoundLogger): Structured logger for the generator
    """

    def __init__(
        self,
        jumps: Sequence[tuple[float, np.ndarray]],
        hamiltonian: np.ndarray | None = None,
    ) -> None:
        """
        Args:
            jumps: (rate, operator) pairs for each dissipator rate * D(operator)
            hamiltonian: H/hbar; zero if omitted
        """
        dim = jumps[0][1].shape[-1]
        self.hamiltonian = (
            np.zeros((dim, dim), dtype=complex) if hamiltonian is None else hamiltonian
        )
        self._ops = np.stack([np.sqrt(rate) * op for rate, op in jumps])
        self._ops_dag = self._ops.conj().swapaxes(-1, -2)
        self._damping = 0.5 * np.sum(self._ops_dag @ self._ops, axis=0)
        self.logger = logger.bind(generator="lindblad", dim=dim, jumps=len(jumps))

    def __call__(
        self, rho: np.ndarray, hamiltonian: np.ndarray | None = None
    ) -> np.ndarray:
        H = self.hamiltonian if hamiltonian is None else hamiltonian
        H_eff = H - 1j * self._damping
        out = -1j * (H_eff @ rho - rho @ H_eff.conj().swapaxes(-1, -2))
        shape = (self._ops.shape[0],) + (1,) * (rho.ndim - 2) + self._ops.shape[1:]
        ops = self._ops.reshape(shape)
        ops_dag = self._ops_dag.reshape(shape)
        return out + np.sum(ops @ rho @ ops_dag, axis=0)


def check_capacity(n_nodes: int, trunc: TruncationConfig) -> int:
    """Return the network dimension or raise if it exceeds the memory guard."""
    dim = trunc.network_dim(n_nodes)
    if n_nodes > settings.fock_max_nodes or dim > settings.fock_max_dimension:
        msg = (
            f"Full Fock space of N={n_nodes}, n_t={trunc.n_t} has dimension {dim}; "
            f"limits are N<={settings.fock_max_nodes}, "
            f"dim<={settings.fock_max_dimension}"
        )
        raise CapacityError(msg)
    return dim


def network_hamiltonian(
    coupling_matrix: np.ndarray, annihilators: Sequence[np.ndarray]
) -> np.ndarray:
    """H/hbar = sum_{l != m} K_lm a_l^dag a_m."""
    dim = annihilators[0].shape[0]
    H = np.zeros((dim, dim), dtype=complex)
    n_nodes = len(annihilators)
    for l in range(n_nodes):  # noqa: E741
        for m in range(n_nodes):
            if l != m and coupling_matrix[l, m] != 0:
                H += coupling_matrix[l, m] * annihilators[l].conj().T @ annihilators[m]
    return H


def network_generator(
    coupling: RingCoupling, params: NetworkParams, trunc: TruncationConfig
) -> LindbladGenerator:
    """Generator of the network master equation."""
    ops = network_annihilators(coupling.n_nodes, trunc.n_t)
    jumps: list[tuple[float, np.ndarray]] = []
    for a in ops:
        jumps.append((2.0 * params.kappa1, a.conj().T))
        jumps.append((2.0 * params.kappa2, a @ a))
    return LindbladGenerator(jumps, network_hamiltonian(coupling.matrix, ops))


def check_positivity(rho: np.ndarray, t: float, n_t: int) -> None:
    """Raise if the Hermitian part of ``rho`` has an eigenvalue below tolerance."""
    hermitian = 0.5 * (rho + rho.conj().swapaxes(-1, -2))
    traces = np.trace(rho, axis1=-2, axis2=-1).real
    lowest = float(np.min(np.linalg.eigvalsh(hermitian / traces[..., None, None])))
    if lowest < -settings.positivity_tolerance:
        logger.error("positivity_lost", t=t, lowest=lowest, n_t=n_t)
        msg = (
            f"Density matrix lost positivity at t={t:.6g} (eigenvalue {lowest:.3e}); "
            f"increase the truncation beyond n_t={n_t}"
        )
        raise TruncationError(msg)


def run_generator(
    generator: LindbladGenerator,
    rho0: FockDensityFull,
    n_nodes: int,
    trunc: TruncationConfig,
    t_end: float,
    dt: float,
    sample_every: int = 1,
) -> FockEvolution:
    """Integrate any network generator and collect per-site expectations."""
    ops = network_annihilators(n_nodes, trunc.n_t)
    result = integrate_fixed(
        lambda _t, rho: generator(rho),
        rho0.t,
        rho0.rho.astype(complex),
        t_end,
        dt,
        sample_every=sample_every,
    )
    states: list[FockDensityFull] = []
    drift, fields, occupations = [], [], []
    for t, rho in zip(result.times, result.samples, strict=True):
        check_positivity(rho, float(t), trunc.n_t)
        trace = np.trace(rho).real
        normalized = rho / trace
        states.append(FockDensityFull(rho=rho, t=float(t)))
        drift.append(trace - 1.0)
        fields.append([np.trace(normalized @ a) for a in ops])
        occupations.append([np.trace(normalized @ a.conj().T @ a).real for a in ops])
    trace_drift = np.array(drift)
    logger.debug(
        "fock_evolution",
        n_nodes=n_nodes,
        n_t=trunc.n_t,
        steps=result.steps,
        max_trace_drift=float(np.max(np.abs(trace_drift))),
    )
    return FockEvolution(
        states=states,
        trace_drift=trace_drift,
        mean_fields=np.array(fields),
        occupations=np.array(occupations),
    )


def evolve_full_lindblad(
    rho0: FockDensityFull,
    coupling: RingCoupling,
    params: NetworkParams,
    trunc: TruncationConfig,
    t_end: float,
    dt: float,
    sample_every: int = 1,
) -> FockEvolution:
    """
    Integrate the full network master equation with fixed-step RK4.

    Raises:
        CapacityError: If N or the dimension exceed the configured guard
        ShapeError: If rho0 does not match the truncated network dimension
        TruncationError: If a sampled state loses positivity beyond tolerance
    """
    n_nodes = coupling.n_nodes
    dim = check_capacity(n_nodes, trunc)
    if rho0.rho.shape != (dim, dim):
        msg = f"rho0 has shape {rho0.rho.shape}, expected ({dim}, {dim})"
        raise ShapeError(msg)
    generator = network_generator(coupling, params, trunc)
    return run_generator(generator, rho0, n_nodes, trunc, t_end, dt, sample_every)


def birth_death_steady_state(params: NetworkParams, n_t: int) -> np.ndarray:
    """
    Stationary occupation probabilities of a single oscillator.

    The diagonal of the single-site master equation is a birth-death chain
    with gain rate 2 kappa1 (n + 1) for n -> n + 1 (none out of n_t) and
    two-photon loss rate 2 kappa2 n (n - 1) for n -> n - 2.
    """
    dim = n_t + 1
    generator = np.zeros((dim, dim))
    for n in range(dim):
        if n < n_t:
            rate = 2.0 * params.kappa1 * (n + 1)
            generator[n + 1, n] += rate
            generator[n, n] -= rate
        if n >= 2:  # noqa: PLR2004
            rate = 2.0 * params.kappa2 * n * (n - 1)
            generator[n - 2, n] += rate
            generator[n, n] -= rate
    populations = null_space(generator)[:, 0]
    return populations / populations.sum()


def mean_occupation(populations: np.ndarray) -> float:
    return float(np.arange(populations.shape[0]) @ populations)
