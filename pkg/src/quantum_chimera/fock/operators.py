"""
Ladder operators, coherent states and partial traces in truncated Fock space.
"""

from collections.abc import Sequence
from functools import reduce

import numpy as np
from scipy.special import gammaln


def annihilation(n_t: int) -> np.ndarray:
    """Truncated annihilation operator on states 0..n_t."""
    return np.diag(np.sqrt(np.arange(1, n_t + 1, dtype=float)), k=1).astype(complex)


def embed(op: np.ndarray, site: int, n_nodes: int) -> np.ndarray:
    """Lift a single-site operator to the network, acting on 0-based ``site``."""
    eye = np.eye(op.shape[0], dtype=complex)
    factors = [op if m == site else eye for m in range(n_nodes)]
    return reduce(np.kron, factors)


def network_annihilators(n_nodes: int, n_t: int) -> list[np.ndarray]:
    a = annihilation(n_t)
    return [embed(a, site, n_nodes) for site in range(n_nodes)]


def coherent_ket(alpha: complex, n_t: int) -> np.ndarray:
    """Coherent state |alpha> projected on 0..n_t and renormalized."""
    levels = np.arange(n_t + 1)
    ket = np.power(complex(alpha), levels) * np.exp(-0.5 * gammaln(levels + 1))
    return ket / np.linalg.norm(ket)


def coherent_density(alpha: complex, n_t: int) -> np.ndarray:
    ket = coherent_ket(alpha, n_t)
    return np.outer(ket, ket.conj())


def vacuum_density(n_t: int) -> np.ndarray:
    rho = np.zeros((n_t + 1, n_t + 1), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def product_density(rhos: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of per-site density matrices."""
    return reduce(np.kron, rhos)


def reduced_density(rho: np.ndarray, site: int, n_nodes: int) -> np.ndarray:
    """Partial trace of a network density matrix onto 0-based ``site``."""
    dim = round(rho.shape[0] ** (1.0 / n_nodes))
    left, right = dim**site, dim ** (n_nodes - site - 1)
    tensor = rho.reshape(left, dim, right, left, dim, right)
    return np.einsum("aibajb->ij", tensor)


def purity(rho: np.ndarray) -> float:
    """tr(rho^2) of a (trace-normalized) density matrix."""
    rho = rho / np.trace(rho)
    return float(np.real(np.einsum("ij,ji->", rho, rho)))
