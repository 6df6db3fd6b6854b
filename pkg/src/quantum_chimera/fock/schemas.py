"""
Schema Definitions for truncated Fock-space solvers
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from quantum_chimera.fluctuations.schemas import CovarianceState
from quantum_chimera.settings import settings


class TruncationConfig(BaseModel):
    """
    Occupation cutoff of each bosonic site.

    Attributes:
        n_t: Largest kept occupation; each site has states 0..n_t
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_t: int = Field(default=settings.default_truncation, ge=1)

    @property
    def site_dim(self) -> int:
        return self.n_t + 1

    def network_dim(self, n_nodes: int) -> int:
        """Hilbert-space dimension (n_t + 1)^N of the full network."""
        return self.site_dim**n_nodes


@dataclass(frozen=True, eq=False)
class FockDensityFull:
    """Density matrix of the whole network in the truncated product basis."""

    rho: np.ndarray
    t: float


@dataclass(frozen=True, eq=False)
class FockDensitySites:
    """
    Product-state (Gutzwiller) density: one matrix per site.

    Attributes:
        rhos: Array of shape (N, n_t + 1, n_t + 1)
        t: Time
    """

    rhos: np.ndarray
    t: float

    @property
    def n_nodes(self) -> int:
        return int(self.rhos.shape[0])


@dataclass(eq=False)
class FockEvolution:
    """
    Sampled full-network evolution.

    Attributes:
        states: Raw (not renormalized) density matrices
        trace_drift: tr(rho) - 1 per sample
        mean_fields: <a_l> per sample, shape (n_samples, N), trace-normalized
        occupations: <a_l^dag a_l> per sample, shape (n_samples, N)
    """

    states: list[FockDensityFull]
    trace_drift: np.ndarray
    mean_fields: np.ndarray
    occupations: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def final(self) -> FockDensityFull:
        return self.states[-1]


@dataclass(eq=False)
class GutzwillerEvolution:
    """Sampled product-state evolution with per-site expectations."""

    states: list[FockDensitySites]
    mean_fields: np.ndarray
    occupations: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def final(self) -> FockDensitySites:
        return self.states[-1]


@dataclass(eq=False)
class MomentTrajectory:
    """
    Exact first and second fluctuation moments of the linearized dynamics.

    Attributes:
        times: Sample times
        first: <a_l>, shape (n_samples, N)
        pair: <a_l a_m>, shape (n_samples, N, N)
        number: <a_l^dag a_m>, shape (n_samples, N, N)
        covariances: Quadrature covariances built from the moments
    """

    times: np.ndarray
    first: np.ndarray
    pair: np.ndarray
    number: np.ndarray
    covariances: list[CovarianceState]
