"""
Schema Definitions for the ring network

This module defines the value types shared by the mean-field part of the
simulator: physical constants, the nonlocal ring coupling, initial-condition
recipes, mean-field snapshots and sampled trajectories, and the regime labels
produced by the synchronization diagnostics.

Parameter types with invariants are frozen pydantic models so that invalid
values are rejected on construction; array-carrying types are frozen
dataclasses.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class NetworkParams(BaseModel):
    """
    Global physical constants of the oscillator ring.

    Attributes:
        kappa1: Linear (one-photon) gain rate; sets the time unit
        kappa2: Nonlinear (two-photon) loss rate
        hbar: Action scale
        n_nodes: Number of oscillators N
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kappa1: float = Field(default=1.0, gt=0)
    kappa2: float = Field(default=0.2, gt=0)
    hbar: float = Field(default=1.0, gt=0)
    n_nodes: int = Field(default=50, ge=2)

    @property
    def limit_cycle_radius(self) -> float:
        """Stuart-Landau radius r0 = sqrt(kappa1 / 2 kappa2)."""
        return math.sqrt(self.kappa1 / (2.0 * self.kappa2))


@dataclass(frozen=True, eq=False)
class RingCoupling:
    """
    Nonlocal coupling matrix of a ring.

    Attributes:
        strength: Coupling strength V
        d: Coupling range in nodes
        matrix: Symmetric circulant N x N matrix K with K[l, m] = V/(2d) for
            0 < ring distance <= d and zero otherwise
    """

    strength: float
    d: int
    matrix: np.ndarray

    @property
    def n_nodes(self) -> int:
        return int(self.matrix.shape[0])


class ThetaMode(str, Enum):
    """
    How the phase weights theta are drawn.

    Attributes:
        PER_NODE: Every node draws its own theta_l
        GLOBAL: One theta per run, shared by all nodes (smooth profile)
    """

    PER_NODE = "per_node"
    GLOBAL = "global"


class InitialConditionSpec(BaseModel):
    """
    Recipe for the Gaussian phase-profile initial conditions.

    Node l (1-based) starts at amplitude ``amplitude`` with phase
    ``theta_l / (sqrt(2 pi) sigma) * exp(-(l - mu)^2 / (2 sigma^2))`` where the
    theta_l are drawn uniformly from (-theta_range, theta_range).

    Attributes:
        amplitude: Initial |alpha_l|; None means the limit-cycle radius
        sigma: Gaussian width in nodes
        mu: Gaussian centre in nodes; None means N/2
        theta_range: Half-width of the uniform theta draw
        theta_mode: One theta per node or one per run
        seed: Seed of the random generator
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    amplitude: float | None = Field(default=None, gt=0)
    sigma: float = Field(default=9.0, gt=0)
    mu: float | None = None
    theta_range: float = Field(default=24.0 * math.pi, ge=0)
    theta_mode: ThetaMode = ThetaMode.PER_NODE
    seed: int = Field(default=0, ge=0, lt=2**64)


@dataclass(frozen=True, eq=False)
class MeanFieldState:
    """
    Mean-field amplitudes alpha_l at one instant.

    Attributes:
        t: Time in units of 1/kappa1
        alpha: Complex vector of length N
    """

    t: float
    alpha: np.ndarray

    @property
    def n_nodes(self) -> int:
        return int(self.alpha.shape[0])

    @property
    def amplitude(self) -> np.ndarray:
        return np.abs(self.alpha)

    @property
    def phase(self) -> np.ndarray:
        return np.angle(self.alpha)


@dataclass(eq=False)
class MeanFieldTrajectory:
    """
    Sampled mean-field solution.

    Attributes:
        times: Strictly increasing sample times
        alphas: Array of shape (n_samples, N), row i belongs to times[i]
        params: Physical constants used for the run
        coupling: Coupling used for the run
        metadata: Seed, generator name and integration settings
    """

    times: np.ndarray
    alphas: np.ndarray
    params: NetworkParams
    coupling: RingCoupling
    metadata: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.times.shape[0])

    def state(self, index: int) -> MeanFieldState:
        return MeanFieldState(t=float(self.times[index]), alpha=self.alphas[index])

    @property
    def states(self) -> list[MeanFieldState]:
        return [self.state(i) for i in range(len(self))]

    @property
    def final(self) -> MeanFieldState:
        return self.state(-1)


class Regime(str, Enum):
    """
    Dynamical regimes distinguished by the local order parameter.

    Attributes:
        SYNCHRONIZED: Every node sits in a coherent neighbourhood
        DESYNCHRONIZED: Every node sits in an incoherent neighbourhood
        CHIMERA: Coherent and incoherent domains coexist
    """

    SYNCHRONIZED = "synchronized"
    DESYNCHRONIZED = "desynchronized"
    CHIMERA = "chimera"


@dataclass(frozen=True, eq=False)
class RegimeClassification:
    """
    Outcome of :func:`classify_regime`.

    Attributes:
        label: Regime label
        low_confidence: True when neither pure criterion nor the chimera
            criterion held and the closest pure label was chosen
        order: Time-averaged local order parameter per node, in the node
            frame of the last sample
    """

    label: Regime
    low_confidence: bool
    order: np.ndarray
