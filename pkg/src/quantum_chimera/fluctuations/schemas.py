"""
Schema Definitions for Gaussian fluctuations

Quadrature fluctuations are ordered R = (q1, p1, ..., qN, pN) throughout, so
node l (0-based array index) owns rows and columns 2l and 2l + 1.
"""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

ORDERING = "q1,p1,...,qN,pN"


@dataclass(frozen=True, eq=False)
class DriftMatrix:
    """Real 2N x 2N drift matrix A(t) of the Wigner Fokker-Planck equation."""

    entries: np.ndarray
    t: float


@dataclass(frozen=True, eq=False)
class DiffusionMatrix:
    """Real symmetric 2N x 2N diffusion matrix B(t), block diagonal by node."""

    entries: np.ndarray
    t: float


@dataclass(frozen=True, eq=False)
class CovarianceState:
    """
    Symmetrized covariance of the quadrature fluctuations.

    Attributes:
        t: Time
        C: Real symmetric 2N x 2N matrix in units of hbar
    """

    t: float
    C: np.ndarray

    @property
    def n_nodes(self) -> int:
        return int(self.C.shape[0] // 2)

    def node_block(self, node: int) -> np.ndarray:
        """2 x 2 block of the 1-based ``node``."""
        i = 2 * (node - 1)
        return self.C[i : i + 2, i : i + 2]


@dataclass(eq=False)
class CovarianceTrajectory:
    """
    Sampled covariance propagation.

    Attributes:
        states: Covariance snapshots
        uncertainty_margin: Smallest eigenvalue of C + i(hbar/2)Omega per sample
        log_det: log det(2C/hbar) per sample (det-growth diagnostic)
    """

    states: list[CovarianceState]
    uncertainty_margin: np.ndarray
    log_det: np.ndarray

    def __len__(self) -> int:
        return len(self.states)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def final(self) -> CovarianceState:
        return self.states[-1]


@dataclass(frozen=True)
class GridSpec:
    """
    Rectangular lattice in the (q, p) plane.

    Attributes:
        center: (q, p) of the grid centre
        extent: Half-widths (dq, dp) of the covered rectangle
        resolution: Number of points (nq, np) along each axis
    """

    center: tuple[float, float]
    extent: tuple[float, float]
    resolution: tuple[int, int] = (121, 121)

    @classmethod
    def around(
        cls,
        mean: np.ndarray,
        cov: np.ndarray,
        n_sigma: float = 6.0,
        resolution: tuple[int, int] = (121, 121),
    ) -> "GridSpec":
        """Grid covering ``n_sigma`` standard deviations of a 2D Gaussian."""
        std = np.sqrt(np.diag(cov))
        return cls(
            center=(float(mean[0]), float(mean[1])),
            extent=(float(n_sigma * std[0]), float(n_sigma * std[1])),
            resolution=resolution,
        )

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        q = np.linspace(
            self.center[0] - self.extent[0],
            self.center[0] + self.extent[0],
            self.resolution[0],
        )
        p = np.linspace(
            self.center[1] - self.extent[1],
            self.center[1] + self.extent[1],
            self.resolution[1],
        )
        return q, p

    @property
    def cell_area(self) -> float:
        dq = 2.0 * self.extent[0] / (self.resolution[0] - 1)
        dp = 2.0 * self.extent[1] / (self.resolution[1] - 1)
        return dq * dp


@dataclass(frozen=True, eq=False)
class HusimiField:
    """
    Husimi density sampled on a grid.

    ``values[j, i]`` belongs to ``(q[i], p[j])``; the density integrates to one
    over the (q, p) plane.
    """

    grid: GridSpec
    values: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def total(self) -> float:
        """Riemann sum of the density over the grid."""
        return float(self.values.sum() * self.grid.cell_area)


@dataclass(frozen=True)
class SqueezingAxes:
    """
    Principal axes of a node's 2 x 2 covariance block.

    Attributes:
        angle: Direction of the minor axis in the (q, p) plane, in [0, pi)
        minor: Smaller variance
        major: Larger variance
        isotropic: True for a degenerate block (angle reported as 0)
    """

    angle: float
    minor: float
    major: float
    isotropic: bool
