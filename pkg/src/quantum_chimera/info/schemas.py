"""
Schema Definitions for information measures
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Bipartition(BaseModel):
    """
    Split of the ring into Alice (contiguous nodes 1..L) and Bob (the rest).

    Attributes:
        L: Size of Alice's block
        N: Total number of nodes
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    L: int = Field(ge=1)
    N: int = Field(ge=2)

    @model_validator(mode="after")
    def _check_cut(self) -> "Bipartition":
        if self.L > self.N - 1:
            msg = f"Alice size L={self.L} must be at most N-1={self.N - 1}"
            raise ValueError(msg)
        return self

    @property
    def alice(self) -> list[int]:
        """0-based node indices of Alice."""
        return list(range(self.L))


@dataclass(frozen=True)
class MutualInformation:
    """
    Rényi-2 entropies of one cut and their mutual information (nats).

    Attributes:
        s2_a: Entropy of Alice
        s2_b: Entropy of Bob
        s2_ab: Entropy of the whole network
        i2: Mutual information, clipped at zero for round-off negatives
        clipped: True when a tiny negative value was clipped
    """

    s2_a: float
    s2_b: float
    s2_ab: float
    i2: float
    clipped: bool = False


@dataclass(frozen=True, eq=False)
class MIScan:
    """Mutual information for every contiguous cut L = 1..N-1."""

    L: np.ndarray
    s2_a: np.ndarray
    s2_b: np.ndarray
    s2_ab: np.ndarray
    i2: np.ndarray
    clipped: np.ndarray

    def asymmetry(self) -> float:
        """max over L of |I2(L) - I2(N - L)|."""
        return float(np.max(np.abs(self.i2 - self.i2[::-1])))
