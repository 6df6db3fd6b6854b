from typing import Any


class ChimeraError(Exception):
    """Base exception for chimera simulator errors"""


class ConfigError(ChimeraError):
    """Raised when a scenario configuration is malformed or has unknown keys"""


class ShapeError(ChimeraError, ValueError):
    """Raised when array dimensions do not match the network size"""


class RangeError(ChimeraError, ValueError):
    """Raised when a parameter lies outside its admissible range"""


class SizeError(RangeError):
    """Raised when the network is too small"""


class DivergenceError(ChimeraError):
    """Raised when a mean-field amplitude escapes the divergence bound"""

    def __init__(self, msg: str, t: float) -> None:
        super().__init__(msg)
        self.t = t


class InsufficientDataError(ChimeraError):
    """Raised when a trajectory is too short to analyse"""


class NumericalInstabilityError(ChimeraError):
    """Raised when a propagated covariance violates the uncertainty relation"""

    def __init__(self, msg: str, t: float) -> None:
        super().__init__(msg)
        self.t = t


class InvalidStateError(ChimeraError):
    """Raised when a matrix does not describe a physical quantum state"""


class ConditioningError(ChimeraError):
    """Raised when a covariance block is singular or not positive definite"""

    def __init__(self, msg: str, diagnostics: dict[str, Any] | None = None) -> None:
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


class CapacityError(ChimeraError):
    """Raised when a Fock-space problem exceeds the memory guard"""


class TruncationError(ChimeraError):
    """Raised when a truncated density matrix loses positivity"""
