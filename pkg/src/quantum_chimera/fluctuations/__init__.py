from .analysis import (
    circular_spread,
    husimi_from_density,
    husimi_node,
    squeezing_axes,
    weighted_correlation,
)
from .covariance import MeanFieldInterpolant, frozen_trajectory, propagate_covariance
from .matrices import (
    coherent_covariance,
    diffusion_entries,
    diffusion_matrix,
    drift_entries,
    drift_matrix,
    gaussian_purity,
    symplectic_form,
    uncertainty_margin,
)
from .schemas import (
    ORDERING,
    CovarianceState,
    CovarianceTrajectory,
    DiffusionMatrix,
    DriftMatrix,
    GridSpec,
    HusimiField,
    SqueezingAxes,
)

__all__ = [
    "ORDERING",
    "CovarianceState",
    "CovarianceTrajectory",
    "DiffusionMatrix",
    "DriftMatrix",
    "GridSpec",
    "HusimiField",
    "MeanFieldInterpolant",
    "SqueezingAxes",
    "circular_spread",
    "coherent_covariance",
    "diffusion_entries",
    "diffusion_matrix",
    "drift_entries",
    "drift_matrix",
    "frozen_trajectory",
    "gaussian_purity",
    "husimi_from_density",
    "husimi_node",
    "propagate_covariance",
    "squeezing_axes",
    "symplectic_form",
    "uncertainty_margin",
]
