from .coupling import build_coupling, ring_distance
from .dynamics import integrate_mean_field, mean_field_derivative, mean_field_rhs
from .initial import initial_conditions
from .order import classify_regime, local_order_parameter
from .schemas import (
    InitialConditionSpec,
    MeanFieldState,
    MeanFieldTrajectory,
    NetworkParams,
    Regime,
    RegimeClassification,
    RingCoupling,
    ThetaMode,
)

__all__ = [
    "InitialConditionSpec",
    "MeanFieldState",
    "MeanFieldTrajectory",
    "NetworkParams",
    "Regime",
    "RegimeClassification",
    "RingCoupling",
    "ThetaMode",
    "build_coupling",
    "classify_regime",
    "initial_conditions",
    "integrate_mean_field",
    "local_order_parameter",
    "mean_field_derivative",
    "mean_field_rhs",
    "ring_distance",
]
