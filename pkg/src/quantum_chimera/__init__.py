from quantum_chimera.fluctuations import (
    CovarianceState,
    coherent_covariance,
    propagate_covariance,
)
from quantum_chimera.fock import (
    TruncationConfig,
    evolve_full_lindblad,
    gutzwiller_evolve,
    linearized_moment_oracle,
)
from quantum_chimera.info import Bipartition, mi_scan, mutual_information
from quantum_chimera.ring import (
    MeanFieldState,
    NetworkParams,
    build_coupling,
    classify_regime,
    initial_conditions,
    integrate_mean_field,
)
from quantum_chimera.sim import PresetLibrary, ScenarioConfig, run_scenario

__all__ = [
    "Bipartition",
    "CovarianceState",
    "MeanFieldState",
    "NetworkParams",
    "PresetLibrary",
    "ScenarioConfig",
    "TruncationConfig",
    "build_coupling",
    "classify_regime",
    "coherent_covariance",
    "evolve_full_lindblad",
    "gutzwiller_evolve",
    "initial_conditions",
    "integrate_mean_field",
    "linearized_moment_oracle",
    "mi_scan",
    "mutual_information",
    "propagate_covariance",
    "run_scenario",
]
