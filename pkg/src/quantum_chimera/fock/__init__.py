from .gutzwiller import gutzwiller_evolve, site_expectation
from .lindblad import (
    LindbladGenerator,
    birth_death_steady_state,
    evolve_full_lindblad,
    mean_occupation,
    network_hamiltonian,
)
from .moments import (
    evolve_linearized_fock,
    linearized_moment_oracle,
    moments_to_covariance,
)
from .operators import (
    annihilation,
    coherent_density,
    coherent_ket,
    network_annihilators,
    product_density,
    purity,
    reduced_density,
    vacuum_density,
)
from .schemas import (
    FockDensityFull,
    FockDensitySites,
    FockEvolution,
    GutzwillerEvolution,
    MomentTrajectory,
    TruncationConfig,
)

__all__ = [
    "FockDensityFull",
    "FockDensitySites",
    "FockEvolution",
    "GutzwillerEvolution",
    "LindbladGenerator",
    "MomentTrajectory",
    "TruncationConfig",
    "annihilation",
    "birth_death_steady_state",
    "coherent_density",
    "coherent_ket",
    "evolve_full_lindblad",
    "evolve_linearized_fock",
    "gutzwiller_evolve",
    "linearized_moment_oracle",
    "mean_occupation",
    "moments_to_covariance",
    "network_annihilators",
    "network_hamiltonian",
    "product_density",
    "purity",
    "reduced_density",
    "site_expectation",
    "vacuum_density",
]
