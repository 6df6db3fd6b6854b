"""
Cross-checks between the Gaussian solver and the Fock-space oracles.

Each check builds a small problem, solves it two independent ways and reports
the discrepancy against a fixed tolerance.
"""

from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import structlog

from quantum_chimera.fluctuations import (
    coherent_covariance,
    drift_entries,
    frozen_trajectory,
    gaussian_purity,
    propagate_covariance,
)
from quantum_chimera.fock import (
    FockDensityFull,
    FockDensitySites,
    FockEvolution,
    GutzwillerEvolution,
    TruncationConfig,
    birth_death_steady_state,
    coherent_density,
    evolve_full_lindblad,
    evolve_linearized_fock,
    gutzwiller_evolve,
    linearized_moment_oracle,
    mean_occupation,
    product_density,
    purity,
)
from quantum_chimera.ring import (
    MeanFieldState,
    NetworkParams,
    RingCoupling,
    build_coupling,
    mean_field_derivative,
)
from quantum_chimera.sim.io import write_expectations

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    error: float
    tolerance: float


def _single_site() -> RingCoupling:
    return RingCoupling(strength=0.0, d=0, matrix=np.zeros((1, 1)))


def finite_difference_jacobian(
    alpha: np.ndarray, K: np.ndarray, params: NetworkParams, step: float = 1e-6
) -> np.ndarray:
    """Central-difference Jacobian of the mean-field rhs in (Re, Im) pairs."""
    n = alpha.shape[0]
    x = np.empty(2 * n)
    x[0::2], x[1::2] = alpha.real, alpha.imag

    def f(v: np.ndarray) -> np.ndarray:
        out = mean_field_derivative(v[0::2] + 1j * v[1::2], K, params)
        flat = np.empty(2 * n)
        flat[0::2], flat[1::2] = out.real, out.imag
        return flat

    J = np.empty((2 * n, 2 * n))
    for k in range(2 * n):
        e = np.zeros(2 * n)
        e[k] = step
        J[:, k] = (f(x + e) - f(x - e)) / (2.0 * step)
    return J


def check_drift_jacobian(samples: int = 100, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    params = NetworkParams()
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 11))
        coupling = build_coupling(n, max(1, n // 4), float(rng.uniform(0.0, 2.0)))
        alpha = rng.normal(size=n) + 1j * rng.normal(size=n)
        analytic = drift_entries(alpha, coupling.matrix, params)
        numeric = finite_difference_jacobian(alpha, coupling.matrix, params)
        worst = max(worst, float(np.max(np.abs(analytic - numeric))))
    return CheckResult("drift_vs_jacobian", worst <= 1e-6, worst, 1e-6)


def check_covariance_moments(window: float = 0.5, dt: float = 1e-3) -> CheckResult:
    params = NetworkParams(n_nodes=2)
    coupling = build_coupling(2, 1, 0.6)
    r0 = params.limit_cycle_radius
    alpha = np.array([r0, r0 * np.exp(0.7j)])
    state = MeanFieldState(t=0.0, alpha=alpha)
    traj = frozen_trajectory(state, coupling, params, window)
    gaussian = propagate_covariance(
        coherent_covariance(2, params.hbar), traj, params, dt=dt
    ).final.C
    moments = linearized_moment_oracle(alpha, coupling, params, window, dt)
    oracle = moments.covariances[-1].C
    error = float(np.max(np.abs(gaussian - oracle)) / np.max(np.abs(oracle)))
    return CheckResult("covariance_vs_moments", error <= 1e-3, error, 1e-3)


def check_birth_death(
    n_t: int = 20, t_end: float = 30.0, dt: float = 0.005
) -> CheckResult:
    params = NetworkParams()
    trunc = TruncationConfig(n_t=n_t)
    rho0 = FockDensityFull(rho=coherent_density(params.limit_cycle_radius, n_t), t=0.0)
    evolution = evolve_full_lindblad(
        rho0, _single_site(), params, trunc, t_end, dt, sample_every=1000
    )
    full = float(evolution.occupations[-1, 0])
    chain = mean_occupation(birth_death_steady_state(params, n_t))
    error = abs(full - chain)
    return CheckResult("birth_death_vs_full", error <= 1e-6, error, 1e-6)


def _gutzwiller_against_full(
    V: float, n_t: int, t_end: float, dt: float
) -> tuple[FockEvolution, GutzwillerEvolution]:
    params = NetworkParams(n_nodes=2)
    coupling = build_coupling(2, 1, V)
    trunc = TruncationConfig(n_t=n_t)
    r0 = params.limit_cycle_radius
    sites = np.stack([coherent_density(r0, n_t), coherent_density(1j * r0, n_t)])
    full = evolve_full_lindblad(
        FockDensityFull(rho=product_density(list(sites)), t=0.0),
        coupling,
        params,
        trunc,
        t_end,
        dt,
    )
    product = gutzwiller_evolve(
        FockDensitySites(rhos=sites, t=0.0), coupling, params, trunc, t_end, dt
    )
    return full, product


def check_gutzwiller_uncoupled(
    n_t: int = 6, t_end: float = 0.5, dt: float = 0.005
) -> CheckResult:
    full, product = _gutzwiller_against_full(0.0, n_t, t_end, dt)
    error = float(np.max(np.abs(full.mean_fields - product.mean_fields)))
    return CheckResult("gutzwiller_vs_full_uncoupled", error <= 1e-8, error, 1e-8)


def check_gutzwiller_coupled(
    n_t: int = 6, t_end: float = 0.5, dt: float = 0.005
) -> CheckResult:
    full, product = _gutzwiller_against_full(0.2, n_t, t_end, dt)
    deviation = np.abs(full.mean_fields - product.mean_fields)
    error = float(np.max(deviation / np.abs(full.mean_fields)))
    return CheckResult("gutzwiller_vs_full_coupled", error <= 0.05, error, 0.05)


def check_linearized_purity(
    n_t: int = 15, t_end: float = 0.25, dt: float = 0.002
) -> CheckResult:
    params = NetworkParams()
    alpha = np.array([params.limit_cycle_radius], dtype=complex)
    coupling = _single_site()
    fock = evolve_linearized_fock(
        alpha, coupling, params, TruncationConfig(n_t=n_t), t_end, dt
    )
    moments = linearized_moment_oracle(alpha, coupling, params, t_end, dt)
    gaussian = gaussian_purity(moments.covariances[-1].C, params.hbar)
    error = abs(purity(fock.final.rho) - gaussian)
    return CheckResult("purity_vs_linearized_fock", error <= 1e-3, error, 1e-3)


CHECKS: list[Callable[[], CheckResult]] = [
    check_drift_jacobian,
    check_covariance_moments,
    check_birth_death,
    check_gutzwiller_uncoupled,
    check_gutzwiller_coupled,
    check_linearized_purity,
]


def run_oracle_checks() -> list[CheckResult]:
    """Run every certification check and log its outcome."""
    results = []
    for check in CHECKS:
        result = check()
        log = logger.info if result.passed else logger.error
        log(
            "oracle_check",
            name=result.name,
            passed=result.passed,
            error=result.error,
            tolerance=result.tolerance,
        )
        results.append(result)
    return results


def export_expectations(
    out: Path, V: float = 0.2, n_t: int = 6, t_end: float = 0.5, dt: float = 0.005
) -> list[Path]:
    """
    Write <a_l> and <a_l^dag a_l> of the coupled two-node comparison.

    Returns:
        Paths of ``full_expectations.csv`` (full Lindblad solution) and
        ``gutzwiller_expectations.csv`` (product-state solution)
    """
    out.mkdir(parents=True, exist_ok=True)
    full, product = _gutzwiller_against_full(V, n_t, t_end, dt)
    paths = [
        write_expectations(
            full.times,
            full.mean_fields,
            full.occupations,
            out / "full_expectations.csv",
        ),
        write_expectations(
            product.times,
            product.mean_fields,
            product.occupations,
            out / "gutzwiller_expectations.csv",
        ),
    ]
    logger.info("oracle_expectations_written", out=str(out), V=V, n_t=n_t)
    return paths
