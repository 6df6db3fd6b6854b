import numpy as np
import pytest

from quantum_chimera.exceptions import CapacityError, ShapeError
from quantum_chimera.fock import (
    FockDensityFull,
    FockDensitySites,
    TruncationConfig,
    annihilation,
    birth_death_steady_state,
    coherent_density,
    evolve_full_lindblad,
    gutzwiller_evolve,
    linearized_moment_oracle,
    mean_occupation,
    product_density,
    purity,
    reduced_density,
    site_expectation,
    vacuum_density,
)
from quantum_chimera.fock.lindblad import network_generator
from quantum_chimera.ring import NetworkParams, RingCoupling, build_coupling
from quantum_chimera.settings import settings
from quantum_chimera.sim.oracle_check import (
    check_birth_death,
    check_covariance_moments,
    check_gutzwiller_coupled,
    check_gutzwiller_uncoupled,
    check_linearized_purity,
)


def single_site() -> RingCoupling:
    return RingCoupling(strength=0.0, d=0, matrix=np.zeros((1, 1)))


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho)


def test_truncation_default_follows_settings() -> None:
    assert TruncationConfig().n_t == settings.default_truncation
    assert TruncationConfig(n_t=3).network_dim(2) == 16


def test_annihilation_lowers_occupation() -> None:
    a = annihilation(3)
    assert a.shape == (4, 4)
    assert a[0, 1] == pytest.approx(1.0)
    assert a[2, 3] == pytest.approx(np.sqrt(3.0))
    np.testing.assert_allclose(np.diag(a.conj().T @ a).real, [0, 1, 2, 3])


def test_coherent_density_expectation() -> None:
    alpha = 1.2 - 0.4j
    rho = coherent_density(alpha, 40)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.trace(rho @ annihilation(40)) == pytest.approx(alpha)
    assert purity(rho) == pytest.approx(1.0)


def test_reduced_density_of_product_state() -> None:
    first, second = coherent_density(0.5j, 4), vacuum_density(4)
    rho = product_density([first, second])
    np.testing.assert_allclose(reduced_density(rho, 0, 2), first, atol=1e-14)
    np.testing.assert_allclose(reduced_density(rho, 1, 2), second, atol=1e-14)


def test_purity_of_mixed_state() -> None:
    assert purity(np.eye(2) / 2) == pytest.approx(0.5)


def test_network_generator_preserves_trace_and_hermiticity(
    rng: np.random.Generator,
) -> None:
    params = NetworkParams(n_nodes=2)
    generator = network_generator(
        build_coupling(2, 1, 1.0), params, TruncationConfig(n_t=3)
    )
    rho = random_density(16, rng)
    derivative = generator(rho)
    assert abs(np.trace(derivative)) < 1e-12
    np.testing.assert_allclose(derivative, derivative.conj().T, atol=1e-12)


def test_birth_death_distribution() -> None:
    params = NetworkParams()
    populations = birth_death_steady_state(params, 20)
    assert populations.sum() == pytest.approx(1.0)
    assert np.all(populations > -1e-12)
    n20 = mean_occupation(populations)
    n30 = mean_occupation(birth_death_steady_state(params, 30))
    assert n20 == pytest.approx(n30, abs=1e-5)
    assert 1.5 < n20 < 5.0


def test_full_lindblad_keeps_trace() -> None:
    params = NetworkParams(n_nodes=2)
    trunc = TruncationConfig(n_t=4)
    rho0 = FockDensityFull(
        rho=product_density([coherent_density(1.0, 4), vacuum_density(4)]), t=0.0
    )
    evolution = evolve_full_lindblad(
        rho0, build_coupling(2, 1, 0.5), params, trunc, t_end=0.2, dt=0.01
    )
    assert len(evolution.states) == 21
    assert np.max(np.abs(evolution.trace_drift)) < 1e-10
    assert evolution.mean_fields.shape == (21, 2)
    assert evolution.occupations[0, 1] == pytest.approx(0.0, abs=1e-14)
    assert evolution.occupations[-1, 1] > 0


def test_full_lindblad_guards() -> None:
    params = NetworkParams(n_nodes=4)
    rho = FockDensityFull(rho=np.eye(4) / 4, t=0.0)
    with pytest.raises(CapacityError):
        evolve_full_lindblad(
            rho, build_coupling(4, 1, 1.0), params, TruncationConfig(n_t=1), 0.1, 0.01
        )
    with pytest.raises(CapacityError):
        evolve_full_lindblad(
            rho, build_coupling(3, 1, 1.0), params, TruncationConfig(n_t=15), 0.1, 0.01
        )
    with pytest.raises(ShapeError):
        evolve_full_lindblad(
            rho, build_coupling(2, 1, 1.0), params, TruncationConfig(n_t=3), 0.1, 0.01
        )


def test_gutzwiller_keeps_identical_sites_identical() -> None:
    params = NetworkParams(n_nodes=4)
    n_t = 5
    r0 = params.limit_cycle_radius
    sites = np.stack([coherent_density(r0, n_t)] * 4)
    evolution = gutzwiller_evolve(
        FockDensitySites(rhos=sites, t=0.0),
        build_coupling(4, 1, 0.5),
        params,
        TruncationConfig(n_t=n_t),
        t_end=0.1,
        dt=0.005,
    )
    final = evolution.final.rhos
    for site in range(1, 4):
        np.testing.assert_allclose(final[site], final[0], atol=1e-12)
    np.testing.assert_allclose(
        np.trace(final, axis1=1, axis2=2).real, 1.0, atol=1e-10
    )
    assert evolution.mean_fields.shape == (21, 4)


def test_gutzwiller_rejects_wrong_shape() -> None:
    params = NetworkParams(n_nodes=2)
    sites = np.stack([vacuum_density(3)] * 3)
    with pytest.raises(ShapeError):
        gutzwiller_evolve(
            FockDensitySites(rhos=sites, t=0.0),
            build_coupling(2, 1, 0.5),
            params,
            TruncationConfig(n_t=3),
            0.1,
            0.01,
        )


def test_site_expectation_per_site() -> None:
    rhos = np.stack([coherent_density(0.3, 30), coherent_density(-0.7j, 30)])
    np.testing.assert_allclose(
        site_expectation(rhos, annihilation(30)), [0.3, -0.7j], atol=1e-12
    )


def test_moment_oracle_gain_only_vacuum() -> None:
    params = NetworkParams()
    moments = linearized_moment_oracle(
        np.zeros(1, dtype=complex), single_site(), params, t_end=0.5, dt=1e-3
    )
    assert moments.number[-1, 0, 0].real == pytest.approx(np.e - 1.0, rel=1e-9)
    np.testing.assert_allclose(moments.pair[-1], 0.0, atol=1e-14)
    np.testing.assert_allclose(moments.first, 0.0)


def test_moment_oracle_frozen_limit_cycle() -> None:
    params = NetworkParams()
    r0 = params.limit_cycle_radius
    moments = linearized_moment_oracle(
        np.array([r0], dtype=complex), single_site(), params, t_end=0.5, dt=1e-3
    )
    C = moments.covariances[-1].C
    assert C[0, 0] == pytest.approx(0.75 - 0.25 * np.exp(-2.0), abs=1e-6)
    assert C[1, 1] == pytest.approx(2.0, abs=1e-6)
    np.testing.assert_allclose(moments.covariances[0].C, 0.5 * np.eye(2))


def test_moment_oracle_rejects_wrong_shape() -> None:
    with pytest.raises(ShapeError):
        linearized_moment_oracle(
            np.zeros(3, dtype=complex),
            build_coupling(2, 1, 1.0),
            NetworkParams(),
            0.1,
            0.01,
        )


@pytest.mark.parametrize(
    "check",
    [
        check_covariance_moments,
        check_birth_death,
        check_gutzwiller_uncoupled,
        check_gutzwiller_coupled,
        check_linearized_purity,
    ],
)
def test_certification_checks_pass(check) -> None:  # noqa: ANN001
    result = check()
    assert result.passed, f"{result.name}: error {result.error:.3e}"


def test_linearized_purity_check_defaults() -> None:
    result = check_linearized_purity()
    assert result.tolerance == pytest.approx(1e-3)
    assert result.error <= result.tolerance
