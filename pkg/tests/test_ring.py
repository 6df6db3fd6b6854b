import numpy as np
import pytest

from quantum_chimera.exceptions import (
    DivergenceError,
    InsufficientDataError,
    RangeError,
    ShapeError,
    SizeError,
)
from quantum_chimera.ring import (
    InitialConditionSpec,
    MeanFieldState,
    MeanFieldTrajectory,
    NetworkParams,
    Regime,
    RingCoupling,
    ThetaMode,
    build_coupling,
    classify_regime,
    initial_conditions,
    integrate_mean_field,
    local_order_parameter,
    mean_field_rhs,
    ring_distance,
)
from quantum_chimera.ring.initial import initial_phases
from quantum_chimera.ring.order import align_profiles, neighbour_offsets


def test_ring_distance_is_periodic() -> None:
    distance = ring_distance(5)
    assert distance[0, 4] == 1
    assert distance[0, 2] == 2
    assert distance[1, 4] == 2
    np.testing.assert_array_equal(distance, distance.T)
    np.testing.assert_array_equal(np.diag(distance), 0)


def test_ring_distance_rejects_single_node() -> None:
    with pytest.raises(SizeError):
        ring_distance(1)


def test_build_coupling_entries(ring_coupling: RingCoupling) -> None:
    K = ring_coupling.matrix
    assert K[0, 4] == pytest.approx(0.06)
    assert K[0, 10] == pytest.approx(0.06)
    assert K[0, 40] == pytest.approx(0.06)
    assert K[0, 11] == 0.0
    assert K[0, 0] == 0.0
    np.testing.assert_allclose(K.sum(axis=1), 1.2)
    np.testing.assert_array_equal(K, K.T)


@pytest.mark.parametrize(("d", "V"), [(0, 1.0), (26, 1.0), (10, -0.1)])
def test_build_coupling_rejects_bad_parameters(d: int, V: float) -> None:
    with pytest.raises(RangeError):
        build_coupling(50, d, V)


def test_mean_field_rhs_known_value(pair_params: NetworkParams) -> None:
    coupling = build_coupling(2, 1, 1.2)
    state = MeanFieldState(t=0.0, alpha=np.array([1.0, 1.0j]))
    np.testing.assert_allclose(
        mean_field_rhs(state, coupling, pair_params), [1.2, 0.0], atol=1e-12
    )


def test_mean_field_rhs_shape_mismatch(params: NetworkParams) -> None:
    state = MeanFieldState(t=0.0, alpha=np.ones(3, dtype=complex))
    with pytest.raises(ShapeError):
        mean_field_rhs(state, build_coupling(4, 1, 1.0), params)


def test_uncoupled_node_reaches_limit_cycle(pair_params: NetworkParams) -> None:
    coupling = build_coupling(2, 1, 0.0)
    state = MeanFieldState(t=0.0, alpha=np.array([0.1, 0.1j]))
    traj = integrate_mean_field(state, coupling, pair_params, t_end=50.0, dt=0.01)
    assert traj.final.t == pytest.approx(50.0)
    np.testing.assert_allclose(traj.final.amplitude, 1.5811, atol=1e-3)
    assert pair_params.limit_cycle_radius == pytest.approx(np.sqrt(2.5))


def test_sampling_keeps_first_and_last(pair_params: NetworkParams) -> None:
    coupling = build_coupling(2, 1, 0.5)
    state = MeanFieldState(t=1.0, alpha=np.array([1.0, -1.0 + 0j]))
    traj = integrate_mean_field(
        state, coupling, pair_params, t_end=2.0, dt=0.01, sample_every=30
    )
    assert traj.times[0] == 1.0
    assert traj.times[-1] == pytest.approx(2.0)
    assert len(traj) == 5
    assert traj.metadata["sample_every"] == 30


def test_divergence_is_reported(pair_params: NetworkParams) -> None:
    coupling = build_coupling(2, 1, 0.0)
    state = MeanFieldState(t=0.0, alpha=np.array([2e3, 2e3 + 0j]))
    with pytest.raises(DivergenceError) as excinfo:
        integrate_mean_field(state, coupling, pair_params, t_end=1.0, dt=1e-3)
    assert excinfo.value.t == pytest.approx(1e-3)


def test_initial_conditions_are_seeded(params: NetworkParams) -> None:
    ic = InitialConditionSpec(seed=11)
    first = initial_conditions(ic, params)
    again = initial_conditions(ic, params)
    other = initial_conditions(InitialConditionSpec(seed=12), params)
    np.testing.assert_array_equal(first.alpha, again.alpha)
    assert not np.array_equal(first.alpha, other.alpha)
    np.testing.assert_allclose(first.amplitude, params.limit_cycle_radius)


def test_initial_phases_vanish_far_from_centre(params: NetworkParams) -> None:
    state = initial_conditions(InitialConditionSpec(sigma=2.0, mu=25.0), params)
    assert np.max(np.abs(state.phase[:5])) < 1e-6
    assert np.max(np.abs(state.phase[20:30])) > 1e-3


def test_initial_conditions_reject_bad_centre(params: NetworkParams) -> None:
    with pytest.raises(RangeError):
        initial_conditions(InitialConditionSpec(mu=60.0), params)


def test_local_order_parameter_of_uniform_phase(params: NetworkParams) -> None:
    state = MeanFieldState(t=0.0, alpha=np.full(50, 1.5 * np.exp(0.3j)))
    np.testing.assert_allclose(local_order_parameter(state, 10), 1.0)
    with pytest.raises(RangeError):
        local_order_parameter(state, 26)


def _steady(
    phases: np.ndarray, coupling: RingCoupling, params: NetworkParams, samples: int = 20
) -> MeanFieldTrajectory:
    alpha = params.limit_cycle_radius * np.exp(1j * phases)
    return MeanFieldTrajectory(
        times=np.linspace(0.0, 10.0, samples),
        alphas=np.tile(alpha, (samples, 1)),
        params=params,
        coupling=coupling,
    )


def _alternating(nodes: np.ndarray) -> np.ndarray:
    return np.pi * nodes


def test_classify_synchronized(
    params: NetworkParams, ring_coupling: RingCoupling
) -> None:
    result = classify_regime(_steady(np.zeros(50), ring_coupling, params), window=2)
    assert result.label is Regime.SYNCHRONIZED
    assert not result.low_confidence


def test_classify_desynchronized(
    params: NetworkParams, ring_coupling: RingCoupling
) -> None:
    phases = _alternating(np.arange(50))
    result = classify_regime(_steady(phases, ring_coupling, params), window=2)
    assert result.label is Regime.DESYNCHRONIZED
    np.testing.assert_allclose(result.order, 0.0, atol=1e-12)


def test_classify_chimera(params: NetworkParams, ring_coupling: RingCoupling) -> None:
    nodes = np.arange(50)
    phases = np.where(nodes < 25, 0.0, _alternating(nodes))
    result = classify_regime(_steady(phases, ring_coupling, params), window=2)
    assert result.label is Regime.CHIMERA
    assert not result.low_confidence


def test_classify_low_confidence(
    params: NetworkParams, ring_coupling: RingCoupling
) -> None:
    nodes = np.arange(50)
    phases = np.where(nodes < 7, 0.0, _alternating(nodes))
    result = classify_regime(_steady(phases, ring_coupling, params), window=2)
    assert result.low_confidence
    assert result.label is Regime.DESYNCHRONIZED


def test_classify_needs_enough_samples(
    params: NetworkParams, ring_coupling: RingCoupling
) -> None:
    traj = _steady(np.zeros(50), ring_coupling, params, samples=5)
    with pytest.raises(InsufficientDataError):
        classify_regime(traj, window=2)


def test_classify_rejects_bad_thresholds(
    params: NetworkParams, ring_coupling: RingCoupling
) -> None:
    traj = _steady(np.zeros(50), ring_coupling, params)
    with pytest.raises(RangeError):
        classify_regime(traj, window=2, thresholds=(0.9, 0.5))


@pytest.mark.slow
def test_strong_coupling_synchronizes(params: NetworkParams) -> None:
    coupling = build_coupling(50, 10, 1.6)
    synchronized = 0
    for seed in range(10):
        ic = InitialConditionSpec(seed=seed, theta_mode=ThetaMode.GLOBAL)
        state0 = initial_conditions(ic, params)
        traj = integrate_mean_field(
            state0, coupling, params, t_end=25.0, dt=1e-3, sample_every=100
        )
        label = classify_regime(traj, window=10).label
        synchronized += label is Regime.SYNCHRONIZED
    assert synchronized >= 8


def test_global_phase_rotates_trajectory(params: NetworkParams) -> None:
    coupling = build_coupling(50, 10, 1.2)
    state0 = initial_conditions(InitialConditionSpec(seed=4), params)
    rotation = np.exp(0.9j)
    rotated0 = MeanFieldState(t=0.0, alpha=state0.alpha * rotation)
    traj = integrate_mean_field(state0, coupling, params, t_end=2.0, dt=1e-2)
    rotated = integrate_mean_field(rotated0, coupling, params, t_end=2.0, dt=1e-2)
    np.testing.assert_allclose(rotated.alphas, traj.alphas * rotation, atol=1e-10)


@pytest.mark.parametrize("amplitude", [0.0, np.sqrt(2.5)])
def test_mean_field_rhs_vanishes_at_rest_points(
    pair_params: NetworkParams, amplitude: float
) -> None:
    state = MeanFieldState(t=0.0, alpha=np.full(2, amplitude, dtype=complex))
    rhs = mean_field_rhs(state, build_coupling(2, 1, 0.0), pair_params)
    np.testing.assert_allclose(rhs, 0.0, atol=1e-12)


def test_global_theta_gives_smooth_profile(params: NetworkParams) -> None:
    ic = InitialConditionSpec(seed=3, theta_mode=ThetaMode.GLOBAL)
    state = initial_conditions(ic, params)
    theta = np.random.default_rng(3).uniform(-24.0 * np.pi, 24.0 * np.pi)
    expected = initial_phases(ic, 50, np.full(50, theta))
    np.testing.assert_allclose(
        state.alpha, params.limit_cycle_radius * np.exp(1j * expected), atol=1e-12
    )
    per_node = initial_conditions(
        ic.model_copy(update={"theta_mode": ThetaMode.PER_NODE}), params
    )
    assert not np.allclose(per_node.alpha, state.alpha)


def test_half_ring_window_counts_antipode_once() -> None:
    assert neighbour_offsets(2, 4) == [1, 2, 3]
    assert neighbour_offsets(2, 10) == [1, 2, 8, 9]
    state = MeanFieldState(t=0.0, alpha=np.exp(1j * np.array([0, 0, np.pi, 0])))
    np.testing.assert_allclose(
        local_order_parameter(state, 2), [1 / 3, 1 / 3, 1.0, 1 / 3], atol=1e-12
    )


def test_half_ring_coupling_has_distinct_neighbours() -> None:
    matrix = build_coupling(4, 2, 1.0).matrix
    np.testing.assert_allclose(matrix[0], [0.0, 0.25, 0.25, 0.25])


def test_align_profiles_rolls_onto_last_frame() -> None:
    rows = np.array([[1.0, 0, 0, 0, 0, 0], [0, 0, 1.0, 0, 0, 0]])
    np.testing.assert_array_equal(align_profiles(rows)[0], rows[1])
    uniform = np.ones((3, 6))
    np.testing.assert_array_equal(align_profiles(uniform), uniform)


def test_classify_follows_drifting_domain() -> None:
    n_nodes, samples = 40, 20
    nodes = np.arange(n_nodes)
    params = NetworkParams(n_nodes=n_nodes)
    phases = np.array(
        [
            np.where((nodes - 4 * k) % n_nodes < 20, 0.0, _alternating(nodes))
            for k in range(samples)
        ]
    )
    traj = MeanFieldTrajectory(
        times=np.arange(samples, dtype=float),
        alphas=params.limit_cycle_radius * np.exp(1j * phases),
        params=params,
        coupling=build_coupling(n_nodes, 2, 1.2),
    )
    result = classify_regime(traj, window=2)
    assert result.label is Regime.CHIMERA
    assert not result.low_confidence
    last = MeanFieldState(t=19.0, alpha=traj.alphas[-1])
    np.testing.assert_allclose(
        result.order, local_order_parameter(last, 2), atol=1e-12
    )


def test_random_phases_have_low_local_order() -> None:
    means = []
    for seed in range(100):
        phases = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi, 50)
        state = MeanFieldState(t=0.0, alpha=np.exp(1j * phases))
        means.append(local_order_parameter(state, 10).mean())
    assert np.mean(means) < 0.3


def test_index_rotation_shifts_trajectory(params: NetworkParams) -> None:
    coupling = build_coupling(50, 10, 1.2)
    state0 = initial_conditions(InitialConditionSpec(seed=4), params)
    shifted0 = MeanFieldState(t=0.0, alpha=np.roll(state0.alpha, 7))
    traj = integrate_mean_field(state0, coupling, params, t_end=2.0, dt=1e-2)
    shifted = integrate_mean_field(shifted0, coupling, params, t_end=2.0, dt=1e-2)
    np.testing.assert_allclose(
        shifted.alphas, np.roll(traj.alphas, 7, axis=1), atol=1e-10
    )


def test_single_step_matches_rhs(params: NetworkParams) -> None:
    coupling = build_coupling(50, 10, 1.2)
    state0 = initial_conditions(InitialConditionSpec(seed=2), params)
    dt = 1e-5
    traj = integrate_mean_field(state0, coupling, params, t_end=dt, dt=dt)
    slope = (traj.alphas[-1] - traj.alphas[0]) / dt
    np.testing.assert_allclose(
        slope, mean_field_rhs(state0, coupling, params), atol=1e-3
    )
