import numpy as np
import pytest

from quantum_chimera.exceptions import RangeError
from quantum_chimera.integrator import integrate_fixed, rk4_step, step_count


def decay(_t: float, y: np.ndarray) -> np.ndarray:
    return -y


def test_rk4_step_is_fourth_order() -> None:
    y = rk4_step(decay, 0.0, np.array([1.0]), 0.1)
    assert abs(y[0] - np.exp(-0.1)) < 1e-6


def test_integrate_fixed_matches_exponential() -> None:
    result = integrate_fixed(decay, 0.0, np.array([1.0, 2.0]), 1.0, 0.01)
    assert result.steps == 100
    assert result.times[-1] == pytest.approx(1.0)
    np.testing.assert_allclose(result.samples[-1], np.exp(-1.0) * np.array([1, 2]))


@pytest.mark.parametrize(
    ("t0", "t_end", "dt", "expected"),
    [(0.0, 1.0, 0.3, 3), (0.0, 1.0, 0.4, 3), (0.0, 0.1, 1.0, 1), (2.0, 2.5, 0.1, 5)],
)
def test_step_count_rounds_to_nearest(
    t0: float, t_end: float, dt: float, expected: int
) -> None:
    assert step_count(t0, t_end, dt) == expected


def test_last_step_is_always_sampled() -> None:
    result = integrate_fixed(decay, 0.0, np.array([1.0]), 1.0, 0.1, sample_every=4)
    np.testing.assert_allclose(result.times, [0.0, 0.4, 0.8, 1.0])
    assert len(result.samples) == 4


def test_after_step_replaces_state() -> None:
    seen: list[float] = []

    def clamp(t: float, y: np.ndarray) -> np.ndarray:
        seen.append(t)
        return np.zeros_like(y)

    result = integrate_fixed(decay, 0.0, np.array([1.0]), 0.3, 0.1, after_step=clamp)
    assert len(seen) == 3
    assert result.samples[-1][0] == 0.0
    assert result.samples[0][0] == 1.0


def test_initial_state_is_copied() -> None:
    y0 = np.array([1.0])
    integrate_fixed(decay, 0.0, y0, 0.2, 0.1)
    assert y0[0] == 1.0


@pytest.mark.parametrize(
    ("t_end", "dt", "sample_every"), [(1.0, 0.0, 1), (0.0, 0.1, 1), (1.0, 0.1, 0)]
)
def test_invalid_schedules_are_rejected(
    t_end: float, dt: float, sample_every: int
) -> None:
    with pytest.raises(RangeError):
        integrate_fixed(decay, 0.0, np.array([1.0]), t_end, dt, sample_every)


def test_error_drops_sixteenfold_when_dt_halves() -> None:
    def error(dt: float) -> float:
        result = integrate_fixed(decay, 0.0, np.array([1.0]), 1.0, dt)
        return abs(result.samples[-1][0] - np.exp(-1.0))

    ratio = error(0.1) / error(0.05)
    assert 14.0 < ratio < 18.0
