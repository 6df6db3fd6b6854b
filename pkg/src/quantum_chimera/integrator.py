"""
Fixed-step classical Runge-Kutta integration.

Every ODE in the package (mean field, covariance, Lindblad, Gutzwiller and the
moment oracle) is advanced with the same fourth-order scheme and a fixed step,
which keeps runs bit-reproducible for a given configuration.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from quantum_chimera.exceptions import RangeError

type Array = np.ndarray
type RightHandSide = Callable[[float, Array], Array]
type StepHook = Callable[[float, Array], Array]


@dataclass
class FixedStepResult:
    """Sampled output of :func:`integrate_fixed`."""

    times: Array
    samples: list[Array]
    steps: int


def rk4_step(rhs: RightHandSide, t: float, y: Array, dt: float) -> Array:
    """Advance ``y`` from ``t`` to ``t + dt`` with one classical RK4 step."""
    half = 0.5 * dt
    k1 = rhs(t, y)
    k2 = rhs(t + half, y + half * k1)
    k3 = rhs(t + half, y + half * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def step_count(t0: float, t_end: float, dt: float) -> int:
    """Number of fixed steps so that the final time lies within dt/2 of t_end."""
    if dt <= 0:
        msg = f"Step size must be positive, got dt={dt}"
        raise RangeError(msg)
    if t_end <= t0:
        msg = f"t_end={t_end} must exceed the start time {t0}"
        raise RangeError(msg)
    return max(1, math.floor((t_end - t0) / dt + 0.5))


def integrate_fixed(
    rhs: RightHandSide,
    t0: float,
    y0: Array,
    t_end: float,
    dt: float,
    sample_every: int = 1,
    after_step: StepHook | None = None,
) -> FixedStepResult:
    """
    Integrate ``dy/dt = rhs(t, y)`` from ``t0`` to ``t_end`` with fixed RK4 steps.

    Times are computed as ``t0 + k*dt`` rather than accumulated. The initial
    state, every ``sample_every``-th step and the final step are recorded.

    Args:
        rhs: Right-hand side ``f(t, y)``
        t0: Start time
        y0: Initial state (any shape, real or complex)
        t_end: Target end time
        dt: Step size
        sample_every: Record every n-th step
        after_step: Called with ``(t, y)`` after each step; its return value
            replaces ``y``. Used for symmetrization and invariant monitors,
            which may raise to abort the run.

    Returns:
        FixedStepResult with sample times, sampled states and the step count
    """
    if sample_every < 1:
        msg = f"sample_every must be >= 1, got {sample_every}"
        raise RangeError(msg)
    n_steps = step_count(t0, t_end, dt)
    y = np.array(y0, copy=True)
    times = [t0]
    samples = [y.copy()]
    for k in range(1, n_steps + 1):
        y = rk4_step(rhs, t0 + (k - 1) * dt, y, dt)
        t = t0 + k * dt
        if after_step is not None:
            y = after_step(t, y)
        if k % sample_every == 0 or k == n_steps:
            times.append(t)
            samples.append(y.copy())
    return FixedStepResult(times=np.asarray(times), samples=samples, steps=n_steps)
