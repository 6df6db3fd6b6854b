from pathlib import Path

import numpy as np
import pytest

from quantum_chimera.ring import NetworkParams, RingCoupling, build_coupling
from quantum_chimera.sim import ScenarioConfig, build_config


@pytest.fixture
def params() -> NetworkParams:
    return NetworkParams()


@pytest.fixture
def pair_params() -> NetworkParams:
    return NetworkParams(n_nodes=2)


@pytest.fixture
def ring_coupling() -> RingCoupling:
    return build_coupling(50, 10, 1.2)


@pytest.fixture
def pair_coupling() -> RingCoupling:
    return build_coupling(2, 1, 1.2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_scenario(tmp_path: Path) -> ScenarioConfig:
    return build_config(
        {
            "name": "small",
            "params.n_nodes": "8",
            "coupling.d": "2",
            "coupling.V": "1.2",
            "ic.seed": "3",
            "schedule.t_transient": "2",
            "schedule.window": "0.1",
            "schedule.dt": "0.01",
            "schedule.sample_every": "10",
            "schedule.covariance_sample_every": "2",
            "analyses.husimi_nodes": "1, 4",
            "analyses.mi_timeseries": "3",
            "output_dir": str(tmp_path / "small"),
        }
    )
