"""
Scenario Configuration Module

A scenario is described by a pydantic model tree (``ScenarioConfig``) that is
filled from a flat key-value text format with dotted keys:

    # chimera run with a different seed
    coupling.V = 1.2
    ic.seed = 7
    analyses.husimi_nodes = 5, 25, 45

Unknown keys are rejected. The same dotted keys double as command-line flags
(``--coupling.V 1.2``).
"""

from collections.abc import Iterator, Mapping
from pathlib import Path
from typing import Any

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from quantum_chimera.exceptions import ConfigError
from quantum_chimera.ring.schemas import InitialConditionSpec, NetworkParams
from quantum_chimera.settings import settings

logger = structlog.get_logger(__name__)

NONE_VALUES = {"", "none", "null"}


class CouplingConfig(BaseModel):
    """Ring coupling strength V and range d."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    V: float = Field(default=1.2, ge=0)
    d: int = Field(default=10, ge=1)


class ScheduleConfig(BaseModel):
    """
    Time schedule of a scenario.

    Attributes:
        t_transient: Mean-field integration time before fluctuations start
        window: Length of the fluctuation window after t_transient
        dt: Fixed RK4 step for both mean field and covariance
        sample_every: Mean-field steps between recorded samples
        covariance_sample_every: Covariance steps between recorded samples
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    t_transient: float = Field(default=3000.0, ge=0)
    window: float = Field(default=0.5, gt=0)
    dt: float = Field(default=settings.dt, gt=0)
    sample_every: int = Field(default=1000, ge=1)
    covariance_sample_every: int = Field(default=50, ge=1)


class AnalysisConfig(BaseModel):
    """
    Which outputs a scenario produces.

    Attributes:
        trajectory: Write the mean-field trajectory CSV
        covariance: Write the final covariance snapshot
        psi: Write the per-node weighted correlation and squeezing table
        husimi_nodes: 1-based nodes whose Husimi density is written
        mi_scan: Write I2 for every contiguous cut
        mi_timeseries: Alice size L for an I2(t) table; None disables it
        order_window: Local order-parameter window; None means the coupling range
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    trajectory: bool = True
    covariance: bool = True
    psi: bool = True
    husimi_nodes: list[int] = Field(default_factory=list)
    mi_scan: bool = True
    mi_timeseries: int | None = Field(default=None, ge=1)
    order_window: int | None = Field(default=None, ge=1)


class ScenarioConfig(BaseModel):
    """Complete, validated description of one run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "custom"
    params: NetworkParams = Field(default_factory=NetworkParams)
    coupling: CouplingConfig = Field(default_factory=CouplingConfig)
    ic: InitialConditionSpec = Field(default_factory=InitialConditionSpec)
    schedule: ScheduleConfig = Field(default_factory=ScheduleConfig)
    analyses: AnalysisConfig = Field(default_factory=AnalysisConfig)
    output_dir: str | None = None

    @model_validator(mode="after")
    def _check_against_ring(self) -> "ScenarioConfig":
        n_nodes = self.params.n_nodes
        if 2 * self.coupling.d > n_nodes:
            msg = f"coupling.d={self.coupling.d} exceeds N/2 for N={n_nodes}"
            raise ValueError(msg)
        if 2 * self.order_window > n_nodes:
            msg = f"Order window {self.order_window} exceeds N/2 for N={n_nodes}"
            raise ValueError(msg)
        bad = [n for n in self.analyses.husimi_nodes if not 1 <= n <= n_nodes]
        if bad:
            msg = f"Husimi nodes {bad} outside [1, {n_nodes}]"
            raise ValueError(msg)
        L = self.analyses.mi_timeseries
        if L is not None and L > n_nodes - 1:
            msg = f"analyses.mi_timeseries={L} must be at most N-1={n_nodes - 1}"
            raise ValueError(msg)
        return self

    @property
    def order_window(self) -> int:
        return self.analyses.order_window or self.coupling.d

    def resolved_output_dir(self) -> Path:
        return Path(self.output_dir or Path(settings.output_dir) / self.name)


def _walk(model: type[BaseModel], prefix: str = "") -> Iterator[tuple[str, Any]]:
    for name, info in model.model_fields.items():
        annotation = info.annotation
        if isinstance(annotation, type) and issubclass(annotation, BaseModel):
            yield from _walk(annotation, f"{prefix}{name}.")
        else:
            yield f"{prefix}{name}", annotation


def config_keys() -> dict[str, Any]:
    """Every dotted key accepted by ScenarioConfig with its annotation."""
    return dict(_walk(ScenarioConfig))


LIST_KEYS = {key for key, ann in config_keys().items() if "list" in str(ann)}


def parse_key_values(text: str, source: str = "<string>") -> dict[str, str]:
    """
    Parse ``key = value`` lines, ignoring blanks and ``#`` comments.

    Raises:
        ConfigError: On a line without ``=`` or a repeated key
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            msg = f"{source}:{lineno}: expected 'key = value', got {raw!r}"
            raise ConfigError(msg)
        key = key.strip()
        if key in values:
            msg = f"{source}:{lineno}: duplicate key {key!r}"
            raise ConfigError(msg)
        values[key] = value.strip()
    return values


def read_config_file(path: Path) -> dict[str, str]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read config file {path}: {e}"
        raise ConfigError(msg) from e
    return parse_key_values(text, source=str(path))


def _coerce(key: str, value: Any) -> Any:
    if not isinstance(value, str):
        return value
    if value.lower() in NONE_VALUES:
        return [] if key in LIST_KEYS else None
    if key in LIST_KEYS:
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def build_config(values: Mapping[str, Any]) -> ScenarioConfig:
    """
    Validate flat dotted values into a ScenarioConfig.

    Raises:
        ConfigError: If a key is unknown or a value fails validation
    """
    known = config_keys()
    tree: dict[str, Any] = {}
    for key, value in values.items():
        if key not in known:
            msg = f"Unknown configuration key {key!r}"
            logger.error("unknown_config_key", key=key)
            raise ConfigError(msg)
        node = tree
        *parents, leaf = key.split(".")
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = _coerce(key, value)
    try:
        return ScenarioConfig.model_validate(tree)
    except ValidationError as e:
        msg = f"Invalid scenario configuration: {e}"
        raise ConfigError(msg) from e


def flatten_config(config: ScenarioConfig) -> dict[str, Any]:
    """Inverse of build_config: dotted keys to JSON-compatible values."""
    dumped = config.model_dump(mode="json")
    flat: dict[str, Any] = {}
    for key in config_keys():
        node: Any = dumped
        for part in key.split("."):
            node = node[part]
        flat[key] = node
    return flat
