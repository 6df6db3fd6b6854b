from .config import (
    AnalysisConfig,
    CouplingConfig,
    ScenarioConfig,
    ScheduleConfig,
    build_config,
    config_keys,
    flatten_config,
    parse_key_values,
    read_config_file,
)
from .io import (
    Manifest,
    ManifestFile,
    read_covariance,
    read_density,
    read_husimi,
    read_manifest,
    read_table,
    read_trajectory,
    verify_manifest,
    write_covariance,
    write_density,
    write_expectations,
    write_husimi,
    write_mi_scan,
    write_table,
    write_trajectory,
)
from .oracle_check import CheckResult, run_oracle_checks
from .presets import PresetLibrary, ScenarioPreset
from .scenario import ScenarioRunner, run_scenario
from .sweep import SweepReport, SweepRow, sweep_runner

__all__ = [
    "AnalysisConfig",
    "CheckResult",
    "CouplingConfig",
    "Manifest",
    "ManifestFile",
    "PresetLibrary",
    "ScenarioConfig",
    "ScenarioPreset",
    "ScenarioRunner",
    "ScheduleConfig",
    "SweepReport",
    "SweepRow",
    "build_config",
    "config_keys",
    "flatten_config",
    "parse_key_values",
    "read_config_file",
    "read_covariance",
    "read_density",
    "read_husimi",
    "read_manifest",
    "read_table",
    "read_trajectory",
    "run_oracle_checks",
    "run_scenario",
    "sweep_runner",
    "verify_manifest",
    "write_covariance",
    "write_density",
    "write_expectations",
    "write_husimi",
    "write_mi_scan",
    "write_table",
    "write_trajectory",
]
