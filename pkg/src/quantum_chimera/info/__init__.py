from .entropy import (
    cut_entropies,
    log_det_spd,
    mi_scan,
    mi_timeseries,
    mutual_information,
    mutual_information_subsets,
    renyi2_entropy,
)
from .schemas import Bipartition, MIScan, MutualInformation

__all__ = [
    "Bipartition",
    "MIScan",
    "MutualInformation",
    "cut_entropies",
    "log_det_spd",
    "mi_scan",
    "mi_timeseries",
    "mutual_information",
    "mutual_information_subsets",
    "renyi2_entropy",
]
