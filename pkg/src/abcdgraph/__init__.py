"""Community-structured random graph generator and modularity toolkit."""

from .params import AbcdParams, load_config, validate_params
from .graph import MultiGraph, Partition, build_abcd
from .modularity import ModularityReport, ground_truth_modularity, modularity

__all__ = [
    "AbcdParams",
    "MultiGraph",
    "ModularityReport",
    "Partition",
    "build_abcd",
    "ground_truth_modularity",
    "load_config",
    "modularity",
    "validate_params",
]
