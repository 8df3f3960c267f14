"""Mixing multidimensional choice sets under state-of-the-world uncertainty.

The package computes two aggregations of per-state capability sets (the raw
probability-weighted *average* set and the chain-constrained *expected* set),
provides the dominance geometry behind them, exports the matching MILP models
as solver-ready text, and ships an executable suite of the structural
properties the two mixes do and do not satisfy.
"""

from .errors import (
    CapacityError,
    CapmixError,
    DimensionMismatchError,
    InvalidProbabilityError,
    PreconditionError,
    ScenarioFormatError,
)
from .geometry import (
    EPS,
    Being,
    CapabilitySet,
    PreferenceVerdict,
    Relation,
    at_least_as_good,
    compare_sets,
    in_dominated_region,
    in_intersection_region,
    in_union_region,
    intersection_corners,
    pareto_frontier,
    weak_dominates,
)
from .mixing import (
    Act,
    ChainCertificate,
    MixedSet,
    MixKind,
    ProbabilityVector,
    SandwichReport,
    average_pf,
    average_set,
    brute_force_expected,
    chain_value,
    expected_set,
    sandwich_check,
)
from .scenario import Scenario, load_scenario, parse_scenario, scenario_to_text

__version__ = "0.1.0"

__all__ = [
    "EPS",
    "Act",
    "Being",
    "CapabilitySet",
    "CapacityError",
    "CapmixError",
    "ChainCertificate",
    "DimensionMismatchError",
    "InvalidProbabilityError",
    "MixKind",
    "MixedSet",
    "PreconditionError",
    "PreferenceVerdict",
    "ProbabilityVector",
    "Relation",
    "SandwichReport",
    "Scenario",
    "ScenarioFormatError",
    "at_least_as_good",
    "average_pf",
    "average_set",
    "brute_force_expected",
    "chain_value",
    "compare_sets",
    "expected_set",
    "in_dominated_region",
    "in_intersection_region",
    "in_union_region",
    "intersection_corners",
    "load_scenario",
    "pareto_frontier",
    "parse_scenario",
    "sandwich_check",
    "scenario_to_text",
    "weak_dominates",
]
