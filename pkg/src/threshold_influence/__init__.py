"""Influence maximisation under deterministic threshold propagation.

A vertex becomes active once at least ``threshold(v)`` of its neighbours are
active; activation is monotone and synchronous. The package provides the
propagation engine, exhaustive oracles, approximation and fixed-parameter
algorithms for unanimity thresholds, and generators for the gadget
reductions from dominating set, clique and densest-k-subgraph.
"""

__version__ = "0.1.0"

from .graph import (
    CONSTANT,
    GENERAL,
    MAJORITY,
    UNANIMITY,
    Graph,
    GraphBuilder,
    GraphError,
    Instance,
    ThresholdAssignment,
    assign_thresholds,
    constant_thresholds,
    false_twin_classes,
    unanimity_instance,
)
from .instance_io import ParseError, parse_instance, read_instance, serialize_instance, write_instance
from .propagation import ActivationTrace, open_count, propagate, sigma_closed, sigma_open
from .oracles import (
    DEFAULT_CAP,
    SearchTooLarge,
    SolveResult,
    DecisionResult,
    classic_brute_force,
    decide_influence,
    solve_max_closed_exact,
    solve_max_open_exact,
)
from .approx import (
    RatioSpec,
    bounded_degree_approx,
    closed_from_open,
    fpt_ratio_approx,
    max_independent_set_via_influence,
    twin_approx_open,
    vertex_cover_from_influence,
)
from .fpt import RealizationQuery, is_realizing_vertex, solve_connected_influence, solve_influence_fpt
from .reductions import (
    ReductionOutput,
    basic_reduction,
    clique_reduction,
    constant_threshold_instance,
    dks_reduction,
    majority_hardness_instance,
    verify_reduction,
)
