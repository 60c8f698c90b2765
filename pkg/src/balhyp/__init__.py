"""Matching theory of balanced hypergraphs at desk scale.

Everything here is exact and exponential: matchings and covers come from
branch-and-bound, and balancedness is certified by a strong odd cycle.
The decompositions and characterizations are checked against those solvers.
"""

from .augment import (AugmentationRun, UnionInstance, augment_step, build_union,
                      matching_via_augmentation)
from .balance import BalanceCertificate, find_strong_odd_cycle, is_balanced, oracle_balanced_matrix
from .charac import (check_charac_D, check_charac_stable, check_weighted_D, max_weight_stable,
                     all_max_weight_stable, is_stable, refute, StableSet)
from .coloring import EdgeColoring, VertexBicoloring, edge_coloring, verify_edge_coloring, vertex_2color
from .core import (Hypergraph, Walk, build, classify_walk, delete, dual, format_text, induced_sub,
                   parse_text, partial, weak_delete)
from .decompose import (Decomposition, classic_dac, compare_equalities, dpm, fqn,
                        is_bipartite_graph, is_factor_critical, missed_set, verify_galed1,
                        verify_galed2)
from .errors import HypergraphError, InstanceTooLarge, state_budget
from .gen import GenSpec, SplitMix64, gen_bipartite, gen_closure, gen_interval, gen_planted
from .solve import (E_WEIGHTS, V_WEIGHTS, CoverVector, Matching, WeightFn, all_max_matchings,
                    all_min_covers, check_matcheq, check_vc1, cover_number, degree_bound,
                    enumerate_optima, matching_number, max_matching, min_vertex_cover,
                    verify_konig)

__version__ = "0.1.0"

__all__ = [
    "AugmentationRun",
    "BalanceCertificate",
    "CoverVector",
    "Decomposition",
    "E_WEIGHTS",
    "EdgeColoring",
    "GenSpec",
    "Hypergraph",
    "HypergraphError",
    "InstanceTooLarge",
    "Matching",
    "SplitMix64",
    "StableSet",
    "UnionInstance",
    "V_WEIGHTS",
    "VertexBicoloring",
    "Walk",
    "WeightFn",
    "all_max_matchings",
    "all_max_weight_stable",
    "all_min_covers",
    "augment_step",
    "build",
    "build_union",
    "check_charac_D",
    "check_charac_stable",
    "check_matcheq",
    "check_vc1",
    "check_weighted_D",
    "classic_dac",
    "classify_walk",
    "compare_equalities",
    "cover_number",
    "degree_bound",
    "delete",
    "dpm",
    "dual",
    "edge_coloring",
    "enumerate_optima",
    "find_strong_odd_cycle",
    "format_text",
    "fqn",
    "gen_bipartite",
    "gen_closure",
    "gen_interval",
    "gen_planted",
    "induced_sub",
    "is_balanced",
    "is_bipartite_graph",
    "is_factor_critical",
    "is_stable",
    "matching_number",
    "matching_via_augmentation",
    "max_matching",
    "max_weight_stable",
    "min_vertex_cover",
    "missed_set",
    "oracle_balanced_matrix",
    "parse_text",
    "partial",
    "refute",
    "state_budget",
    "verify_edge_coloring",
    "verify_galed1",
    "verify_galed2",
    "verify_konig",
    "vertex_2color",
    "weak_delete",
]
