"""Exact computation in extremal set theory around (d,k,s)-clusters."""

from .clusters import (
    ClusterWitness,
    NotCluster,
    SimplexReport,
    count_clusters,
    find_cluster,
    find_cross_cluster,
    intersection_lower_bound,
    is_cluster,
    iter_clusters,
    s_wise_intersecting,
    sample_random_cluster,
    simplex_check,
    tight_implies_simplex,
    union_bound_criterion,
)
from .families import (
    Junta,
    KSubset,
    ParameterError,
    SetFamily,
    construct,
    essential_containment,
    frankl_furedi,
    full_family,
    junta_generate,
    lex_compare,
    lex_family,
    lex_rank,
    lex_unrank,
    measure,
    odd_bipartite,
    random_family,
    restrict,
    star,
)
from .juntas import (
    find_regular_decomposition,
    junta_cluster_equivalence,
    regularity_check,
    stability_report,
)
from .shadows import (
    LayeredFamily,
    biased_measure,
    kk_minimality_test,
    kk_verify,
    monotone_closure,
    upper_shadow,
)
from .solver import (
    SolveResult,
    f_monotonicity_scan,
    greedy_lower_bound,
    solve,
    verify_star_extremal,
)

__version__ = "0.1.0"

__all__ = [
    "biased_measure",
    "ClusterWitness",
    "construct",
    "count_clusters",
    "essential_containment",
    "f_monotonicity_scan",
    "find_cluster",
    "find_cross_cluster",
    "find_regular_decomposition",
    "frankl_furedi",
    "full_family",
    "greedy_lower_bound",
    "intersection_lower_bound",
    "is_cluster",
    "iter_clusters",
    "Junta",
    "junta_cluster_equivalence",
    "junta_generate",
    "kk_minimality_test",
    "kk_verify",
    "KSubset",
    "LayeredFamily",
    "lex_compare",
    "lex_family",
    "lex_rank",
    "lex_unrank",
    "measure",
    "monotone_closure",
    "NotCluster",
    "odd_bipartite",
    "ParameterError",
    "random_family",
    "regularity_check",
    "restrict",
    "s_wise_intersecting",
    "sample_random_cluster",
    "SetFamily",
    "simplex_check",
    "SimplexReport",
    "solve",
    "SolveResult",
    "stability_report",
    "star",
    "tight_implies_simplex",
    "union_bound_criterion",
    "upper_shadow",
    "verify_star_extremal",
]
