"""Small graphs, canonical keys and isomorph-free enumeration."""

from flagforge.graphs.enumeration import (
    Admissibility,
    FlagSpec,
    TypeSpec,
    admissible_family,
    admissible_graphs,
    as_admissibility,
    enumerate_flags,
    enumerate_types,
    flags_for_types,
)
from flagforge.graphs.smallgraph import (
    MAX_ORDER,
    SmallGraph,
    automorphism_count,
    canonical_form,
    canonical_key,
    canonical_labeling,
    clique_number,
    complement,
    count_cliques,
    count_independent_sets,
    count_induced,
    density,
    flag_key,
    has_clique,
    has_independent_set,
    independence_number,
    induced_embeddings,
    is_isomorphic,
    parse_flag,
    parse_graph,
)

__all__ = [
    "MAX_ORDER",
    "Admissibility",
    "FlagSpec",
    "SmallGraph",
    "TypeSpec",
    "admissible_family",
    "admissible_graphs",
    "as_admissibility",
    "automorphism_count",
    "canonical_form",
    "canonical_key",
    "canonical_labeling",
    "clique_number",
    "complement",
    "count_cliques",
    "count_independent_sets",
    "count_induced",
    "density",
    "enumerate_flags",
    "enumerate_types",
    "flag_key",
    "flags_for_types",
    "has_clique",
    "has_independent_set",
    "independence_number",
    "induced_embeddings",
    "is_isomorphic",
    "parse_flag",
    "parse_graph",
]
