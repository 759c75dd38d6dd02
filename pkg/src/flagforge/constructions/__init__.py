"""Construction side: expansions, the Clebsch graph, strictness and weight search."""

from flagforge.constructions.clebsch import (
    REFERENCE_WITNESSES,
    X_SET,
    clebsch_automorphism_count,
    clebsch_clique_formula,
    clebsch_equivalence_audit,
    clebsch_graph,
    clebsch_independent_set_census,
    clebsch_pattern,
    clebsch_vertices,
    index_symmetries,
    is_vertex_transitive,
    maximal_independent_sets,
    neighbours,
    pair_orbits,
    separating_witnesses,
    x_class,
    x_classes,
    x_equivalent,
)
from flagforge.constructions.expansions import (
    clique_density_limit,
    clique_draw_probability,
    cliques,
    embeds_in_blowup,
    expansion_clique_count,
    expansion_graph,
    phantom_pattern,
    phantom_sharp_list,
    sharp_list_from_pattern,
    support_probability,
    turan_complement_pattern,
)
from flagforge.constructions.optimizer import (
    CliquePolynomial,
    FloatOptimum,
    OptimizerConfig,
    optimize_weights,
)
from flagforge.constructions.strictness import (
    LegalSetReport,
    check_strict,
    closed_neighbourhoods,
    gradient,
    legal_sets,
)

__all__ = [
    "REFERENCE_WITNESSES",
    "X_SET",
    "CliquePolynomial",
    "FloatOptimum",
    "LegalSetReport",
    "OptimizerConfig",
    "check_strict",
    "clebsch_automorphism_count",
    "clebsch_clique_formula",
    "clebsch_equivalence_audit",
    "clebsch_graph",
    "clebsch_independent_set_census",
    "clebsch_pattern",
    "clebsch_vertices",
    "clique_density_limit",
    "clique_draw_probability",
    "cliques",
    "closed_neighbourhoods",
    "embeds_in_blowup",
    "expansion_clique_count",
    "expansion_graph",
    "gradient",
    "index_symmetries",
    "is_vertex_transitive",
    "legal_sets",
    "maximal_independent_sets",
    "neighbours",
    "optimize_weights",
    "pair_orbits",
    "phantom_pattern",
    "phantom_sharp_list",
    "separating_witnesses",
    "sharp_list_from_pattern",
    "support_probability",
    "turan_complement_pattern",
    "x_class",
    "x_classes",
    "x_equivalent",
]
