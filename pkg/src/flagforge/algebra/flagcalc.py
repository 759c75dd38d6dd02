"""Flag-algebra calculus behind certificate verification.

For a type tau on v vertices and its flags F_1..F_g on M = (N + v) / 2
vertices, the pair coefficient coef(a, b; H) of an admissible N-vertex graph
H counts triples (chi, X1, X2): chi is an injection inducing tau, X1 and X2
cover V(H) and meet exactly in the image of chi, and the two halves induce
F_a and F_b. Ordered pairs are counted, so the table is symmetric.

The alpha coefficient of H is the sum over types of <Q^tau, coef(.,.; H)>.
These are raw counts ("count-v1"): any positive rescaling of the
coefficients is absorbed by Q, and the double-counting identity

    sum_psi #{(X1, X2) in G} = sum_i coef(a, b; G_i) * P(G_i, G)

holds exactly for every host graph G.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import TYPE_CHECKING, Any

from flagforge.algebra.exactlin import (
    assemble,
    format_rational,
    frobenius,
    in_kernel,
)
from flagforge.errors import DomainError
from flagforge.graphs.enumeration import FlagSpec, TypeSpec
from flagforge.graphs.smallgraph import (
    SmallGraph,
    flag_key,
    induced_embeddings,
)
from flagforge.models.pattern import PatternGraph, strong_homomorphisms
from flagforge.parallel import WorkerPool, default_pool

if TYPE_CHECKING:
    from flagforge.models.certificate import Certificate

logger = logging.getLogger(__name__)

CoefficientTable = list[list[int]]
CoefficientFn = Callable[[TypeSpec, Sequence[FlagSpec], SmallGraph], CoefficientTable]


# ── Flag counting ───────────────────────────────────────────────────


def flag_count(flag: FlagSpec, host: FlagSpec) -> int:
    """P(F, host): subsets containing all labeled vertices that induce F as a flag."""
    v = flag.labeled
    if host.labeled != v or flag.type_graph() != host.type_graph():
        msg = f"Flags {flag.key} and {host.key} are over different types"
        raise DomainError(msg)
    if flag.order > host.order:
        msg = f"Flag {flag.key} is larger than host {host.key}"
        raise DomainError(msg)
    target = flag_key(flag.graph, v)
    free = range(v, host.order)
    labeled = list(range(v))
    return sum(
        1
        for subset in itertools.combinations(free, flag.order - v)
        if flag_key(host.graph.induced(labeled + list(subset)), v) == target
    )


def type_embeddings(tau: TypeSpec, host: SmallGraph) -> list[tuple[int, ...]]:
    """Injections [v] -> V(host) inducing tau."""
    return list(induced_embeddings(tau.graph, host))


def pair_coefficients(
    tau: TypeSpec, flags: Sequence[FlagSpec], host: SmallGraph
) -> CoefficientTable:
    """Ordered-pair counts coef(a, b; host) for one type and its flag list."""
    g = len(flags)
    table = [[0] * g for _ in range(g)]
    if not flags:
        return table
    v = tau.order
    half = flags[0].order - v
    if host.order != v + 2 * half:
        msg = (
            f"Host order {host.order} does not match type order {v} "
            f"with flags of order {flags[0].order}"
        )
        raise DomainError(msg)
    index = {flag_key(flag.graph, v): a for a, flag in enumerate(flags)}

    for chi in type_embeddings(tau, host):
        rest = [u for u in range(host.order) if u not in chi]
        halves: dict[tuple[int, ...], int] = {}
        for subset in itertools.combinations(rest, half):
            key = flag_key(host.induced(list(chi) + list(subset)), v)
            try:
                halves[subset] = index[key]
            except KeyError:
                msg = f"Extension {key} of type {tau.key} is missing from the flag list"
                raise DomainError(msg) from None
        for subset, a in halves.items():
            other = tuple(u for u in rest if u not in subset)
            table[a][halves[other]] += 1
    return table


def coefficient_tables(
    types: Sequence[TypeSpec],
    flags: Sequence[Sequence[FlagSpec]],
    graphs: Sequence[SmallGraph],
    pool: WorkerPool | None = None,
) -> list[list[CoefficientTable]]:
    """tables[i][t] = pair_coefficients(types[t], flags[t], graphs[i])."""
    mapper = pool or default_pool()
    jobs = [(tau, fl, h) for h in graphs for tau, fl in zip(types, flags)]
    flat = mapper.starmap(pair_coefficients, jobs)
    width = len(types)
    return [flat[i * width : (i + 1) * width] for i in range(len(graphs))]


# ── Bounds ──────────────────────────────────────────────────────────


@dataclass
class BoundReport:
    """Outcome of the bound derivation for one certificate."""

    derived_bound: Fraction
    claimed_bound: Fraction
    alpha: list[Fraction]
    objective: list[Fraction]
    sharp_indices: set[int] = field(default_factory=set)
    violating_index: int | None = None
    graph_keys: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.derived_bound >= self.claimed_bound

    @property
    def slack(self) -> list[Fraction]:
        """p(K_k, G_i) - alpha_i - c' for every graph."""
        return [p - a - self.derived_bound for p, a in zip(self.objective, self.alpha)]

    @property
    def sharp_keys(self) -> list[str]:
        return [self.graph_keys[i] for i in sorted(self.sharp_indices)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "derived_bound": format_rational(self.derived_bound),
            "claimed_bound": format_rational(self.claimed_bound),
            "verified": self.verified,
            "violating_graph": (
                None if self.violating_index is None
                else self.graph_keys[self.violating_index]
            ),
            "alpha": [format_rational(a) for a in self.alpha],
            "slack": [format_rational(s) for s in self.slack],
            "sharp": self.sharp_keys,
        }


def objective_densities(cert: Certificate) -> list[Fraction]:
    """p(K_k, G_i), or the independent-set density for complemented problems."""
    problem = cert.problem
    rule = problem.admissibility()
    total = comb(problem.order, problem.k)
    if total == 0:
        return [Fraction(0)] * len(cert.admissible_graphs)
    return [
        Fraction(rule.objective_count(g, problem.k), total) for g in cert.graphs()
    ]


def alpha_coefficients(
    cert: Certificate,
    pool: WorkerPool | None = None,
    coefficients: CoefficientFn | None = None,
) -> list[Fraction]:
    """alpha_i = sum over types of <Q^tau, coef^tau(G_i)>."""
    types = cert.type_specs()
    flags = cert.flag_specs()
    matrices = [assemble(block) for block in cert.psd_blocks()]
    graphs = cert.graphs()
    if coefficients is None:
        tables = coefficient_tables(types, flags, graphs, pool)
    else:
        tables = [
            [coefficients(tau, fl, h) for tau, fl in zip(types, flags)] for h in graphs
        ]
    return [
        sum((frobenius(q, table) for q, table in zip(matrices, row)), Fraction(0))
        for row in tables
    ]


def derive_bound(cert: Certificate, pool: WorkerPool | None = None) -> BoundReport:
    """c' = min_i (p(K_k, G_i) - alpha_i) and the graphs attaining it."""
    alpha = alpha_coefficients(cert, pool)
    objective = objective_densities(cert)
    values = [p - a for p, a in zip(objective, alpha)]
    derived = min(values) if values else Fraction(0)
    sharp = {i for i, value in enumerate(values) if value == derived}
    claimed = cert.claimed_bound
    violating = next((i for i, value in enumerate(values) if value < claimed), None)
    report = BoundReport(
        derived_bound=derived,
        claimed_bound=claimed,
        alpha=alpha,
        objective=objective,
        sharp_indices=sharp,
        violating_index=violating,
        graph_keys=list(cert.admissible_graphs),
    )
    if report.verified:
        logger.info("derived bound %s, %d sharp graphs", derived, len(sharp))
    else:
        logger.info(
            "claimed bound %s exceeds derived %s at %s",
            claimed,
            derived,
            cert.admissible_graphs[violating] if violating is not None else "?",
        )
    return report


def remove_type(cert: Certificate, index: int) -> Certificate:
    """Copy of ``cert`` without the type at ``index`` and its block."""
    keep = [t for t in range(len(cert.types)) if t != index]
    return cert.model_copy(
        update={
            "types": [cert.types[t] for t in keep],
            "flags": [cert.flags[t] for t in keep],
            "blocks": [cert.blocks[t] for t in keep],
        }
    )


# ── Forced vectors ──────────────────────────────────────────────────


def forced_vector(
    pattern: PatternGraph,
    tau: TypeSpec,
    flags: Sequence[FlagSpec],
    embedding: Sequence[int],
) -> list[Fraction]:
    """Limit distribution of the flag spanned by tau and (N - v) / 2 random vertices.

    ``embedding`` sends labeled vertex i to pattern part ``embedding[i]``.
    The extra vertices are drawn independently with the pattern weights.
    """
    v = tau.order
    if len(embedding) != v:
        msg = f"Embedding has {len(embedding)} parts for a type on {v} vertices"
        raise DomainError(msg)
    for i in range(v):
        if embedding[i] not in pattern.usable_parts:
            msg = f"Part {embedding[i]} cannot host labeled vertex {i + 1}"
            raise DomainError(msg)
        if embedding[i] in pattern.singletons and embedding[i] in embedding[:i]:
            msg = f"Singleton part {embedding[i]} hosts two labeled vertices"
            raise DomainError(msg)
        for j in range(i):
            if tau.graph.adjacent(i, j) != pattern.joined(embedding[i], embedding[j]):
                msg = f"Embedding {tuple(embedding)} does not realize type {tau.key}"
                raise DomainError(msg)
    vector = [Fraction(0)] * len(flags)
    if not flags:
        return vector
    index = {flag_key(flag.graph, v): a for a, flag in enumerate(flags)}
    extra = flags[0].order - v
    parts = pattern.weighted_parts
    for draw in itertools.product(parts, repeat=extra):
        probability = Fraction(1)
        for p in draw:
            probability *= pattern.weights[p]
        graph = tau.graph
        placed = list(embedding)
        for p in draw:
            neighbourhood = sum(
                1 << u for u, q in enumerate(placed) if pattern.joined(p, q)
            )
            graph = graph.add_vertex(neighbourhood)
            placed.append(p)
        key = flag_key(graph, v)
        if key not in index:
            msg = f"Pattern extension {key} of type {tau.key} is not a listed flag"
            raise DomainError(msg)
        vector[index[key]] += probability
    return vector


def forced_vectors(
    pattern: PatternGraph, tau: TypeSpec, flags: Sequence[FlagSpec]
) -> list[list[Fraction]]:
    """Distinct forced vectors over all embeddings of tau into the pattern."""
    seen: dict[tuple[Fraction, ...], None] = {}
    for embedding in strong_homomorphisms(tau.graph, pattern, first_part_orbits=True):
        seen.setdefault(tuple(forced_vector(pattern, tau, flags, embedding)), None)
    return [list(vector) for vector in seen]


@dataclass
class ForcedKernelReport:
    """Kernel check of every forced vector against the certificate blocks."""

    passed: bool
    checked: int
    failures: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
        }


def check_forced_kernel(cert: Certificate, pattern: PatternGraph) -> ForcedKernelReport:
    """Whether every forced vector lies in the kernel of its type's Q."""
    checked = 0
    failures = []
    flags_per_type = cert.flag_specs()
    for t, (tau, block) in enumerate(zip(cert.type_specs(), cert.psd_blocks())):
        matrix = assemble(block)
        for vector in forced_vectors(pattern, tau, flags_per_type[t]):
            checked += 1
            if not in_kernel(matrix, vector):
                failures.append(
                    {"type": tau.key, "vector": [format_rational(x) for x in vector]}
                )
    if failures:
        logger.info(
            "%d of %d forced vectors outside the kernel", len(failures), checked
        )
    return ForcedKernelReport(not failures, checked, failures)

