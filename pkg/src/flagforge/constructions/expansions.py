"""Expansions and blow-ups of weighted patterns.

A pattern F with part sizes s_1..s_m yields an explicit graph. As the sizes
grow in proportion to the weights, the K_k density converges to the
probability that k independent weighted draws of parts are pairwise
"adjacent or equal" (expansion) or pairwise distinct and adjacent (blow-up).
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from fractions import Fraction
from math import comb, factorial

from flagforge.errors import DomainError
from flagforge.graphs.enumeration import (
    Admissibility,
    admissible_family,
    as_admissibility,
)
from flagforge.graphs.smallgraph import MAX_ORDER, SmallGraph
from flagforge.models.pattern import PatternGraph, PatternMode, embeds
from flagforge.parallel import WorkerPool, default_pool

logger = logging.getLogger(__name__)


def cliques(
    graph: SmallGraph, within: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Non-empty cliques of ``graph`` inside the ``within`` mask, as sorted tuples."""
    mask = graph.vertex_mask if within is None else within

    def extend(
        clique: tuple[int, ...], candidates: int
    ) -> Iterator[tuple[int, ...]]:
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            grown = (*clique, v)
            yield grown
            yield from extend(grown, candidates & graph.rows[v])

    yield from extend((), mask)


def support_probability(
    weights: Sequence[Fraction], support: Sequence[int], draws: int
) -> Fraction:
    """P(the set of parts hit by ``draws`` weighted draws is exactly ``support``)."""
    total = Fraction(0)
    size = len(support)
    for r in range(size + 1):
        sign = -1 if (size - r) % 2 else 1
        for subset in itertools.combinations(support, r):
            total += sign * sum((weights[p] for p in subset), Fraction(0)) ** draws
    return total


def clique_draw_probability(
    base: SmallGraph,
    weights: Sequence[Fraction],
    draws: int,
    within: int | None = None,
) -> Fraction:
    """P(``draws`` weighted vertices all in ``within``, pairwise adjacent or equal)."""
    if draws == 0:
        return Fraction(1)
    return sum(
        (
            support_probability(weights, clique, draws)
            for clique in cliques(base, within)
        ),
        Fraction(0),
    )


def expansion_graph(pattern: PatternGraph, sizes: Sequence[int]) -> SmallGraph:
    """The explicit expansion (or blow-up) with the given part sizes."""
    if len(sizes) != pattern.order:
        msg = f"{len(sizes)} part sizes for a pattern on {pattern.order} vertices"
        raise DomainError(msg)
    if any(s < 0 for s in sizes):
        msg = "Part sizes must be non-negative"
        raise DomainError(msg)
    total = sum(sizes)
    if total > MAX_ORDER:
        msg = f"Expansion order {total} exceeds {MAX_ORDER}"
        raise DomainError(msg)
    part_of = [p for p, s in enumerate(sizes) for _ in range(s)]
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(total), 2)
        if pattern.joined(part_of[u], part_of[v])
    ]
    return SmallGraph.from_edges(total, edges)


def clique_density_limit(pattern: PatternGraph, k: int) -> Fraction:
    """Limit K_k density of large expansions (or blow-ups) of the pattern."""
    if k < 1:
        msg = f"Clique size must be at least 1, got {k}"
        raise DomainError(msg)
    if pattern.mode is PatternMode.EXPANSION:
        return clique_draw_probability(pattern.base, pattern.weights, k)
    total = Fraction(0)
    for clique in cliques(pattern.base):
        if len(clique) == k:
            term = Fraction(1)
            for p in clique:
                term *= pattern.weights[p]
            total += term
    return total * factorial(k)


def expansion_clique_count(
    pattern: PatternGraph, sizes: Sequence[int], k: int
) -> int:
    """Number of k-cliques in ``expansion_graph(pattern, sizes)``, by formula."""
    if k == 0:
        return 1
    total = 0
    for clique in cliques(pattern.base):
        if pattern.mode is PatternMode.BLOWUP:
            if len(clique) == k:
                term = 1
                for p in clique:
                    term *= sizes[p]
                total += term
            continue
        if len(clique) > k:
            continue
        # coefficient of x^k in prod((1 + x)^s - 1): every part used at least once
        poly = [1]
        for p in clique:
            factor = [comb(sizes[p], j) for j in range(1, min(sizes[p], k) + 1)]
            grown = [0] * min(len(poly) + len(factor), k + 1)
            for i, a in enumerate(poly):
                for j, b in enumerate(factor, start=1):
                    if i + j <= k:
                        grown[i + j] += a * b
            poly = grown
        if len(poly) > k:
            total += poly[k]
    return total


# ── Sharp lists ─────────────────────────────────────────────────────


def embeds_in_blowup(graph: SmallGraph, pattern: PatternGraph) -> bool:
    """Whether ``graph`` is induced in some expansion or blow-up of the pattern."""
    return embeds(graph, pattern)


def _embedding_flags(
    graphs: Sequence[SmallGraph], pattern: PatternGraph
) -> list[bool]:
    return [embeds(g, pattern) for g in graphs]


def sharp_list_from_pattern(
    pattern: PatternGraph,
    order: int,
    rule: int | Admissibility,
    pool: WorkerPool | None = None,
) -> list[str]:
    """Admissible graphs of ``order`` that embed into large instances of the pattern."""
    graphs = admissible_family(order, as_admissibility(rule), pool)
    mapper = pool or default_pool()
    chunk = max(1, len(graphs) // (4 * mapper.threads))
    batches = [graphs[i : i + chunk] for i in range(0, len(graphs), chunk)]
    flags: list[bool] = []
    for batch in mapper.starmap(_embedding_flags, [(b, pattern) for b in batches]):
        flags.extend(batch)
    keys = [g.to_string() for g, hit in zip(graphs, flags) if hit]
    logger.debug(
        "%d of %d graphs embed into %s", len(keys), len(graphs), pattern.to_spec()
    )
    return keys


def phantom_pattern(l: int) -> PatternGraph:  # noqa: E741
    """Disjoint union of l - 1 equal cliques plus one vanishing cross edge.

    Two zero-weight singleton slots sit in parts 1 and 2 and are joined to
    each other; each hosts at most one vertex.
    """
    if l < 3:
        msg = f"The phantom pattern needs l >= 3, got {l}"
        raise DomainError(msg)
    parts = l - 1
    first, second = parts, parts + 1
    base = SmallGraph.from_edges(
        parts + 2, [(first, 0), (second, 1), (first, second)]
    )
    weights = (Fraction(1, parts),) * parts + (Fraction(0), Fraction(0))
    return PatternGraph(
        base, weights, PatternMode.EXPANSION, frozenset({first, second})
    )


def turan_complement_pattern(l: int) -> PatternGraph:  # noqa: E741
    """Uniform expansion of the edgeless graph on l - 1 vertices."""
    return PatternGraph.uniform(SmallGraph.empty(l - 1))


def phantom_sharp_list(
    l: int,  # noqa: E741
    order: int,
    pool: WorkerPool | None = None,
) -> list[str]:
    """Admissible graphs embedding into the Turan complement with one extra edge."""
    if l < 4:
        msg = f"Phantom sharp lists are defined for l >= 4, got {l}"
        raise DomainError(msg)
    return sharp_list_from_pattern(phantom_pattern(l), order, l, pool)
