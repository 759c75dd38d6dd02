"""Isomorph-free generation of admissible graphs, types and flags.

Graphs of order n are produced by adding one vertex to every canonical graph
of order n-1 in every possible way. Admissibility is hereditary, so a child
is tested only for forbidden structures through its new vertex. Children are
canonicalized and deduplicated; results are sorted by canonical key, so they
do not depend on the worker schedule.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import partial

from flagforge.errors import DomainError
from flagforge.graphs.smallgraph import (
    SmallGraph,
    canonical_form,
    canonical_labeling,
    count_cliques,
    count_independent_sets,
    flag_key,
    has_clique,
    has_independent_set,
    induced_embeddings,
    parse_graph,
)
from flagforge.parallel import WorkerPool, default_pool

logger = logging.getLogger(__name__)

# ── Constants ────────────────────────────────────────────────────────

MAX_ENUMERATION_ORDER = 10


@dataclass(frozen=True)
class Admissibility:
    """The family of graphs a problem ranges over.

    By default a graph is admissible when its independence number is below
    ``l``. With ``complemented`` the roles swap: the clique number must stay
    below ``l`` and the objective graph is the independent set on k vertices.
    ``extra_forbidden`` lists graph strings that may not appear as induced
    subgraphs.
    """

    l: int  # noqa: E741
    complemented: bool = False
    extra_forbidden: tuple[str, ...] = ()
    _forbidden: tuple[SmallGraph, ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.l < 2:
            msg = f"Forbidden set size l must be at least 2, got {self.l}"
            raise DomainError(msg)
        graphs = tuple(parse_graph(text) for text in self.extra_forbidden)
        object.__setattr__(self, "_forbidden", graphs)

    def admits(self, graph: SmallGraph) -> bool:
        if self.complemented:
            if has_clique(graph, self.l):
                return False
        elif has_independent_set(graph, self.l):
            return False
        return not any(
            next(induced_embeddings(f, graph), None) is not None
            for f in self._forbidden
            if f.order <= graph.order
        )

    def admits_extension(self, graph: SmallGraph, neighbourhood: int) -> bool:
        """Whether ``graph`` plus a vertex on ``neighbourhood`` stays admissible.

        ``graph`` itself must already be admissible.
        """
        if self.complemented:
            if has_clique(graph, self.l - 1, within=neighbourhood):
                return False
        else:
            outside = graph.vertex_mask & ~neighbourhood
            if has_independent_set(graph, self.l - 1, within=outside):
                return False
        if not self._forbidden:
            return True
        child = graph.add_vertex(neighbourhood)
        return not any(
            _contains_through(f, child, graph.order) for f in self._forbidden
        )

    def objective_graph(self, k: int) -> SmallGraph:
        """The graph whose density is minimised: K_k, or its complement."""
        return SmallGraph.empty(k) if self.complemented else SmallGraph.complete(k)

    def objective_count(self, graph: SmallGraph, k: int) -> int:
        if self.complemented:
            return count_independent_sets(graph, k)
        return count_cliques(graph, k)


def as_admissibility(rule: int | Admissibility) -> Admissibility:
    return rule if isinstance(rule, Admissibility) else Admissibility(rule)


def _contains_through(pattern: SmallGraph, host: SmallGraph, vertex: int) -> bool:
    """Whether some induced copy of ``pattern`` in ``host`` uses ``vertex``."""
    for anchor in range(pattern.order):
        order = [anchor] + [u for u in range(pattern.order) if u != anchor]
        relabeled = pattern.induced(order)
        if next(induced_embeddings(relabeled, host, fixed=(vertex,)), None) is not None:
            return True
    return False


@dataclass(frozen=True)
class TypeSpec:
    """A fully labeled admissible graph; vertex i carries label i + 1."""

    graph: SmallGraph

    @property
    def order(self) -> int:
        return self.graph.order

    @property
    def key(self) -> str:
        return self.graph.to_string()

    @classmethod
    def parse(cls, text: str) -> TypeSpec:
        return cls(parse_graph(text))


@dataclass(frozen=True)
class FlagSpec:
    """A graph whose first ``labeled`` vertices are the labeled copy of a type."""

    graph: SmallGraph
    labeled: int

    @property
    def order(self) -> int:
        return self.graph.order

    @property
    def key(self) -> str:
        return f"{self.graph.to_string()}({self.labeled})"

    def type_graph(self) -> SmallGraph:
        return self.graph.induced(range(self.labeled))


# ── Admissible graphs ───────────────────────────────────────────────

_LEVELS: dict[tuple[Admissibility, int], tuple[SmallGraph, ...]] = {}


def _augment(parent: SmallGraph, rule: Admissibility) -> list[tuple[str, SmallGraph]]:
    children = []
    for neighbourhood in range(1 << parent.order):
        if not rule.admits_extension(parent, neighbourhood):
            continue
        child = canonical_form(parent.add_vertex(neighbourhood))
        children.append((child.to_string(), child))
    return children


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_ENUMERATION_ORDER:
        msg = f"Enumeration order {order} outside [0, {MAX_ENUMERATION_ORDER}]"
        raise DomainError(msg)


def admissible_family(
    order: int, rule: int | Admissibility, pool: WorkerPool | None = None
) -> tuple[SmallGraph, ...]:
    """Canonical forms of all admissible graphs of ``order``, sorted by key."""
    _check_order(order)
    rule = as_admissibility(rule)
    cached = _LEVELS.get((rule, order))
    if cached is not None:
        return cached
    if order == 0:
        level: tuple[SmallGraph, ...] = (SmallGraph.empty(0),)
    else:
        parents = admissible_family(order - 1, rule, pool)
        found: dict[str, SmallGraph] = {}
        mapper = pool or default_pool()
        for children in mapper.map(partial(_augment, rule=rule), parents):
            found.update(children)
        level = tuple(found[key] for key in sorted(found))
        logger.debug(
            "order %d: %d admissible classes under %s", order, len(level), rule
        )
    _LEVELS[(rule, order)] = level
    return level


def admissible_graphs(
    order: int, rule: int | Admissibility, pool: WorkerPool | None = None
) -> list[str]:
    """Canonical keys of every admissible isomorphism class of ``order``.

    ``rule`` is the forbidden independent-set size l or a full Admissibility.
    """
    return [g.to_string() for g in admissible_family(order, rule, pool)]


# ── Types and flags ─────────────────────────────────────────────────


def enumerate_types(
    order: int, rule: int | Admissibility, pool: WorkerPool | None = None
) -> list[TypeSpec]:
    """Every admissible class of order v as a type, for ``order - v`` even and > 0."""
    _check_order(order)
    sizes = range(order % 2, order - 1, 2)
    return [
        TypeSpec(graph)
        for v in sizes
        for graph in admissible_family(v, rule, pool)
    ]


def enumerate_flags(
    tau: TypeSpec,
    flag_order: int,
    rule: int | Admissibility,
    ambient_order: int | None = None,
) -> list[FlagSpec]:
    """All tau-flags of ``flag_order`` up to label-preserving isomorphism.

    When ``ambient_order`` N is given the flag order must equal (N + v) / 2.
    """
    rule = as_admissibility(rule)
    v = tau.order
    _check_order(flag_order)
    if flag_order < v:
        msg = f"Flag order {flag_order} is below the type order {v}"
        raise DomainError(msg)
    if ambient_order is not None and 2 * flag_order != ambient_order + v:
        msg = (
            f"Flag order {flag_order} does not match (N + v) / 2 "
            f"for N={ambient_order}, v={v}"
        )
        raise DomainError(msg)
    if not rule.admits(tau.graph):
        msg = f"Type {tau.key} is not admissible under {rule}"
        raise DomainError(msg)

    level = {flag_key(tau.graph, v): tau.graph}
    for _ in range(flag_order - v):
        grown: dict[str, SmallGraph] = {}
        for graph in level.values():
            for neighbourhood in range(1 << graph.order):
                if rule.admits_extension(graph, neighbourhood):
                    child = graph.add_vertex(neighbourhood)
                    labeling = canonical_labeling(child, v)
                    form = child.induced(labeling)
                    grown.setdefault(f"{form.to_string()}({v})", form)
        level = grown
    return [FlagSpec(level[key], v) for key in sorted(level)]


def flags_for_types(
    types: Sequence[TypeSpec],
    ambient_order: int,
    rule: int | Admissibility,
    pool: WorkerPool | None = None,
) -> list[list[FlagSpec]]:
    """Flag lists of order (N + v) / 2 for every type."""
    mapper = pool or default_pool()
    jobs = [
        (tau, (ambient_order + tau.order) // 2, rule, ambient_order) for tau in types
    ]
    return mapper.starmap(enumerate_flags, jobs)
