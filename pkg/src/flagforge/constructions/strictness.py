"""Legal sets, gradients and strictness of a construction.

A vertex set X of F is legal when F - X contains no independent set of size
l - 1. Its gradient is the probability that k - 1 vertices drawn from F
(uniformly, or with given weights) all land in X and are pairwise adjacent
or equal. F is strict when every legal X other than a closed neighbourhood
has gradient above the target density.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from flagforge.algebra.exactlin import format_rational
from flagforge.constructions.expansions import clique_draw_probability
from flagforge.errors import DomainError
from flagforge.graphs.smallgraph import SmallGraph, has_clique
from flagforge.parallel import WorkerPool, default_pool

logger = logging.getLogger(__name__)

# ── Constants ────────────────────────────────────────────────────────

MAX_SUBSET_SCAN = 20


@dataclass
class LegalSetReport:
    vertices: tuple[int, ...]
    legal: bool
    gradient: Fraction | None = None
    is_closed_neighborhood: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": [v + 1 for v in self.vertices],
            "legal": self.legal,
            "gradient": (
                None if self.gradient is None else format_rational(self.gradient)
            ),
            "closed_neighborhood": self.is_closed_neighborhood,
        }


def _mask(vertices: Iterable[int]) -> int:
    return sum(1 << v for v in set(vertices))


def _members(mask: int, order: int) -> tuple[int, ...]:
    return tuple(v for v in range(order) if mask >> v & 1)


def closed_neighbourhoods(graph: SmallGraph) -> set[int]:
    return {row | (1 << v) for v, row in enumerate(graph.rows)}


def gradient(
    graph: SmallGraph,
    vertices: Iterable[int],
    k: int,
    weights: Sequence[Fraction] | None = None,
) -> Fraction:
    """grad(X) for the expansion of ``graph`` with uniform or given weights."""
    if k < 1:
        msg = f"Clique size must be at least 1, got {k}"
        raise DomainError(msg)
    members = sorted(set(vertices))
    mask = _mask(members)
    if mask & ~graph.vertex_mask:
        msg = f"Vertex set {members} is not inside a graph of order {graph.order}"
        raise DomainError(msg)
    if weights is None:
        weights = [Fraction(1, graph.order)] * graph.order
    elif len(weights) != graph.order:
        msg = f"{len(weights)} weights for a graph on {graph.order} vertices"
        raise DomainError(msg)
    return clique_draw_probability(graph, weights, k - 1, within=mask)


def _complements_without_independent(
    graph: SmallGraph, l: int  # noqa: E741
) -> Iterator[int]:
    """Masks Y with alpha(F[Y]) < l - 1, grown one vertex at a time."""
    complement = graph.complement()

    def extend(mask: int, start: int) -> Iterator[int]:
        yield mask
        for v in range(start, graph.order):
            grown = mask | (1 << v)
            if not has_clique(complement, l - 1, within=grown):
                yield from extend(grown, v + 1)

    yield from extend(0, 0)


def _classify(
    graph: SmallGraph,
    l: int,  # noqa: E741
    k: int | None,
    masks: Sequence[int],
) -> list[LegalSetReport]:
    closed = closed_neighbourhoods(graph)
    complement = graph.complement()
    reports = []
    for mask in masks:
        legal = not has_clique(complement, l - 1, within=graph.vertex_mask & ~mask)
        members = _members(mask, graph.order)
        reports.append(
            LegalSetReport(
                vertices=members,
                legal=legal,
                gradient=(
                    gradient(graph, members, k) if k is not None and legal else None
                ),
                is_closed_neighborhood=mask in closed,
            )
        )
    return reports


def legal_sets(
    graph: SmallGraph,
    l: int,  # noqa: E741
    k: int | None = None,
    include_illegal: bool = False,
    pool: WorkerPool | None = None,
) -> list[LegalSetReport]:
    """Legal vertex sets of ``graph``, with gradients when ``k`` is given.

    With ``include_illegal`` all 2^v(F) subsets are classified. Otherwise
    only legal sets are produced, generated from their complements.
    """
    if l < 2:
        msg = f"Forbidden set size l must be at least 2, got {l}"
        raise DomainError(msg)
    full = graph.vertex_mask
    if include_illegal:
        if graph.order > MAX_SUBSET_SCAN:
            msg = f"Cannot classify all subsets of {graph.order} vertices"
            raise DomainError(msg)
        masks = list(range(full + 1))
    else:
        masks = sorted(full & ~y for y in _complements_without_independent(graph, l))
    mapper = pool or default_pool()
    chunk = max(1, len(masks) // (4 * mapper.threads))
    batches = [masks[i : i + chunk] for i in range(0, len(masks), chunk)]
    reports: list[LegalSetReport] = []
    for batch in mapper.starmap(_classify, [(graph, l, k, b) for b in batches]):
        reports.extend(batch)
    logger.debug(
        "%d legal sets among %d classified for l=%d",
        sum(r.legal for r in reports),
        len(reports),
        l,
    )
    return reports


def check_strict(
    graph: SmallGraph,
    l: int,  # noqa: E741
    k: int,
    bound: Fraction,
    pool: WorkerPool | None = None,
) -> tuple[bool, list[LegalSetReport]]:
    """Strictness verdict and the legal sets whose gradient is at most ``bound``."""
    violators = [
        report
        for report in legal_sets(graph, l, k, pool=pool)
        if not report.is_closed_neighborhood
        and report.gradient is not None
        and report.gradient <= bound
    ]
    if violators:
        logger.info(
            "%d legal sets have gradient at most %s",
            len(violators),
            format_rational(bound),
        )
    return not violators, violators
