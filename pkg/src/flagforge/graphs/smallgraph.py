"""Small undirected graphs with bitset adjacency.

A graph on at most 32 vertices keeps one integer row per vertex: bit ``v`` of
``rows[u]`` is set iff ``u`` and ``v`` are adjacent. Every counting routine in
the package works on this representation.

Graphs are written as ``<order>:<pairs>``: the order character (1-9, then
a-w for 10-32) followed by two-character edges. ``"4:121324"`` has the edges
12, 13 and 24, i.e. the path 3-1-2-4. A flag appends the number of labeled
vertices: ``"5:121324(3)"``.

Canonical keys are the lexicographically smallest edge string over all
relabelings. Equivalently the canonical labeling maximises the row-major
upper-triangle bit vector, which the search below builds row by row with
signature refinement, sibling pruning and twin pruning.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from flagforge.errors import DomainError, GraphParseError

logger = logging.getLogger(__name__)

# ── Constants ────────────────────────────────────────────────────────

MAX_ORDER = 32
VERTEX_CHARS = "123456789abcdefghijklmnopqrstuvw"
_CHAR_INDEX = {c: i for i, c in enumerate(VERTEX_CHARS)}


def vertex_char(index: int) -> str:
    """Label character of the 0-based vertex ``index``."""
    return VERTEX_CHARS[index]


def order_char(order: int) -> str:
    return "0" if order == 0 else VERTEX_CHARS[order - 1]


@dataclass(frozen=True)
class SmallGraph:
    """An immutable undirected graph with bitset adjacency rows."""

    order: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.order <= MAX_ORDER:
            msg = f"Graph order {self.order} outside [0, {MAX_ORDER}]"
            raise DomainError(msg)
        if len(self.rows) != self.order:
            msg = f"Expected {self.order} adjacency rows, got {len(self.rows)}"
            raise DomainError(msg)
        full = (1 << self.order) - 1
        for u, row in enumerate(self.rows):
            if row & ~full or (row >> u) & 1:
                msg = f"Row {u} has a loop or a bit beyond order {self.order}"
                raise DomainError(msg)
            for v in _bits(row):
                if not (self.rows[v] >> u) & 1:
                    msg = f"Adjacency is not symmetric between {u} and {v}"
                    raise DomainError(msg)

    # ── Constructors ────────────────────────────────────────────────

    @classmethod
    def empty(cls, order: int) -> SmallGraph:
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> SmallGraph:
        full = (1 << order) - 1
        return cls(order, tuple(full & ~(1 << v) for v in range(order)))

    @classmethod
    def cycle(cls, order: int) -> SmallGraph:
        return cls.from_edges(order, [(v, (v + 1) % order) for v in range(order)])

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> SmallGraph:
        """Build a graph from 0-based vertex pairs."""
        rows = [0] * order
        for u, v in edges:
            if u == v:
                msg = f"Loop at vertex {u}"
                raise DomainError(msg)
            if not (0 <= u < order and 0 <= v < order):
                msg = f"Edge ({u}, {v}) outside order {order}"
                raise DomainError(msg)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    # ── Queries ─────────────────────────────────────────────────────

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as 0-based pairs sorted by smaller, then larger endpoint."""
        return [
            (u, v)
            for u in range(self.order)
            for v in _bits(self.rows[u] >> (u + 1) << (u + 1))
        ]

    # ── Derived graphs ──────────────────────────────────────────────

    def complement(self) -> SmallGraph:
        full = self.vertex_mask
        return SmallGraph(
            self.order,
            tuple(~row & full & ~(1 << u) for u, row in enumerate(self.rows)),
        )

    def induced(self, vertices: Sequence[int]) -> SmallGraph:
        """Subgraph induced on ``vertices``; new vertex i is ``vertices[i]``."""
        rows = []
        for u in vertices:
            row_u = self.rows[u]
            row = 0
            for j, w in enumerate(vertices):
                if (row_u >> w) & 1:
                    row |= 1 << j
            rows.append(row)
        return SmallGraph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> SmallGraph:
        """Isomorphic copy in which old vertex u becomes ``perm[u]``."""
        if sorted(perm) != list(range(self.order)):
            msg = f"{list(perm)} is not a permutation of 0..{self.order - 1}"
            raise DomainError(msg)
        inverse = [0] * self.order
        for u, image in enumerate(perm):
            inverse[image] = u
        return self.induced(inverse)

    def add_vertex(self, neighbourhood: int) -> SmallGraph:
        """Append a vertex adjacent to the vertices in the bitmask."""
        new = self.order
        if neighbourhood & ~self.vertex_mask:
            msg = f"Neighbourhood mask {neighbourhood:#x} exceeds order {new}"
            raise DomainError(msg)
        rows = [
            row | (1 << new) if (neighbourhood >> u) & 1 else row
            for u, row in enumerate(self.rows)
        ]
        rows.append(neighbourhood)
        return SmallGraph(new + 1, tuple(rows))

    # ── Formatting ──────────────────────────────────────────────────

    def to_string(self) -> str:
        """Graph string in the current labeling."""
        pairs = "".join(vertex_char(u) + vertex_char(v) for u, v in self.edges())
        return f"{order_char(self.order)}:{pairs}"

    def __str__(self) -> str:
        return self.to_string()


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ── Parsing ──────────────────────────────────────────────────────────


def _parse_order(head: str) -> int:
    if head == "0":
        return 0
    if len(head) == 1 and head in _CHAR_INDEX:
        return _CHAR_INDEX[head] + 1
    if head.isdigit() and 0 < int(head) <= MAX_ORDER:
        return int(head)
    msg = f"Invalid order token {head!r}"
    raise GraphParseError(msg, head)


def parse_graph(text: str) -> SmallGraph:
    """Parse ``"<order>:<pairs>"`` into a SmallGraph.

    Raises:
        GraphParseError: naming the offending token for a malformed string,
            a duplicate edge, a loop or a vertex outside the order.
    """
    text = text.strip()
    head, sep, body = text.partition(":")
    if not sep:
        msg = f"Missing ':' in graph string {text!r}"
        raise GraphParseError(msg, text)
    order = _parse_order(head)
    if len(body) % 2:
        msg = f"Dangling vertex character {body[-1]!r} in {text!r}"
        raise GraphParseError(msg, body[-1])

    rows = [0] * order
    for pos in range(0, len(body), 2):
        token = body[pos : pos + 2]
        ends = []
        for char in token:
            index = _CHAR_INDEX.get(char)
            if index is None or index >= order:
                msg = f"Vertex {char!r} in edge {token!r} outside order {order}"
                raise GraphParseError(msg, token)
            ends.append(index)
        u, v = ends
        if u == v:
            msg = f"Loop {token!r} in {text!r}"
            raise GraphParseError(msg, token)
        if (rows[u] >> v) & 1:
            msg = f"Duplicate edge {token!r} in {text!r}"
            raise GraphParseError(msg, token)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return SmallGraph(order, tuple(rows))


def parse_flag(text: str) -> tuple[SmallGraph, int]:
    """Parse ``"<graph-string>(v)"``; a bare graph string is fully labeled."""
    text = text.strip()
    if text.endswith(")"):
        body, _, labeled = text[:-1].rpartition("(")
        if not labeled.isdigit():
            msg = f"Invalid labeled-vertex count {labeled!r} in {text!r}"
            raise GraphParseError(msg, labeled)
        graph = parse_graph(body)
        v = int(labeled)
        if v > graph.order:
            msg = f"Flag {text!r} labels {v} of {graph.order} vertices"
            raise GraphParseError(msg, labeled)
        return graph, v
    graph = parse_graph(text)
    return graph, graph.order


# ── Canonical labeling ──────────────────────────────────────────────


def _twins(rows: Sequence[int], u: int, w: int) -> bool:
    return (rows[u] & ~(1 << w)) == (rows[w] & ~(1 << u))


def canonical_labeling(graph: SmallGraph, fixed: int = 0) -> tuple[int, ...]:
    """Vertex order producing the canonical form.

    Position ``i`` of the result is the original vertex placed at label ``i``.
    The first ``fixed`` vertices keep their labels (flag canonicalization).
    """
    n = graph.order
    if fixed > n:
        msg = f"Cannot fix {fixed} labels on a graph of order {n}"
        raise DomainError(msg)
    rows = graph.rows
    prefix = list(range(fixed))
    remaining = list(range(fixed, n))
    signature = {w: 0 for w in remaining}
    for u in prefix:
        for w in remaining:
            signature[w] = (signature[w] << 1) | ((rows[u] >> w) & 1)

    best_rows: list[int] | None = None
    best_perm: list[int] = prefix + remaining
    nodes = 0

    def extend(
        perm: list[int], rest: list[int], sig: dict[int, int], head: list[int]
    ) -> None:
        nonlocal best_rows, best_perm, nodes
        nodes += 1
        if not rest:
            if best_rows is None or head > best_rows:
                best_rows, best_perm = head, perm
            return

        top = max(sig[w] for w in rest)
        candidates: list[int] = []
        for w in rest:
            if sig[w] == top and not any(_twins(rows, w, c) for c in candidates):
                candidates.append(w)

        children = []
        for u in candidates:
            tail = [w for w in rest if w != u]
            new_sig = {w: (sig[w] << 1) | ((rows[u] >> w) & 1) for w in tail}
            tail.sort(key=new_sig.__getitem__, reverse=True)
            value = 0
            for w in tail:
                value = (value << 1) | ((rows[u] >> w) & 1)
            children.append((value, u, tail, new_sig))

        best_value = max(child[0] for child in children)
        depth = len(head)
        for value, u, tail, new_sig in children:
            if value != best_value:
                continue
            candidate = [*head, value]
            if best_rows is not None and candidate < best_rows[: depth + 1]:
                continue
            extend([*perm, u], tail, new_sig, candidate)

    extend(prefix, remaining, signature, [])
    if nodes > 10_000:
        logger.debug("canonical search on order %d visited %d nodes", n, nodes)
    return tuple(best_perm)


def canonical_form(graph: SmallGraph, fixed: int = 0) -> SmallGraph:
    return graph.induced(canonical_labeling(graph, fixed))


def canonical_key(graph: SmallGraph) -> str:
    """Minimal graph string over all relabelings of ``graph``."""
    return canonical_form(graph).to_string()


def flag_key(graph: SmallGraph, labeled: int) -> str:
    """Canonical string of the flag whose labels are vertices ``0..labeled-1``."""
    return f"{canonical_form(graph, labeled).to_string()}({labeled})"


def is_isomorphic(first: SmallGraph, second: SmallGraph) -> bool:
    if first.order != second.order or first.edge_count != second.edge_count:
        return False
    return canonical_key(first) == canonical_key(second)


# ── Cliques and independent sets ────────────────────────────────────


def _max_clique(rows: Sequence[int], candidates: int) -> int:
    best = 0
    while candidates:
        if candidates.bit_count() <= best:
            break
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        best = max(best, 1 + _max_clique(rows, candidates & rows[v]))
    return best


def _has_clique(rows: Sequence[int], candidates: int, size: int) -> bool:
    if size <= 0:
        return True
    while candidates.bit_count() >= size:
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        if _has_clique(rows, candidates & rows[v], size - 1):
            return True
    return False


def _count_cliques(rows: Sequence[int], candidates: int, size: int) -> int:
    if size == 0:
        return 1
    if size == 1:
        return candidates.bit_count()
    total = 0
    while candidates.bit_count() >= size:
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        total += _count_cliques(rows, candidates & rows[v], size - 1)
    return total


def clique_number(graph: SmallGraph) -> int:
    return _max_clique(graph.rows, graph.vertex_mask)


def independence_number(graph: SmallGraph) -> int:
    """Size of the largest edge-free vertex set; 0 for the empty-order graph."""
    return clique_number(graph.complement())


def has_clique(graph: SmallGraph, size: int, within: int | None = None) -> bool:
    """Whether a clique of ``size`` vertices exists inside the ``within`` mask."""
    mask = graph.vertex_mask if within is None else within
    return _has_clique(graph.rows, mask, size)


def has_independent_set(
    graph: SmallGraph, size: int, within: int | None = None
) -> bool:
    return has_clique(graph.complement(), size, within)


def count_cliques(graph: SmallGraph, size: int) -> int:
    """Number of ``size``-vertex cliques, P(K_size, graph)."""
    if size < 0:
        msg = f"Clique size must be non-negative, got {size}"
        raise DomainError(msg)
    return _count_cliques(graph.rows, graph.vertex_mask, size)


def count_independent_sets(graph: SmallGraph, size: int) -> int:
    return count_cliques(graph.complement(), size)


# ── Induced subgraph counting ───────────────────────────────────────


def count_induced(pattern: SmallGraph, host: SmallGraph) -> int:
    """P(F, G): number of vertex subsets of ``host`` inducing a copy of ``pattern``."""
    m, n = pattern.order, host.order
    if m > n:
        msg = f"Pattern order {m} exceeds host order {n}"
        raise DomainError(msg)
    target_edges = pattern.edge_count
    target_key = canonical_key(pattern)
    count = 0
    for subset in itertools.combinations(range(n), m):
        mask = sum(1 << v for v in subset)
        edges = sum((host.rows[v] & mask).bit_count() for v in subset) // 2
        if edges != target_edges:
            continue
        if canonical_key(host.induced(subset)) == target_key:
            count += 1
    return count


def density(pattern: SmallGraph, host: SmallGraph) -> Fraction:
    """p(F, G) = P(F, G) / C(v(G), v(F)) as an exact rational."""
    count = count_induced(pattern, host)
    return Fraction(count, comb(host.order, pattern.order))


def complement(graph: SmallGraph) -> SmallGraph:
    return graph.complement()


# ── Embeddings ──────────────────────────────────────────────────────


def induced_embeddings(
    pattern: SmallGraph,
    host: SmallGraph,
    fixed: Sequence[int] = (),
) -> Iterator[tuple[int, ...]]:
    """Injective maps V(pattern) -> V(host) preserving adjacency and non-adjacency.

    ``fixed`` pins the images of the first ``len(fixed)`` pattern vertices.
    """
    m = pattern.order
    full = host.vertex_mask
    image: list[int] = list(fixed)
    for i, u in enumerate(image):
        for j in range(i):
            if pattern.adjacent(i, j) != host.adjacent(u, image[j]) or u == image[j]:
                return

    def candidates(i: int) -> int:
        mask = full
        for j in range(i):
            target = image[j]
            if pattern.adjacent(i, j):
                mask &= host.rows[target]
            else:
                mask &= ~host.rows[target] & ~(1 << target)
        return mask

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(image)
            return
        for u in _bits(candidates(i)):
            image.append(u)
            yield from extend(i + 1)
            image.pop()

    yield from extend(len(image))


def automorphism_count(graph: SmallGraph) -> int:
    return sum(1 for _ in induced_embeddings(graph, graph))
