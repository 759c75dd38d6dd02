"""The Clebsch graph L and the X-equivalence audit around it.

Vertices are the sixteen binary 5-sequences of even weight; two are
adjacent when their term-wise sum modulo 2 has weight 4. L is triangle-free,
5-regular and vertex-transitive. Uniform expansions of its complement give
the best known constructions for k = 6, 7 with l = 3.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from functools import cache

from flagforge.errors import DomainError
from flagforge.graphs.smallgraph import (
    SmallGraph,
    automorphism_count,
    induced_embeddings,
)
from flagforge.models.pattern import PatternGraph, PatternMode
from flagforge.models.reports import ClebschAuditReport, ClebschRow

logger = logging.getLogger(__name__)

# ── Constants ────────────────────────────────────────────────────────

WORD_LENGTH = 5

# image of the 5-cycle plus an isolated vertex
X_SET: tuple[str, ...] = ("00000", "00011", "01100", "10001", "00110", "11000")
ROOT = "00000"

# (x, y, z): z establishes that x and y are separated by Z = X - {z}
REFERENCE_WITNESSES: tuple[tuple[str, str, str], ...] = (
    ("00000", "00011", "10001"),
    ("00000", "00101", "00011"),
    ("00000", "01111", "00011"),
    ("00011", "01100", "00110"),
    ("00011", "00110", "00011"),
    ("00011", "00101", "00011"),
    ("00011", "01010", "00110"),
    ("00011", "10100", "10001"),
    ("00101", "01010", "00110"),
    ("00101", "01001", "00110"),
    ("01111", "10111", "00011"),
    ("01111", "11011", "00011"),
)


@cache
def clebsch_vertices() -> tuple[str, ...]:
    """Even-weight 5-bit words in increasing order; vertex i is the i-th word."""
    words = (format(n, f"0{WORD_LENGTH}b") for n in range(1 << WORD_LENGTH))
    return tuple(w for w in words if w.count("1") % 2 == 0)


def _index(word: str) -> int:
    try:
        return clebsch_vertices().index(word)
    except ValueError:
        msg = f"{word!r} is not a Clebsch vertex"
        raise DomainError(msg) from None


def _adjacent_words(a: str, b: str) -> bool:
    return bin(int(a, 2) ^ int(b, 2)).count("1") == 4


@cache
def clebsch_graph() -> SmallGraph:
    words = clebsch_vertices()
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(words)), 2)
        if _adjacent_words(words[i], words[j])
    ]
    return SmallGraph.from_edges(len(words), edges)


def clebsch_pattern(complemented: bool = False) -> PatternGraph:
    """Uniform blow-up of L, or the uniform expansion of its complement.

    ``complemented`` selects the second. Both describe the same graphs seen
    from the two sides of complementation.
    """
    graph = clebsch_graph()
    if complemented:
        return PatternGraph.uniform(graph.complement(), PatternMode.EXPANSION)
    return PatternGraph.uniform(graph, PatternMode.BLOWUP)


def clebsch_clique_formula(k: int) -> Fraction:
    """Limit K_k density of uniform expansions of the complement of L."""
    if k < 1:
        msg = f"Clique size must be at least 1, got {k}"
        raise DomainError(msg)
    e = k - 1
    numerator = 5 * 5**e + 10 * 4**e - 30 * 3**e + 20 * 2**e - 4
    return Fraction(numerator, 16**e)


def neighbours(word: str) -> frozenset[str]:
    graph = clebsch_graph()
    words = clebsch_vertices()
    row = graph.rows[_index(word)]
    return frozenset(words[j] for j in range(len(words)) if row >> j & 1)


# ── Structure ───────────────────────────────────────────────────────


def maximal_independent_sets(
    graph: SmallGraph, containing: int | None = None
) -> Iterator[frozenset[int]]:
    """Maximal independent sets, optionally only those through one vertex."""
    full = graph.vertex_mask
    non_adjacent = [full & ~row & ~(1 << v) for v, row in enumerate(graph.rows)]

    def extend(chosen: int, candidates: int, excluded: int) -> Iterator[int]:
        if not candidates and not excluded:
            yield chosen
            return
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            yield from extend(
                chosen | low, candidates & non_adjacent[v], excluded & non_adjacent[v]
            )
            candidates ^= low
            excluded |= low

    if containing is None:
        start = (0, full, 0)
    else:
        start = (1 << containing, non_adjacent[containing], 0)
    for mask in extend(*start):
        yield frozenset(v for v in range(graph.order) if mask >> v & 1)


def clebsch_independent_set_census(root: str = ROOT) -> dict[int, int]:
    """Sizes of the maximal independent sets of L through ``root``."""
    sets = maximal_independent_sets(clebsch_graph(), _index(root))
    return dict(sorted(Counter(len(s) for s in sets).items()))


def clebsch_automorphism_count() -> int:
    return automorphism_count(clebsch_graph())


def is_vertex_transitive(graph: SmallGraph) -> bool:
    """Whether some automorphism sends vertex 0 to every vertex."""
    return all(
        next(induced_embeddings(graph, graph, fixed=(v,)), None) is not None
        for v in range(graph.order)
    )


# ── X-equivalence ───────────────────────────────────────────────────


def _trace(word: str, within: Iterable[str]) -> frozenset[str]:
    return neighbours(word) & frozenset(within)


def x_equivalent(x: str, y: str, within: Iterable[str]) -> bool:
    """x ~ y when both see the same vertices of ``within``."""
    members = frozenset(within)
    return _trace(x, members) == _trace(y, members)


def x_classes(within: Iterable[str]) -> list[frozenset[str]]:
    """The equivalence classes of V(L), ordered by smallest member."""
    members = frozenset(within)
    groups: dict[frozenset[str], set[str]] = {}
    for word in clebsch_vertices():
        groups.setdefault(_trace(word, members), set()).add(word)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def x_class(word: str, within: Iterable[str]) -> frozenset[str]:
    members = frozenset(within)
    trace = _trace(word, members)
    return frozenset(w for w in clebsch_vertices() if _trace(w, members) == trace)


def _homogeneous(first: frozenset[str], second: frozenset[str]) -> bool:
    """Whether the bipartite graph between the two classes is complete or empty."""
    joined = {_adjacent_words(a, b) for a in first for b in second}
    return len(joined) <= 1


def separating_witnesses(x: str, y: str) -> list[str]:
    """Every z in X - {00000} such that Z = X - {z} splits x from y homogeneously."""
    found = []
    for z in X_SET:
        if z == ROOT:
            continue
        rest = [w for w in X_SET if w != z]
        if x_equivalent(x, y, rest):
            continue
        if _homogeneous(x_class(x, rest), x_class(y, rest)):
            found.append(z)
    return found


def index_symmetries() -> list[tuple[int, ...]]:
    """Cyclic shifts and reversals of the five positions; all preserve X."""
    shifts = [
        tuple((i + s) % WORD_LENGTH for i in range(WORD_LENGTH))
        for s in range(WORD_LENGTH)
    ]
    return shifts + [tuple(reversed(p)) for p in shifts]


def _permute(word: str, perm: Sequence[int]) -> str:
    return "".join(word[perm[i]] for i in range(WORD_LENGTH))


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def pair_orbits() -> list[list[tuple[str, str]]]:
    """Orbits of unordered pairs of distinct vertices under ``index_symmetries``."""
    symmetries = index_symmetries()
    seen: set[tuple[str, str]] = set()
    orbits = []
    for x, y in itertools.combinations(clebsch_vertices(), 2):
        if (x, y) in seen:
            continue
        orbit = sorted({_pair(_permute(x, p), _permute(y, p)) for p in symmetries})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _row(x: str, y: str, z: str) -> ClebschRow:
    rest = [w for w in X_SET if w != z]
    return ClebschRow(
        x=x,
        y=y,
        z=z,
        x_class=sorted(x_class(x, rest)),
        y_class=sorted(x_class(y, rest)),
        valid=z in separating_witnesses(x, y),
    )


def clebsch_equivalence_audit() -> ClebschAuditReport:
    """Recompute the reference witness table and search every pair exhaustively."""
    failures = []
    rows = [_row(x, y, z) for x, y, z in REFERENCE_WITNESSES]
    failures.extend(
        f"reference row ({r.x}, {r.y}) with z={r.z} does not separate"
        for r in rows
        if not r.valid
    )

    reference = {_pair(x, y) for x, y, _ in REFERENCE_WITNESSES}
    orbits = pair_orbits()
    covered = [orbit for orbit in orbits if reference.intersection(orbit)]
    uncovered = [
        list(orbit[0]) for orbit in orbits if not reference.intersection(orbit)
    ]

    pairs = list(itertools.combinations(clebsch_vertices(), 2))
    unseparated = [f"{x}-{y}" for x, y in pairs if not separating_witnesses(x, y)]
    failures.extend(f"no witness for {pair}" for pair in unseparated)

    singletons = all(len(c) == 1 for c in x_classes(X_SET))
    if not singletons:
        failures.append("X-equivalence with the full set X is not trivial")

    report = ClebschAuditReport(
        rows=rows,
        orbit_count=len(orbits),
        reduced_pairs=sum(len(orbit) for orbit in covered),
        uncovered_orbits=uncovered,
        total_pairs=len(pairs),
        unreduced_passed=not unseparated,
        full_x_singletons=singletons,
        passed=not failures,
        failures=failures,
    )
    logger.info(
        "clebsch audit: %d orbits, %d covered by reference rows, passed=%s",
        len(orbits),
        len(covered),
        report.passed,
    )
    return report
