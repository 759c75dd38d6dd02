"""PatternGraph — a small weighted graph standing for a family of large graphs.

In ``expansion`` mode every pattern vertex becomes a clique and pattern edges
become complete bipartite joins. In ``blowup`` mode parts are independent
sets. Weights give the limiting share of each part.

Zero-weight ``singletons`` are phantom slots: they never receive random
vertices but may host at most one embedded vertex. They model a single
extra edge whose density vanishes in the limit.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

from flagforge.errors import DomainError
from flagforge.graphs.smallgraph import SmallGraph, induced_embeddings, parse_graph


class PatternMode(str, Enum):
    EXPANSION = "expansion"
    BLOWUP = "blowup"


@dataclass(frozen=True)
class PatternGraph:
    base: SmallGraph
    weights: tuple[Fraction, ...]
    mode: PatternMode = PatternMode.EXPANSION
    singletons: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(self.weights) != self.base.order:
            msg = (
                f"{len(self.weights)} weights for a pattern "
                f"on {self.base.order} vertices"
            )
            raise DomainError(msg)
        if any(w < 0 for w in self.weights):
            msg = "Pattern weights must be non-negative"
            raise DomainError(msg)
        if sum(self.weights, Fraction(0)) != 1:
            msg = f"Pattern weights sum to {sum(self.weights)}, expected 1"
            raise DomainError(msg)
        for p in self.singletons:
            if not 0 <= p < self.base.order or self.weights[p] != 0:
                msg = f"Singleton slot {p} must be a zero-weight pattern vertex"
                raise DomainError(msg)

    @classmethod
    def uniform(
        cls, base: SmallGraph, mode: PatternMode | str = PatternMode.EXPANSION
    ) -> PatternGraph:
        share = Fraction(1, base.order)
        return cls(base, (share,) * base.order, PatternMode(mode))

    @property
    def order(self) -> int:
        return self.base.order

    def joined(self, p: int, q: int) -> bool:
        """Whether vertices placed in parts p and q are adjacent."""
        if p == q:
            return self.mode is PatternMode.EXPANSION
        return self.base.adjacent(p, q)

    @property
    def weighted_parts(self) -> list[int]:
        return [p for p, w in enumerate(self.weights) if w > 0]

    @property
    def usable_parts(self) -> list[int]:
        return [p for p, w in enumerate(self.weights) if w > 0 or p in self.singletons]

    def capacity(self, p: int) -> int | None:
        """Maximum number of embedded vertices part p can host (None: unbounded)."""
        return 1 if p in self.singletons else None

    def dual(self) -> PatternGraph:
        """The complement-side view: complemented base and the other mode."""
        expansion = self.mode is PatternMode.EXPANSION
        mode = PatternMode.BLOWUP if expansion else PatternMode.EXPANSION
        return PatternGraph(self.base.complement(), self.weights, mode, self.singletons)

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """Base automorphisms preserving weights and singleton slots."""
        return tuple(
            perm
            for perm in induced_embeddings(self.base, self.base)
            if all(self.weights[perm[p]] == self.weights[p] for p in range(self.order))
            and all(perm[p] in self.singletons for p in self.singletons)
        )

    @cached_property
    def orbit_representatives(self) -> tuple[int, ...]:
        seen: set[int] = set()
        reps = []
        for p in range(self.order):
            if p in seen:
                continue
            reps.append(p)
            seen.update(perm[p] for perm in self.automorphisms)
        return tuple(reps)

    def to_spec(self) -> str:
        weights = ",".join(str(w) for w in self.weights)
        return f"{self.mode.value}:{self.base.to_string()}:{weights}"


def strong_homomorphisms(
    graph: SmallGraph,
    pattern: PatternGraph,
    fixed: Sequence[int] = (),
    first_part_orbits: bool = False,
) -> list[tuple[int, ...]]:
    """Maps V(graph) -> usable parts with adjacency iff ``pattern.joined``.

    Singleton slots host at most one vertex. With ``first_part_orbits`` the
    first free vertex only visits one part per automorphism orbit.
    """
    usable = pattern.usable_parts
    reps = set(pattern.orbit_representatives) if first_part_orbits else None
    image = list(fixed)
    found: list[tuple[int, ...]] = []

    def fits(i: int, p: int) -> bool:
        if p in pattern.singletons and p in image:
            return False
        return all(
            graph.adjacent(i, j) == pattern.joined(p, image[j]) for j in range(i)
        )

    def extend(i: int) -> None:
        if i == graph.order:
            found.append(tuple(image))
            return
        for p in usable:
            if reps is not None and i == len(fixed) and p not in reps:
                continue
            if fits(i, p):
                image.append(p)
                extend(i + 1)
                image.pop()

    for i, p in enumerate(image):
        if any(graph.adjacent(i, j) != pattern.joined(p, image[j]) for j in range(i)):
            return []
        if p in pattern.singletons and p in image[:i]:
            return []
    extend(len(image))
    return found


def embeds(graph: SmallGraph, pattern: PatternGraph) -> bool:
    """Whether ``graph`` is induced in some large instance of ``pattern``."""
    usable = pattern.usable_parts
    image: list[int] = []

    def extend(i: int) -> bool:
        if i == graph.order:
            return True
        for p in usable:
            if p in pattern.singletons and p in image:
                continue
            if all(
                graph.adjacent(i, j) == pattern.joined(p, image[j]) for j in range(i)
            ):
                image.append(p)
                if extend(i + 1):
                    return True
                image.pop()
        return False

    return extend(0)


def _parse_weights(text: str, order: int) -> tuple[Fraction, ...]:
    if text in ("", "uniform"):
        return (Fraction(1, order),) * order
    try:
        weights = tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        msg = f"Invalid pattern weights {text!r}"
        raise DomainError(msg) from exc
    return weights


def parse_pattern(spec: str) -> PatternGraph:
    """Read ``expansion:<graph>:<weights>`` or ``blowup:<graph>:<weights>``.

    Weights are comma-separated rationals or ``uniform``. Named patterns:
    ``clebsch`` (blow-up of the Clebsch graph), ``clebsch-complement``
    (expansion of its complement) and ``phantom:<l>``.
    """
    spec = spec.strip()
    if spec in ("clebsch", "clebsch-complement") or spec.startswith("phantom:"):
        from flagforge.constructions import clebsch_pattern, phantom_pattern

        if spec.startswith("phantom:"):
            return phantom_pattern(int(spec.partition(":")[2]))
        return clebsch_pattern(complemented=spec == "clebsch-complement")

    mode_text, _, rest = spec.partition(":")
    try:
        mode = PatternMode(mode_text)
    except ValueError:
        msg = f"Unknown pattern mode {mode_text!r} in {spec!r}"
        raise DomainError(msg) from None
    graph_text, weight_text = _split_graph(rest)
    base = parse_graph(graph_text)
    return PatternGraph(base, _parse_weights(weight_text, base.order), mode)


def _split_graph(rest: str) -> tuple[str, str]:
    # the graph string has its own ':' separator
    order, sep, tail = rest.partition(":")
    if not sep:
        msg = f"Pattern graph {rest!r} lacks ':'"
        raise DomainError(msg)
    edges, _, weights = tail.partition(":")
    return f"{order}:{edges}", weights
