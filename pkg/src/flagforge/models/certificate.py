"""Certificate — the proof object for a lower bound on clique density.

A certificate lists the problem, the claimed bound, every admissible graph
of order N, the chosen types with their flags, and one PSD block per type.
All rationals are ``"p/q"`` strings on disk and Fractions in memory.

Structural validation (parsing, admissibility, dimensions, positivity of
q') happens here; the mathematical checks live in ``flagforge.verification``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Any

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)

from flagforge.algebra.exactlin import PSDBlock, format_rational, parse_rational
from flagforge.errors import GraphParseError
from flagforge.graphs.enumeration import Admissibility, FlagSpec, TypeSpec
from flagforge.graphs.smallgraph import SmallGraph, parse_flag, parse_graph

# ── Constants ────────────────────────────────────────────────────────

CONVENTION = "count-v1"

RationalStr = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


class ProblemSpec(BaseModel):
    """Problem parameters: minimise K_k density subject to alpha < l."""

    k: int = Field(ge=1, description="Size of the clique whose density is bounded")
    l: int = Field(  # noqa: E741
        ge=2, description="Independent sets of size l are forbidden"
    )
    order: int = Field(ge=1, le=10, description="Order N of the admissible graphs")
    extra_forbidden: list[str] = Field(
        default_factory=list,
        description="Graph strings additionally forbidden as induced subgraphs",
    )
    convention: str = Field(
        default=CONVENTION,
        description="Normalization convention of the alpha coefficients",
    )
    complement: bool = Field(
        default=False,
        description="Work in the complement: forbid K_l, bound independent k-sets",
    )

    @field_validator("convention")
    @classmethod
    def _known_convention(cls, value: str) -> str:
        if value != CONVENTION:
            msg = f"Unsupported convention {value!r}, expected {CONVENTION!r}"
            raise ValueError(msg)
        return value

    @field_validator("extra_forbidden")
    @classmethod
    def _parse_forbidden(cls, value: list[str]) -> list[str]:
        for i, text in enumerate(value):
            _parse_or_raise(text, f"extra_forbidden[{i}]")
        return value

    def admissibility(self) -> Admissibility:
        return Admissibility(self.l, self.complement, tuple(self.extra_forbidden))

    def objective_graph(self) -> SmallGraph:
        return self.admissibility().objective_graph(self.k)


class BlockModel(BaseModel):
    """One PSD block Q = R diag(q') R^T."""

    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")

    qdash: list[RationalStr] = Field(description="Diagonal of Q', strictly positive")
    r: list[list[RationalStr]] = Field(description="R as a g x d row-major matrix")

    @field_validator("qdash")
    @classmethod
    def _positive(cls, value: list[Fraction]) -> list[Fraction]:
        for i, q in enumerate(value):
            if q <= 0:
                msg = f"qdash[{i}] = {format_rational(q)} must be strictly positive"
                raise ValueError(msg)
        return value

    @model_validator(mode="after")
    def _rectangular(self) -> BlockModel:
        d = len(self.qdash)
        for i, row in enumerate(self.r):
            if len(row) != d:
                msg = f"r[{i}] has {len(row)} entries, qdash has {d}"
                raise ValueError(msg)
        return self

    def to_block(self) -> PSDBlock:
        return PSDBlock(
            tuple(tuple(row) for row in self.r), tuple(self.qdash), len(self.r)
        )

    @classmethod
    def from_block(cls, block: PSDBlock) -> BlockModel:
        return cls(
            qdash=list(block.qdash), r=[list(row) for row in block.r_matrix]
        )


class Certificate(BaseModel):
    """The complete certificate file."""

    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")

    problem: ProblemSpec = Field(description="Problem parameters")
    claimed_bound: RationalStr = Field(description="Claimed lower bound c'")
    admissible_graphs: list[str] = Field(
        description="Canonical keys of all admissible graphs of order N"
    )
    types: list[str] = Field(default_factory=list, description="Type graph strings")
    flags: list[list[str]] = Field(
        default_factory=list, description="Per type, its ordered flag strings"
    )
    blocks: list[BlockModel] = Field(
        default_factory=list, description="Per type, its PSD block"
    )

    @model_validator(mode="after")
    def _structure(self) -> Certificate:
        problem = self.problem
        rule = problem.admissibility()
        n = problem.order
        if not (len(self.types) == len(self.flags) == len(self.blocks)):
            msg = (
                f"types ({len(self.types)}), flags ({len(self.flags)}) and "
                f"blocks ({len(self.blocks)}) must have equal length"
            )
            raise ValueError(msg)

        for i, key in enumerate(self.admissible_graphs):
            path = f"admissible_graphs[{i}]"
            graph = _parse_or_raise(key, path)
            if graph.order != n:
                msg = f"{path}: {key!r} has order {graph.order}, expected {n}"
                raise ValueError(msg)
            if not rule.admits(graph):
                msg = f"{path}: {key!r} is not admissible"
                raise ValueError(msg)

        for t, text in enumerate(self.types):
            path = f"types[{t}]"
            tau = _parse_or_raise(text, path)
            v = tau.order
            if v >= n or (n - v) % 2:
                msg = f"{path}: order {v} does not leave a positive even N - v"
                raise ValueError(msg)
            if not rule.admits(tau):
                msg = f"{path}: {text!r} is not admissible"
                raise ValueError(msg)
            flag_order = (n + v) // 2
            for j, flag_text in enumerate(self.flags[t]):
                fpath = f"flags[{t}][{j}]"
                try:
                    graph, labeled = parse_flag(flag_text)
                except GraphParseError as exc:
                    msg = f"{fpath}: {exc}"
                    raise ValueError(msg) from None
                if labeled != v or graph.order != flag_order:
                    msg = (
                        f"{fpath}: {flag_text!r} is not a flag of order "
                        f"{flag_order} over {v} labels"
                    )
                    raise ValueError(msg)
                if graph.induced(range(v)) != tau:
                    msg = f"{fpath}: labeled part differs from {text!r}"
                    raise ValueError(msg)
                if not rule.admits(graph):
                    msg = f"{fpath}: {flag_text!r} is not admissible"
                    raise ValueError(msg)
            g = len(self.flags[t])
            if len(self.blocks[t].r) != g:
                msg = f"blocks[{t}]: dimension {len(self.blocks[t].r)} but {g} flags"
                raise ValueError(msg)
        return self

    # ── Materialized views ──────────────────────────────────────────

    def graphs(self) -> list[SmallGraph]:
        return [parse_graph(key) for key in self.admissible_graphs]

    def type_specs(self) -> list[TypeSpec]:
        return [TypeSpec.parse(text) for text in self.types]

    def flag_specs(self) -> list[list[FlagSpec]]:
        return [[FlagSpec(*parse_flag(text)) for text in flags] for flags in self.flags]

    def psd_blocks(self) -> list[PSDBlock]:
        return [block.to_block() for block in self.blocks]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def _parse_or_raise(text: str, path: str) -> SmallGraph:
    try:
        return parse_graph(text)
    except GraphParseError as exc:
        msg = f"{path}: {exc}"
        raise ValueError(msg) from None


def certificate_payload(cert: Certificate) -> dict[str, Any]:
    """JSON-ready dict with rationals as strings."""
    return cert.model_dump(mode="json")
