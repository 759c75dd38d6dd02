"""The flag-algebra SDP for a problem and a type selection.

Variables are the bound c (a 1x1 block, so c >= 0), one PSD matrix Q per
type and a diagonal slack block over the admissible graphs. Constraint i
reads

    c + sum_tau <Q^tau, D_i^tau> + s_i = p(K_k, G_i),

with D_i^tau the count-v1 pair-coefficient table, and c is maximised.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from flagforge.algebra.flagcalc import CoefficientTable, coefficient_tables
from flagforge.graphs.enumeration import (
    FlagSpec,
    TypeSpec,
    admissible_family,
    enumerate_types,
    flags_for_types,
)
from flagforge.graphs.smallgraph import parse_flag
from flagforge.models.certificate import ProblemSpec
from flagforge.parallel import WorkerPool

logger = logging.getLogger(__name__)


@dataclass
class SdpProblem:
    """One SDP instance ready to be written for an external solver."""

    problem: ProblemSpec
    types: list[str]
    flags: list[list[str]]
    graph_keys: list[str]
    objective: list[Fraction]
    tables: list[list[CoefficientTable]] = field(repr=False)

    @property
    def constraint_count(self) -> int:
        return len(self.graph_keys)

    @property
    def block_sizes(self) -> list[int]:
        """SDPA block structure; the negative last entry marks the diagonal block."""
        return [1] + [len(f) for f in self.flags] + [-len(self.graph_keys)]

    def type_specs(self) -> list[TypeSpec]:
        return [TypeSpec.parse(text) for text in self.types]

    def flag_specs(self) -> list[list[FlagSpec]]:
        return [[FlagSpec(*parse_flag(text)) for text in fl] for fl in self.flags]


def generate_sdp(
    problem: ProblemSpec,
    types: Sequence[str] | None = None,
    pool: WorkerPool | None = None,
) -> SdpProblem:
    """Build the SDP; ``types=None`` selects every type of admissible order.

    Raises:
        DomainError: when the order is too large to enumerate or a type
            does not fit the order.
    """
    rule = problem.admissibility()
    n = problem.order
    graphs = admissible_family(n, rule, pool)
    if types is None:
        specs = enumerate_types(n, rule, pool)
    else:
        specs = [TypeSpec.parse(text) for text in types]
    flags = flags_for_types(specs, n, rule, pool)
    tables = coefficient_tables(specs, flags, graphs, pool)
    total = comb(n, problem.k)
    objective = [
        Fraction(rule.objective_count(g, problem.k), total) if total else Fraction(0)
        for g in graphs
    ]
    sdp = SdpProblem(
        problem=problem,
        types=[tau.key for tau in specs],
        flags=[[f.key for f in fl] for fl in flags],
        graph_keys=[g.to_string() for g in graphs],
        objective=objective,
        tables=tables,
    )
    logger.info(
        "SDP for k=%d l=%d N=%d: %d constraints, blocks %s",
        problem.k,
        problem.l,
        n,
        sdp.constraint_count,
        sdp.block_sizes,
    )
    return sdp
