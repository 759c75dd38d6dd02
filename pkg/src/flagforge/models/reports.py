"""Machine-readable reports emitted by the verifier, the oracle and the audits."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from flagforge.models.certificate import CONVENTION, RationalStr


class StageResult(BaseModel):
    """Outcome of one verification stage."""

    name: str = Field(description="Stage name")
    passed: bool = Field(description="Whether the stage passed")
    detail: str = Field(default="", description="Human-readable diagnosis")
    offending: list[str] = Field(
        default_factory=list, description="Graphs, flags or blocks that failed"
    )


class VerificationReport(BaseModel):
    """Result of the full certificate pipeline."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    convention: str = Field(default=CONVENTION, description="Coefficient convention")
    certificate_digest: str = Field(description="sha256 of the canonical certificate")
    verdict: bool = Field(description="True iff every stage passed")
    stages: list[StageResult] = Field(default_factory=list)
    claimed_bound: RationalStr = Field(description="Bound claimed by the certificate")
    derived_bound: RationalStr | None = Field(
        default=None, description="Bound derived from the blocks (stage 4)"
    )
    sharp: list[str] = Field(default_factory=list, description="Sharp graph keys")
    slack: list[RationalStr] = Field(
        default_factory=list, description="p(K_k, G_i) - alpha_i - c' per graph"
    )

    @property
    def failed_stage(self) -> str | None:
        return next((s.name for s in self.stages if not s.passed), None)


class SharpComparison(BaseModel):
    """Certificate-sharp graphs against graphs forced sharp by a construction."""

    certificate_sharp: list[str] = Field(default_factory=list)
    construction_sharp: list[str] = Field(default_factory=list)
    missing: list[str] = Field(
        default_factory=list,
        description="Construction graphs the certificate does not make sharp",
    )
    contained: bool = Field(
        description="construction_sharp is a subset of certificate_sharp"
    )


class ExtremalResult(BaseModel):
    """Exact minimum number of k-cliques over admissible graphs of order n."""

    n: int
    k: int
    l: int  # noqa: E741
    complemented: bool = False
    status: Literal["complete", "incomplete"] = "complete"
    value: int | None = Field(default=None, description="f(n, k, l) when complete")
    upper_bound: int | None = Field(
        default=None, description="Best value seen, also reported when incomplete"
    )
    extremal_keys: list[str] = Field(default_factory=list)
    nodes: int = Field(default=0, description="Search nodes expanded")


class RamseyResult(BaseModel):
    """Existence of a graph of order n with no K_s and no independent t-set."""

    s: int
    t: int
    n: int
    status: Literal["complete", "incomplete"] = "complete"
    exists: bool | None = None
    witness: str | None = None


class IdentityAuditReport(BaseModel):
    """Double-counting identity check over a certificate skeleton."""

    order: int
    l: int  # noqa: E741
    seed: int
    trials: int
    graphs_checked: int = 0
    max_discrepancy: int = 0
    passed: bool = True
    counterexample: str | None = None
    detail: str = ""


class ClebschRow(BaseModel):
    x: str
    y: str
    z: str
    x_class: list[str]
    y_class: list[str]
    valid: bool


class ClebschAuditReport(BaseModel):
    """Pairwise X-equivalence audit on the Clebsch graph."""

    rows: list[ClebschRow] = Field(
        default_factory=list, description="The reference witness table, recomputed"
    )
    orbit_count: int = Field(
        default=0, description="Orbits of unordered pairs under the index symmetries"
    )
    reduced_pairs: int = Field(
        default=0, description="Pairs whose orbit contains a reference row"
    )
    uncovered_orbits: list[list[str]] = Field(
        default_factory=list,
        description="One pair per orbit that no reference row represents",
    )
    total_pairs: int = Field(default=0, description="Unordered pairs searched")
    unreduced_passed: bool = Field(
        default=False, description="Every pair has a witness z"
    )
    full_x_singletons: bool = Field(
        default=False, description="X-equivalence with the full set X is trivial"
    )
    passed: bool = False
    failures: list[str] = Field(default_factory=list)
