"""Data models — certificates, patterns and reports."""

from flagforge.models.certificate import (
    CONVENTION,
    BlockModel,
    Certificate,
    ProblemSpec,
    RationalStr,
)
from flagforge.models.pattern import (
    PatternGraph,
    PatternMode,
    embeds,
    parse_pattern,
    strong_homomorphisms,
)
from flagforge.models.reports import (
    ClebschAuditReport,
    ClebschRow,
    ExtremalResult,
    IdentityAuditReport,
    RamseyResult,
    SharpComparison,
    StageResult,
    VerificationReport,
)

__all__ = [
    "CONVENTION",
    "BlockModel",
    "Certificate",
    "ClebschAuditReport",
    "ClebschRow",
    "ExtremalResult",
    "IdentityAuditReport",
    "PatternGraph",
    "PatternMode",
    "ProblemSpec",
    "RamseyResult",
    "RationalStr",
    "SharpComparison",
    "StageResult",
    "VerificationReport",
    "embeds",
    "parse_pattern",
    "strong_homomorphisms",
]
