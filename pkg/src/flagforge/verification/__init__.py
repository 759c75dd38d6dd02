"""Certificate verification and brute-force ground truth."""

from flagforge.verification.fixtures import goodman_certificate
from flagforge.verification.oracle import (
    SearchBudget,
    brute_force_f,
    identity_audit,
    ramsey_check,
    turan_complement_count,
)
from flagforge.verification.pipeline import (
    build_certificate,
    parse_certificate,
    sharp_report,
    skeleton_certificate,
    verify,
)

__all__ = [
    "SearchBudget",
    "brute_force_f",
    "build_certificate",
    "goodman_certificate",
    "identity_audit",
    "parse_certificate",
    "ramsey_check",
    "sharp_report",
    "skeleton_certificate",
    "turan_complement_count",
    "verify",
]
