"""Reference certificates small enough to check by hand."""

from __future__ import annotations

from fractions import Fraction

from flagforge.algebra.exactlin import PSDBlock
from flagforge.models.certificate import Certificate, ProblemSpec
from flagforge.verification.pipeline import build_certificate


def goodman_certificate(claimed_bound: Fraction | None = Fraction(1, 4)) -> Certificate:
    """Triangle density at least 1/4 among graphs with no independent triple.

    One type (a single labeled vertex) with flags "2:(1)" and "2:12(1)";
    Q = (1/8) R R^T with R = (1, -1)^T. All three admissible graphs of
    order 3 are sharp.
    """
    block = PSDBlock.build([[1], [-1]], [Fraction(1, 8)])
    return build_certificate(
        ProblemSpec(k=3, l=3, order=3),
        types=["1:"],
        blocks=[block],
        flags=[["2:(1)", "2:12(1)"]],
        claimed_bound=claimed_bound,
    )
