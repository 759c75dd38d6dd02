"""SDPA sparse input files and CSDP-style solution files.

Input (".dat-s"): comment lines starting with ``*``, then the number of
constraints, the number of blocks, the block sizes, the right-hand side and
one line ``<matrix> <block> <i> <j> <value>`` per nonzero upper-triangle
entry. Matrix 0 is the objective, matrix i is constraint i.

Solution: the dual vector y on the first line, then ``<matno> <block> <i>
<j> <value>`` lines where matno 1 is the dual slack Z and matno 2 the
primal matrix X.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from flagforge.errors import DomainError
from flagforge.sdp.generate import SdpProblem

logger = logging.getLogger(__name__)

PRIMAL_MATRIX = 2


def _decimal(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return repr(float(value))


def sdpa_text(sdp: SdpProblem) -> str:
    problem = sdp.problem
    lines = [
        f"* flagforge {problem.convention}: k={problem.k} l={problem.l} "
        f"N={problem.order} complement={problem.complement} types={len(sdp.types)}",
        str(sdp.constraint_count),
        str(len(sdp.block_sizes)),
        " ".join(str(size) for size in sdp.block_sizes),
        " ".join(_decimal(p) for p in sdp.objective),
        "0 1 1 1 1",
    ]
    slack_block = len(sdp.block_sizes)
    for i, row in enumerate(sdp.tables, start=1):
        lines.append(f"{i} 1 1 1 1")
        for t, table in enumerate(row, start=2):
            for a, values in enumerate(table):
                for b in range(a, len(values)):
                    if values[b]:
                        lines.append(f"{i} {t} {a + 1} {b + 1} {_decimal(values[b])}")
        lines.append(f"{i} {slack_block} {i} {i} 1")
    return "\n".join(lines) + "\n"


def write_sdpa(sdp: SdpProblem, path: str | Path) -> Path:
    """Write the ".dat-s" file and return its path."""
    path = Path(path)
    path.write_text(sdpa_text(sdp))
    logger.info("wrote %s (%d constraints)", path, sdp.constraint_count)
    return path


@dataclass
class SdpSolution:
    """Primal matrix X read back from a solver, split into its blocks."""

    bound: float
    blocks: list[np.ndarray]
    slack: np.ndarray


def parse_sdpa_solution(text: str, sdp: SdpProblem) -> SdpSolution:
    sizes = sdp.block_sizes
    matrices = [np.zeros((abs(size), abs(size))) for size in sizes]
    body = [line for line in text.splitlines()[1:] if line.strip()]
    for number, line in enumerate(body, start=2):
        fields = line.split()
        if len(fields) != 5:
            msg = f"Solution line {number}: expected 5 fields, got {len(fields)}"
            raise DomainError(msg)
        try:
            matno, block, i, j = (int(x) for x in fields[:4])
            value = float(fields[4].replace("D", "E"))
        except ValueError:
            msg = f"Solution line {number}: cannot parse {line.strip()!r}"
            raise DomainError(msg) from None
        if matno != PRIMAL_MATRIX:
            continue
        if not 1 <= block <= len(sizes):
            msg = f"Solution line {number}: block {block} outside 1..{len(sizes)}"
            raise DomainError(msg)
        target = matrices[block - 1]
        if not (1 <= i <= target.shape[0] and 1 <= j <= target.shape[0]):
            msg = f"Solution line {number}: entry ({i}, {j}) outside block {block}"
            raise DomainError(msg)
        target[i - 1, j - 1] = target[j - 1, i - 1] = value
    return SdpSolution(
        bound=float(matrices[0][0, 0]),
        blocks=matrices[1:-1],
        slack=np.diag(matrices[-1]).copy(),
    )


def read_sdpa_solution(path: str | Path, sdp: SdpProblem) -> SdpSolution:
    """Read a CSDP-style solution file for ``sdp``."""
    solution = parse_sdpa_solution(Path(path).read_text(), sdp)
    logger.info("solver bound %.12g from %s", solution.bound, path)
    return solution
