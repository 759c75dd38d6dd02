"""Turning floating SDP solutions into exact PSD blocks.

Each float matrix is projected onto the orthogonal complement of its forced
zero eigenvectors, rationalized entry by entry with a capped continued
fraction, and factored exactly. The result is PSD and annihilates every
forced vector by construction.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from flagforge.algebra.exactlin import (
    PSDBlock,
    RationalVector,
    factor_to_block,
    ldl_factor,
    null_space,
)
from flagforge.algebra.flagcalc import forced_vectors
from flagforge.constructions.expansions import phantom_pattern, turan_complement_pattern
from flagforge.errors import DomainError, RoundingError
from flagforge.models.certificate import Certificate
from flagforge.models.pattern import PatternGraph
from flagforge.parallel import WorkerPool, default_pool
from flagforge.sdp.generate import SdpProblem
from flagforge.sdp.sdpa import read_sdpa_solution
from flagforge.verification.pipeline import build_certificate

logger = logging.getLogger(__name__)

# ── Constants ────────────────────────────────────────────────────────

DEFAULT_DENOMINATOR_CAP = 10**4
DEFAULT_TOLERANCE = Fraction(1, 10**6)
SYMMETRY_TOLERANCE = 1e-6


@dataclass
class RoundingSpec:
    """Float blocks, their forced kernels and the rationalization cap."""

    float_blocks: list[np.ndarray]
    forced_kernel: list[list[RationalVector]] = field(default_factory=list)
    denominator_cap: int = DEFAULT_DENOMINATOR_CAP
    tolerance: Fraction = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if not self.forced_kernel:
            self.forced_kernel = [[] for _ in self.float_blocks]
        if len(self.forced_kernel) != len(self.float_blocks):
            msg = (
                f"{len(self.forced_kernel)} kernel lists for "
                f"{len(self.float_blocks)} blocks"
            )
            raise DomainError(msg)
        if self.denominator_cap < 1:
            msg = f"Denominator cap must be positive, got {self.denominator_cap}"
            raise DomainError(msg)
        for t, (block, kernel) in enumerate(zip(self.float_blocks, self.forced_kernel)):
            g = block.shape[0]
            if block.shape != (g, g):
                msg = f"Block {t} has shape {block.shape}, expected a square matrix"
                raise DomainError(msg)
            for vector in kernel:
                if len(vector) != g:
                    msg = (
                        f"Forced vector of length {len(vector)} "
                        f"for block {t} of size {g}"
                    )
                    raise DomainError(msg)


def _rationalize(value: float, cap: int) -> Fraction:
    return Fraction(value).limit_denominator(cap)


def round_block(
    matrix: np.ndarray,
    kernel: Sequence[RationalVector],
    cap: int = DEFAULT_DENOMINATOR_CAP,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    label: str = "block",
) -> PSDBlock:
    """Exact PSD block close to ``matrix`` whose kernel contains ``kernel``.

    Raises:
        DomainError: for an asymmetric float matrix.
        RoundingError: when the projected matrix stays indefinite beyond
            ``tolerance`` after dropping nonpositive pivots.
    """
    g = matrix.shape[0]
    if g == 0:
        return PSDBlock.zero(0)
    if not np.allclose(matrix, matrix.T, atol=SYMMETRY_TOLERANCE):
        msg = f"{label}: float matrix is not symmetric"
        raise DomainError(msg)
    basis = null_space([list(v) for v in kernel], g)
    if not basis:
        return PSDBlock.zero(g)

    b = np.array([[float(x) for x in vector] for vector in basis]).T
    gram_inverse = np.linalg.inv(b.T @ b)
    projected = gram_inverse @ b.T @ ((matrix + matrix.T) / 2) @ b @ gram_inverse
    d = len(basis)
    small = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            small[i][j] = small[j][i] = _rationalize(projected[i, j], cap)

    factor = ldl_factor(small)
    if factor.residual > tolerance:
        msg = f"{label}: projected matrix is indefinite, residual {factor.residual}"
        diagnostics = {
            "block": label,
            "residual": str(factor.residual),
            "rank": len(factor.pivots),
            "dimension": d,
        }
        raise RoundingError(msg, diagnostics)
    if factor.remainder:
        logger.warning(
            "%s: dropped %d-dimensional remainder with residual %s",
            label,
            d - len(factor.pivots),
            factor.residual,
        )
    reduced = factor_to_block(factor, d)
    rows = tuple(
        tuple(
            sum((basis[c][i] * reduced.r_matrix[c][r] for c in range(d)), Fraction(0))
            for r in range(reduced.rank_bound)
        )
        for i in range(g)
    )
    return PSDBlock(rows, reduced.qdash, g)


def round_solution(
    sdp: SdpProblem, spec: RoundingSpec, pool: WorkerPool | None = None
) -> list[PSDBlock]:
    """Round every type block of ``sdp``; blocks are independent jobs."""
    if len(spec.float_blocks) != len(sdp.types):
        msg = f"{len(spec.float_blocks)} float blocks for {len(sdp.types)} types"
        raise DomainError(msg)
    for t, (block, flags) in enumerate(zip(spec.float_blocks, sdp.flags)):
        if block.shape[0] != len(flags):
            msg = f"Block {t} has size {block.shape[0]} but type has {len(flags)} flags"
            raise DomainError(msg)
    mapper = pool or default_pool()
    jobs = [
        (block, kernel, spec.denominator_cap, spec.tolerance, f"types[{t}]")
        for t, (block, kernel) in enumerate(zip(spec.float_blocks, spec.forced_kernel))
    ]
    blocks = mapper.starmap(round_block, jobs)
    ranks = [b.rank_bound for b in blocks]
    logger.info("rounded %d blocks, ranks %s", len(blocks), ranks)
    return blocks


def collect_forced_vectors(
    pattern: PatternGraph,
    skeleton: Certificate | SdpProblem,
    phantom: bool = False,
    l: int | None = None,  # noqa: E741
) -> list[list[RationalVector]]:
    """Forced zero eigenvectors of every type.

    With ``phantom`` the embeddings into the Turan complement with one
    vanishing cross edge contribute as well; ``l`` defaults to the
    problem's l.
    """
    types = skeleton.type_specs()
    flags = skeleton.flag_specs()
    extra: PatternGraph | None = None
    if phantom:
        l = l if l is not None else skeleton.problem.l  # noqa: E741
        if pattern != turan_complement_pattern(l):
            logger.warning("phantom vectors assume the Turan complement pattern")
        extra = phantom_pattern(l)
    result = []
    for tau, fl in zip(types, flags):
        seen = {tuple(v): None for v in forced_vectors(pattern, tau, fl)}
        if extra is not None:
            for v in forced_vectors(extra, tau, fl):
                seen.setdefault(tuple(v), None)
        result.append([list(v) for v in seen])
    logger.debug("forced vectors per type: %s", [len(v) for v in result])
    return result


def certificate_from_solution(
    sdp: SdpProblem,
    solution: str | Path,
    pattern: PatternGraph | None = None,
    phantom: bool = False,
    denominator_cap: int = DEFAULT_DENOMINATOR_CAP,
    claimed_bound: Fraction | None = None,
    pool: WorkerPool | None = None,
) -> Certificate:
    """Solution file to certificate: read, round against the forced kernel, assemble."""
    read = read_sdpa_solution(solution, sdp)
    kernel = (
        collect_forced_vectors(pattern, sdp, phantom)
        if pattern is not None
        else [[] for _ in sdp.types]
    )
    spec = RoundingSpec(read.blocks, kernel, denominator_cap)
    blocks = round_solution(sdp, spec, pool)
    return build_certificate(
        sdp.problem, sdp.types, blocks, sdp.flags, claimed_bound, pool
    )
