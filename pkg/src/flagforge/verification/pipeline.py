"""End-to-end certificate verification.

The pipeline has four stages, each reported separately:

1. ``admissible``: the listed graphs are exactly the admissible graphs of
   order N (re-enumerated, never trusted).
2. ``flags``: every type's flag list is exactly its set of admissible
   flags of order (N + v) / 2.
3. ``psd``: every assembled block Q = R diag(q') R^T is positive
   semidefinite, checked by exact LDL^T.
4. ``bound``: min_i (p(K_k, G_i) - alpha_i) is at least the claimed bound.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from pydantic import ValidationError

from flagforge.algebra.exactlin import PSDBlock, assemble, check_psd, format_rational
from flagforge.algebra.flagcalc import derive_bound
from flagforge.constructions.expansions import sharp_list_from_pattern
from flagforge.errors import CertificateFormatError, FlagforgeError
from flagforge.graphs.enumeration import (
    TypeSpec,
    admissible_graphs,
    enumerate_flags,
    enumerate_types,
    flags_for_types,
)
from flagforge.graphs.smallgraph import canonical_key, flag_key, parse_flag, parse_graph
from flagforge.hashing import certificate_digest
from flagforge.models.certificate import (
    BlockModel,
    Certificate,
    ProblemSpec,
    certificate_payload,
)
from flagforge.models.pattern import PatternGraph
from flagforge.models.reports import SharpComparison, StageResult, VerificationReport
from flagforge.parallel import WorkerPool

logger = logging.getLogger(__name__)


def _json_path(loc: Sequence[int | str]) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else part
    return path


_PATH_PREFIX = re.compile(r"^([a-z_]+(?:\[\d+\])*(?:\.[a-z_]+(?:\[\d+\])*)*): ")


def _split_message(message: str, path: str) -> tuple[str, str]:
    message = message.removeprefix("Value error, ")
    match = _PATH_PREFIX.match(message)
    if match and not path:
        return message[match.end() :], match.group(1)
    return message, path


def _incomplete_listing(cert: Certificate) -> tuple[bool, str]:
    listed = {canonical_key(parse_graph(key)) for key in cert.admissible_graphs}
    expected = set(admissible_graphs(cert.problem.order, cert.problem.admissibility()))
    missing = sorted(expected - listed)
    if missing:
        return False, f"{len(missing)} admissible graphs missing, e.g. {missing[0]}"
    return True, ""


def parse_certificate(
    data: bytes | str | dict[str, Any], require_complete: bool = True
) -> Certificate:
    """Validate a certificate from JSON text or an already decoded dict.

    With ``require_complete`` an admissible list that misses some graph is a
    format error; otherwise that check is left to ``verify``.
    """
    try:
        if isinstance(data, dict):
            cert = Certificate.model_validate(data)
        else:
            cert = Certificate.model_validate_json(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        message, path = _split_message(first["msg"], _json_path(first["loc"]))
        raise CertificateFormatError(message, path) from exc

    if require_complete:
        complete, reason = _incomplete_listing(cert)
        if not complete:
            raise CertificateFormatError(reason, "admissible_graphs")
    logger.debug(
        "parsed certificate: N=%d, %d graphs, %d types",
        cert.problem.order,
        len(cert.admissible_graphs),
        len(cert.types),
    )
    return cert


# ── Stages ──────────────────────────────────────────────────────────


def _stage_admissible(cert: Certificate, pool: WorkerPool | None) -> StageResult:
    problem = cert.problem
    listed = [canonical_key(parse_graph(key)) for key in cert.admissible_graphs]
    expected = set(admissible_graphs(problem.order, problem.admissibility(), pool))
    duplicates = sorted(key for key, n in Counter(listed).items() if n > 1)
    missing = sorted(expected - set(listed))
    passed = not missing and not duplicates
    if missing:
        detail = f"{len(missing)} of {len(expected)} admissible graphs missing"
    elif duplicates:
        detail = f"{len(duplicates)} graphs listed more than once"
    else:
        detail = f"all {len(expected)} admissible graphs listed"
    return StageResult(
        name="admissible", passed=passed, detail=detail, offending=missing + duplicates
    )


def _stage_flags(cert: Certificate) -> StageResult:
    problem = cert.problem
    rule = problem.admissibility()
    offending = []
    for t, text in enumerate(cert.types):
        tau = TypeSpec.parse(text)
        flag_order = (problem.order + tau.order) // 2
        flags = enumerate_flags(tau, flag_order, rule, problem.order)
        expected = {f.key for f in flags}
        listed = [flag_key(*parse_flag(f)) for f in cert.flags[t]]
        if len(set(listed)) != len(listed):
            offending.append(f"types[{t}] {text}: repeated flag")
        missing = sorted(expected - set(listed))
        offending.extend(f"types[{t}] {text}: missing {key}" for key in missing)
    keys = [canonical_key(parse_graph(text)) for text in cert.types]
    if len(set(keys)) != len(keys):
        offending.append("types: a type is listed twice")
    return StageResult(
        name="flags",
        passed=not offending,
        detail=f"{len(cert.types)} types checked",
        offending=offending,
    )


def _stage_psd(blocks: Sequence[PSDBlock]) -> StageResult:
    offending = [
        f"blocks[{t}]"
        for t, block in enumerate(blocks)
        if not check_psd(assemble(block))
    ]
    return StageResult(
        name="psd",
        passed=not offending,
        detail=f"{len(blocks)} blocks factored",
        offending=offending,
    )


def verify(cert: Certificate, pool: WorkerPool | None = None) -> VerificationReport:
    """Run all four stages and collect them into a report."""
    digest = certificate_digest(certificate_payload(cert))
    stages = [
        _stage_admissible(cert, pool),
        _stage_flags(cert),
        _stage_psd(cert.psd_blocks()),
    ]
    report = VerificationReport(
        certificate_digest=digest,
        verdict=False,
        stages=stages,
        claimed_bound=cert.claimed_bound,
    )
    if not all(stage.passed for stage in stages):
        stages.append(
            StageResult(
                name="bound", passed=False, detail="skipped after earlier failure"
            )
        )
        logger.info("verification failed at stage %s", report.failed_stage)
        return report

    try:
        bound = derive_bound(cert, pool)
    except FlagforgeError as exc:
        stages.append(StageResult(name="bound", passed=False, detail=str(exc)))
        return report
    violating = bound.violating_index
    offending = [] if violating is None else [bound.graph_keys[violating]]
    stages.append(
        StageResult(
            name="bound",
            passed=bound.verified,
            detail=(
                f"derived {format_rational(bound.derived_bound)}, "
                f"claimed {format_rational(bound.claimed_bound)}"
            ),
            offending=offending,
        )
    )
    report.derived_bound = bound.derived_bound
    report.sharp = bound.sharp_keys
    report.slack = bound.slack
    report.verdict = bound.verified
    logger.info(
        "verification %s: derived bound %s",
        "passed" if report.verdict else "failed",
        bound.derived_bound,
    )
    return report


def sharp_report(
    cert: Certificate, pattern: PatternGraph, pool: WorkerPool | None = None
) -> SharpComparison:
    """Certificate-sharp graphs against the graphs the construction forces sharp."""
    problem = cert.problem
    certificate_sharp = derive_bound(cert, pool).sharp_keys
    construction_sharp = sharp_list_from_pattern(
        pattern, problem.order, problem.admissibility(), pool
    )
    sharp = {canonical_key(parse_graph(key)) for key in certificate_sharp}
    missing = [key for key in construction_sharp if key not in sharp]
    return SharpComparison(
        certificate_sharp=certificate_sharp,
        construction_sharp=construction_sharp,
        missing=missing,
        contained=not missing,
    )


def build_certificate(
    problem: ProblemSpec,
    types: Sequence[str],
    blocks: Sequence[PSDBlock],
    flags: Sequence[Sequence[str]] | None = None,
    claimed_bound: Fraction | None = None,
    pool: WorkerPool | None = None,
) -> Certificate:
    """Assemble a complete certificate, claiming the derived bound by default."""
    rule = problem.admissibility()
    if flags is None:
        flags = [
            [
                f.key
                for f in enumerate_flags(
                    TypeSpec.parse(text),
                    (problem.order + parse_graph(text).order) // 2,
                    rule,
                    problem.order,
                )
            ]
            for text in types
        ]
    cert = Certificate(
        problem=problem,
        claimed_bound=claimed_bound if claimed_bound is not None else Fraction(0),
        admissible_graphs=admissible_graphs(problem.order, rule, pool),
        types=list(types),
        flags=[list(f) for f in flags],
        blocks=[BlockModel.from_block(block) for block in blocks],
    )
    if claimed_bound is None:
        derived = derive_bound(cert, pool).derived_bound
        cert = cert.model_copy(update={"claimed_bound": derived})
    return cert


def skeleton_certificate(
    problem: ProblemSpec,
    types: Sequence[str] | None = None,
    pool: WorkerPool | None = None,
) -> Certificate:
    """Certificate with zero blocks and claimed bound 0.

    ``types=None`` takes every type of admissible order. Used wherever only
    the combinatorial skeleton matters, such as the identity audit.
    """
    rule = problem.admissibility()
    if types is None:
        specs = enumerate_types(problem.order, rule, pool)
    else:
        specs = [TypeSpec.parse(text) for text in types]
    flags = flags_for_types(specs, problem.order, rule, pool)
    return build_certificate(
        problem,
        types=[tau.key for tau in specs],
        blocks=[PSDBlock.zero(len(fl)) for fl in flags],
        flags=[[f.key for f in fl] for fl in flags],
        claimed_bound=Fraction(0),
        pool=pool,
    )
