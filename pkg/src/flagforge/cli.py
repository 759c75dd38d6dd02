"""Command-line front end.

    flagforge [--json] [--threads N] [--seed S] [-v] <command> ...

Reports go to stdout, logging to stderr. Exit status is 0 on success, 1
when a verification, audit, strictness check or budgeted search does not
succeed, and 2 on malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from flagforge import CONVENTION, __version__
from flagforge.algebra import check_forced_kernel, derive_bound, parse_rational
from flagforge.constructions import (
    OptimizerConfig,
    check_strict,
    clebsch_equivalence_audit,
    clebsch_independent_set_census,
    clique_density_limit,
    expansion_clique_count,
    expansion_graph,
    optimize_weights,
    phantom_sharp_list,
    sharp_list_from_pattern,
)
from flagforge.errors import FlagforgeError
from flagforge.graphs import Admissibility, admissible_graphs, count_cliques
from flagforge.models import Certificate, PatternGraph, ProblemSpec, parse_pattern
from flagforge.parallel import WorkerPool
from flagforge.sdp import (
    DEFAULT_DENOMINATOR_CAP,
    certificate_from_solution,
    generate_sdp,
    write_sdpa,
)
from flagforge.verification import (
    SearchBudget,
    brute_force_f,
    identity_audit,
    parse_certificate,
    ramsey_check,
    sharp_report,
    skeleton_certificate,
    verify,
)

logger = logging.getLogger(__name__)

# ── Constants ────────────────────────────────────────────────────────

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

Handler = Callable[[argparse.Namespace, WorkerPool], int]


# ── Output ──────────────────────────────────────────────────────────


def _emit(
    args: argparse.Namespace, payload: BaseModel | dict[str, Any], text: str
) -> None:
    if args.json:
        if isinstance(payload, BaseModel):
            print(payload.model_dump_json(indent=2))
        else:
            print(json.dumps(payload, indent=2))
    else:
        print(text)


def _verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def _listing(keys: Sequence[str], noun: str) -> str:
    return "\n".join([*keys, f"{len(keys)} {noun}"])


def _load_certificate(path: str, require_complete: bool = True) -> Certificate:
    return parse_certificate(Path(path).read_bytes(), require_complete)


def _problem(args: argparse.Namespace) -> ProblemSpec:
    return ProblemSpec(
        k=args.k,
        l=args.l,
        order=args.order,
        extra_forbidden=list(args.forbid),
        complement=args.complement,
    )


def _budget(args: argparse.Namespace) -> SearchBudget | None:
    if args.budget is None and args.max_nodes is None:
        return None
    return SearchBudget(seconds=args.budget, max_nodes=args.max_nodes)


# ── Commands ────────────────────────────────────────────────────────


def cmd_enumerate(args: argparse.Namespace, pool: WorkerPool) -> int:
    rule = Admissibility(args.l, args.complement, tuple(args.forbid))
    keys = admissible_graphs(args.order, rule, pool)
    payload = {
        "order": args.order,
        "l": args.l,
        "complement": args.complement,
        "extra_forbidden": list(args.forbid),
        "count": len(keys),
        "graphs": keys,
    }
    _emit(args, payload, _listing(keys, "graphs"))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, pool: WorkerPool) -> int:
    cert = _load_certificate(args.cert, require_complete=False)
    report = verify(cert, pool)
    lines = [f"certificate {report.certificate_digest[:16]} ({report.convention})"]
    for stage in report.stages:
        lines.append(f"  {stage.name:<11} {_verdict(stage.passed)}  {stage.detail}")
        lines.extend(f"    {item}" for item in stage.offending[:10])
    if report.derived_bound is not None:
        lines.append(f"sharp graphs: {len(report.sharp)}")
    lines.append(f"verdict: {_verdict(report.verdict)}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report.verdict else EXIT_FAILED


def cmd_bound(args: argparse.Namespace, pool: WorkerPool) -> int:
    cert = _load_certificate(args.cert)
    report = derive_bound(cert, pool)
    data = report.to_dict()
    lines = [
        f"derived bound {data['derived_bound']}",
        f"claimed bound {data['claimed_bound']}",
        f"sharp graphs {len(data['sharp'])} of {len(report.graph_keys)}",
        f"violating graph {data['violating_graph'] or '-'}",
    ]
    passed = report.verified
    if args.pattern is not None:
        kernel = check_forced_kernel(cert, parse_pattern(args.pattern))
        data["forced_kernel"] = kernel.to_dict()
        lines.append(
            f"forced kernel: {_verdict(kernel.passed)} ({kernel.checked} vectors)"
        )
        passed = passed and kernel.passed
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if passed else EXIT_FAILED


def cmd_construct(args: argparse.Namespace, pool: WorkerPool) -> int:
    pattern = parse_pattern(args.pattern)
    limit = clique_density_limit(pattern, args.k)
    payload: dict[str, Any] = {
        "pattern": pattern.to_spec(),
        "k": args.k,
        "density_limit": str(limit),
    }
    lines = [f"limit K_{args.k} density {limit} (~{float(limit):.12g})"]
    if args.sizes:
        sizes = [int(s) for s in args.sizes.split(",")]
        graph = expansion_graph(pattern, sizes)
        by_formula = expansion_clique_count(pattern, sizes, args.k)
        direct = count_cliques(graph, args.k)
        payload.update(
            sizes=sizes,
            graph=graph.to_string(),
            clique_count=by_formula,
            direct_count=direct,
        )
        lines.append(f"sizes {sizes}: {by_formula} cliques ({direct} counted)")
        if by_formula != direct:
            logger.error(
                "formula gives %d cliques, direct count %d", by_formula, direct
            )
            _emit(args, payload, "\n".join(lines))
            return EXIT_FAILED
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_strict(args: argparse.Namespace, pool: WorkerPool) -> int:
    pattern = parse_pattern(args.pattern)
    bound = parse_rational(args.bound)
    strict, violators = check_strict(pattern.base, args.l, args.k, bound, pool)
    payload = {
        "pattern": pattern.to_spec(),
        "l": args.l,
        "k": args.k,
        "bound": str(bound),
        "strict": strict,
        "violators": [report.to_dict() for report in violators],
    }
    lines = [f"strict: {_verdict(strict)}"]
    for report in violators[:20]:
        vertices = [v + 1 for v in report.vertices]
        lines.append(f"  X={vertices} gradient {report.gradient}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if strict else EXIT_FAILED


def cmd_clebsch_audit(args: argparse.Namespace, pool: WorkerPool) -> int:
    report = clebsch_equivalence_audit()
    census = clebsch_independent_set_census()
    lines = [
        f"{'x':<6} {'y':<6} {'z':<6} classes",
        *(
            f"{row.x:<6} {row.y:<6} {row.z:<6} "
            f"{{{', '.join(row.x_class)}}} / {{{', '.join(row.y_class)}}}"
            f"{'' if row.valid else '  INVALID'}"
            for row in report.rows
        ),
        f"pair orbits {report.orbit_count}, "
        f"{report.reduced_pairs} of {report.total_pairs} pairs reduced to the table",
        f"unreduced search: {_verdict(report.unreduced_passed)}",
        "maximal independent sets through 00000: "
        + ", ".join(f"{n} of size {size}" for size, n in sorted(census.items())),
        f"audit: {_verdict(report.passed)}",
    ]
    payload = report.model_dump()
    payload["census"] = {str(size): n for size, n in sorted(census.items())}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sharp(args: argparse.Namespace, pool: WorkerPool) -> int:
    if args.cert:
        if args.pattern is None:
            msg = "sharp --cert requires --pattern"
            raise FlagforgeError(msg)
        cert = _load_certificate(args.cert)
        pattern = parse_pattern(args.pattern)
        comparison = sharp_report(cert, pattern, pool)
        kernel = check_forced_kernel(cert, pattern)
        payload = comparison.model_dump()
        payload["forced_kernel"] = kernel.to_dict()
        text = "\n".join(
            [
                f"certificate sharp {len(comparison.certificate_sharp)}",
                f"construction sharp {len(comparison.construction_sharp)}",
                *(f"  missing {key}" for key in comparison.missing),
                f"contained: {_verdict(comparison.contained)}",
                f"forced kernel: {_verdict(kernel.passed)} ({kernel.checked} vectors)",
            ]
        )
        _emit(args, payload, text)
        return EXIT_OK if comparison.contained and kernel.passed else EXIT_FAILED

    if args.phantom:
        keys = phantom_sharp_list(args.l, args.order, pool)
        spec = f"phantom:{args.l}"
    else:
        if args.pattern is None:
            msg = "sharp requires --pattern, --phantom or --cert"
            raise FlagforgeError(msg)
        pattern = parse_pattern(args.pattern)
        rule = Admissibility(args.l, args.complement)
        keys = sharp_list_from_pattern(pattern, args.order, rule, pool)
        spec = pattern.to_spec()
    payload = {
        "pattern": spec,
        "order": args.order,
        "l": args.l,
        "count": len(keys),
        "sharp": keys,
    }
    _emit(args, payload, _listing(keys, "sharp graphs"))
    return EXIT_OK


def cmd_identity_audit(args: argparse.Namespace, pool: WorkerPool) -> int:
    if args.cert:
        cert = _load_certificate(args.cert)
    else:
        problem = ProblemSpec(
            k=args.k, l=args.l, order=args.order, complement=args.complement
        )
        cert = skeleton_certificate(problem, pool=pool)
    report = identity_audit(cert, args.trials, args.seed)
    text = "\n".join(
        [
            f"N={report.order} l={report.l} seed={report.seed}",
            f"graphs checked {report.graphs_checked}",
            f"max discrepancy {report.max_discrepancy}",
            f"counterexample {report.counterexample or '-'}",
            f"audit: {_verdict(report.passed)}",
        ]
    )
    _emit(args, report, text)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_optimize(args: argparse.Namespace, pool: WorkerPool) -> int:
    pattern: PatternGraph = parse_pattern(args.pattern)
    config = OptimizerConfig(
        restarts=args.restarts, max_iterations=args.max_iterations, seed=args.seed
    )
    optimum = optimize_weights(pattern.base, args.k, args.tolerance, config)
    weights = ", ".join(f"{w:.9f}" for w in optimum.weights)
    text = "\n".join(
        [
            f"density {optimum.density:.15g} (floating point, not exact)",
            f"weights [{weights}]",
            f"converged {optimum.converged} after {optimum.iterations} iterations",
        ]
    )
    _emit(args, optimum.to_dict(), text)
    return EXIT_OK


def cmd_oracle_f(args: argparse.Namespace, pool: WorkerPool) -> int:
    result = brute_force_f(
        args.n, args.k, args.l, _budget(args), args.complement, pool
    )
    value = result.value if result.value is not None else "?"
    text = "\n".join(
        [
            f"f({args.n},{args.k},{args.l}) = {value} [{result.status}]",
            f"upper bound {result.upper_bound}, {result.nodes} nodes",
            *(f"  {key}" for key in result.extremal_keys[:20]),
        ]
    )
    _emit(args, result, text)
    return EXIT_OK if result.status == "complete" else EXIT_FAILED


def cmd_oracle_ramsey(args: argparse.Namespace, pool: WorkerPool) -> int:
    result = ramsey_check(args.s, args.t, args.n, _budget(args), pool)
    answer = {True: "yes", False: "no", None: "unknown"}[result.exists]
    text = "\n".join(
        [
            f"graph on {args.n} vertices without K_{args.s} "
            f"or independent {args.t}-set: {answer} [{result.status}]",
            f"witness {result.witness or '-'}",
        ]
    )
    _emit(args, result, text)
    return EXIT_OK if result.status == "complete" else EXIT_FAILED


def cmd_sdp_gen(args: argparse.Namespace, pool: WorkerPool) -> int:
    sdp = generate_sdp(_problem(args), args.types, pool)
    path = write_sdpa(sdp, args.out)
    payload = {
        "path": str(path),
        "constraints": sdp.constraint_count,
        "block_sizes": sdp.block_sizes,
        "types": sdp.types,
        "flags": [len(f) for f in sdp.flags],
    }
    text = (
        f"wrote {path}: {sdp.constraint_count} constraints, "
        f"blocks {' '.join(map(str, sdp.block_sizes))}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_sdp_round(args: argparse.Namespace, pool: WorkerPool) -> int:
    sdp = generate_sdp(_problem(args), args.types, pool)
    pattern = parse_pattern(args.pattern) if args.pattern else None
    claimed: Fraction | None = (
        parse_rational(args.claimed) if args.claimed is not None else None
    )
    cert = certificate_from_solution(
        sdp,
        args.solution,
        pattern=pattern,
        phantom=args.phantom,
        denominator_cap=args.dencap,
        claimed_bound=claimed,
        pool=pool,
    )
    Path(args.out).write_text(cert.to_json())
    report = verify(cert, pool)
    text = "\n".join(
        [
            f"wrote {args.out}",
            f"claimed bound {report.claimed_bound}",
            f"verdict: {_verdict(report.verdict)}",
        ]
    )
    _emit(args, report, text)
    return EXIT_OK if report.verdict else EXIT_FAILED


# ── Parser ──────────────────────────────────────────────────────────


def _common() -> argparse.ArgumentParser:
    """Global flags, also accepted after the command name."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="Print one JSON document instead of text.",
    )
    common.add_argument(
        "--threads", type=int, default=argparse.SUPPRESS,
        help="Worker processes (default: 1).",
    )
    common.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS,
        help="Seed for randomized audits and restarts (default: 0).",
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=argparse.SUPPRESS,
        help="More logging on stderr; repeat for debug output.",
    )
    return common


def _problem_arguments(p: argparse.ArgumentParser, order: str = "--order") -> None:
    p.add_argument("--k", type=int, required=True, help="Clique size k.")
    p.add_argument("--l", type=int, required=True, help="Forbidden set size l.")
    p.add_argument(order, type=int, required=True, help="Graph order N.")
    p.add_argument(
        "--complement", action="store_true",
        help="Forbid K_l and count independent k-sets.",
    )
    p.add_argument(
        "--forbid", action="append", default=[], metavar="GRAPH",
        help="Additional forbidden induced subgraph (repeatable).",
    )


def _budget_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=float, help="Time budget in seconds.")
    p.add_argument("--max-nodes", type=int, help="Search node budget.")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="flagforge",
        description="Exact flag-algebra certificates for clique density.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"flagforge {__version__} (convention {CONVENTION})",
    )
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    def command(
        name: str, handler: Handler, help_text: str
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    p = command("enumerate", cmd_enumerate, "List admissible graphs of one order.")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--alpha-lt", dest="l", type=int, required=True,
                   help="Independence number strictly below this value.")
    p.add_argument("--complement", action="store_true",
                   help="Bound the clique number instead.")
    p.add_argument("--forbid", action="append", default=[], metavar="GRAPH")

    p = command("verify", cmd_verify, "Run the four-stage certificate check.")
    p.add_argument("--cert", required=True, help="Certificate JSON file.")

    p = command("bound", cmd_bound, "Derive the bound a certificate proves.")
    p.add_argument("--cert", required=True)
    p.add_argument("--pattern", help="Also check its forced zero eigenvectors.")

    p = command("construct", cmd_construct, "Clique density of a construction.")
    p.add_argument("--pattern", required=True, help="Pattern spec, e.g. clebsch.")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sizes", help="Comma-separated part sizes of one expansion.")

    p = command("strict", cmd_strict, "Check that a pattern is strict.")
    p.add_argument("--pattern", required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", required=True, help="Density c as 'p/q'.")

    command("clebsch-audit", cmd_clebsch_audit, "Clebsch X-equivalence audit.")

    p = command("sharp", cmd_sharp, "Graphs forced sharp by a construction.")
    p.add_argument("--pattern")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--phantom", action="store_true",
                   help="Turan complement with one vanishing cross edge.")
    p.add_argument("--complement", action="store_true")
    p.add_argument("--cert", help="Compare against this certificate instead.")

    p = command("identity-audit", cmd_identity_audit,
                "Check the double-counting identity on random hosts.")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--complement", action="store_true")
    p.add_argument("--cert", help="Audit this certificate's types and flags.")

    p = command("optimize", cmd_optimize, "Float search for optimal part weights.")
    p.add_argument("--pattern", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iterations", type=int, default=1000)

    oracle = commands.add_parser("oracle", help="Brute-force ground truth.")
    searches = oracle.add_subparsers(dest="search", required=True)
    p = searches.add_parser("f", parents=[common], help="Exact f(n, k, l).")
    p.set_defaults(handler=cmd_oracle_f)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--complement", action="store_true")
    _budget_arguments(p)
    p = searches.add_parser("ramsey", parents=[common], help="Ramsey existence.")
    p.set_defaults(handler=cmd_oracle_ramsey)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _budget_arguments(p)

    sdp = commands.add_parser("sdp", help="SDP files for external solvers.")
    steps = sdp.add_subparsers(dest="step", required=True)
    p = steps.add_parser("gen", parents=[common], help="Write an SDPA file.")
    p.set_defaults(handler=cmd_sdp_gen)
    _problem_arguments(p)
    p.add_argument("--types", nargs="*", help="Type strings (default: all).")
    p.add_argument("--out", required=True, help="Output .dat-s path.")
    p = steps.add_parser("round", parents=[common],
                         help="Round a solver solution into a certificate.")
    p.set_defaults(handler=cmd_sdp_round)
    _problem_arguments(p)
    p.add_argument("--types", nargs="*")
    p.add_argument("--solution", required=True, help="Solver solution file.")
    p.add_argument("--pattern", help="Extremal pattern for forced kernels.")
    p.add_argument("--phantom", action="store_true")
    p.add_argument("--dencap", type=int, default=DEFAULT_DENOMINATOR_CAP,
                   help="Continued-fraction denominator cap.")
    p.add_argument("--claimed", help="Claimed bound (default: derived).")
    p.add_argument("--out", required=True, help="Output certificate path.")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        with WorkerPool(threads=args.threads) as pool:
            return int(args.handler(args, pool))
    except (FlagforgeError, ValidationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
