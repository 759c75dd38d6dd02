"""Brute-force ground truth for small orders.

Extremal values f(n, k, l), Ramsey thresholds and the double-counting
identity behind the coefficient tables are all recomputed here by
exhaustive search, independently of the certificate machinery.

The search grows isomorphism classes one vertex at a time. Since adding a
vertex never removes a clique, any partial graph whose objective count
already exceeds the incumbent can be discarded together with its subtree.
The incumbent starts at the Turan complement count and drops whenever a
greedy completion of the cheapest class on the current level does better.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import partial
from math import comb

from flagforge.algebra.flagcalc import CoefficientFn, pair_coefficients, type_embeddings
from flagforge.errors import DomainError
from flagforge.graphs.enumeration import (
    MAX_ENUMERATION_ORDER,
    Admissibility,
    FlagSpec,
    TypeSpec,
    admissible_family,
)
from flagforge.graphs.smallgraph import (
    MAX_ORDER,
    SmallGraph,
    canonical_form,
    count_induced,
    flag_key,
)
from flagforge.models.certificate import Certificate
from flagforge.models.reports import ExtremalResult, IdentityAuditReport, RamseyResult
from flagforge.parallel import WorkerPool, default_pool
from flagforge.seeds import derive_seed, seeded_rng

logger = logging.getLogger(__name__)


@dataclass
class SearchBudget:
    """Limits on an exhaustive search; ``None`` means unlimited."""

    seconds: float | None = None
    max_nodes: int | None = None
    _started: float = field(default_factory=time.monotonic, init=False, repr=False)

    def exhausted(self, nodes: int) -> bool:
        if self.max_nodes is not None and nodes > self.max_nodes:
            return True
        return (
            self.seconds is not None
            and time.monotonic() - self._started > self.seconds
        )

    def restart(self) -> None:
        self._started = time.monotonic()


def turan_complement_count(n: int, k: int, l: int) -> int:  # noqa: E741
    """k-cliques in the disjoint union of l - 1 near-equal cliques on n vertices."""
    if n < 0 or k < 1 or l < 2:
        msg = f"Need n >= 0, k >= 1 and l >= 2, got n={n}, k={k}, l={l}"
        raise DomainError(msg)
    parts = l - 1
    base, extra = divmod(n, parts)
    sizes = [base + 1] * extra + [base] * (parts - extra)
    return sum(comb(size, k) for size in sizes)


# ── Level search ────────────────────────────────────────────────────


def _children(
    parent: SmallGraph, rule: Admissibility, k: int | None, cap: int | None
) -> list[tuple[str, SmallGraph, int]]:
    found = []
    for neighbourhood in range(1 << parent.order):
        if not rule.admits_extension(parent, neighbourhood):
            continue
        child = canonical_form(parent.add_vertex(neighbourhood))
        count = 0 if k is None else rule.objective_count(child, k)
        if cap is not None and count > cap:
            continue
        found.append((child.to_string(), child, count))
    return found


def _greedy_completion(
    graph: SmallGraph, n: int, rule: Admissibility, k: int
) -> int | None:
    """Objective count of ``graph`` extended to n vertices, cheapest vertex first.

    None when no admissible vertex can be added.
    """
    count = rule.objective_count(graph, k)
    while graph.order < n:
        best: tuple[SmallGraph, int] | None = None
        for neighbourhood in range(1 << graph.order):
            if not rule.admits_extension(graph, neighbourhood):
                continue
            child = graph.add_vertex(neighbourhood)
            child_count = rule.objective_count(child, k)
            if best is None or child_count < best[1]:
                best = (child, child_count)
        if best is None:
            return None
        graph, count = best
    return count


@dataclass
class _SearchOutcome:
    level: dict[str, tuple[SmallGraph, int]]
    nodes: int
    complete: bool
    cap: int | None = None


def _grow(
    n: int,
    rule: Admissibility,
    k: int | None,
    cap: int | None,
    budget: SearchBudget,
    pool: WorkerPool | None,
) -> _SearchOutcome:
    if not 0 <= n <= MAX_ORDER:
        msg = f"Search order {n} outside [0, {MAX_ORDER}]"
        raise DomainError(msg)
    mapper = pool or default_pool()
    root = SmallGraph.empty(0)
    level: dict[str, tuple[SmallGraph, int]] = {root.to_string(): (root, 0)}
    budget.restart()
    nodes = 0
    for order in range(1, n + 1):
        parents = [graph for graph, _ in level.values()]
        nodes += len(parents)
        if budget.exhausted(nodes):
            logger.warning(
                "search budget exhausted at order %d after %d nodes", order, nodes
            )
            return _SearchOutcome(level, nodes, complete=False, cap=cap)
        grown: dict[str, tuple[SmallGraph, int]] = {}
        step = partial(_children, rule=rule, k=k, cap=cap)
        for children in mapper.map(step, parents):
            for key, child, count in children:
                grown.setdefault(key, (child, count))
        level = {key: grown[key] for key in sorted(grown)}
        logger.debug("order %d: %d classes kept", order, len(level))
        if not level:
            break
        if k is not None and order < n:
            cheapest, _ = min(level.values(), key=lambda item: item[1])
            completed = _greedy_completion(cheapest, n, rule, k)
            if completed is not None and (cap is None or completed < cap):
                logger.debug("order %d: incumbent lowered to %d", order, completed)
                cap = completed
                level = {key: item for key, item in level.items() if item[1] <= cap}
    return _SearchOutcome(level, nodes, complete=True, cap=cap)


def brute_force_f(
    n: int,
    k: int,
    l: int,  # noqa: E741
    budget: SearchBudget | None = None,
    complemented: bool = False,
    pool: WorkerPool | None = None,
) -> ExtremalResult:
    """Exact f(n, k, l): the fewest k-cliques in an n-vertex graph with alpha < l.

    With ``complemented`` the family is clique number < l and independent
    k-sets are counted. An exhausted budget yields status "incomplete" with
    the best known upper bound and no value.
    """
    if k < 1:
        msg = f"Clique size k must be at least 1, got {k}"
        raise DomainError(msg)
    rule = Admissibility(l, complemented)
    incumbent = turan_complement_count(n, k, l)
    budget = budget or SearchBudget()
    outcome = _grow(n, rule, k, incumbent, budget, pool)
    result = ExtremalResult(
        n=n, k=k, l=l, complemented=complemented, nodes=outcome.nodes
    )
    if not outcome.complete:
        result.status = "incomplete"
        result.upper_bound = outcome.cap
        return result
    value = min(count for _, count in outcome.level.values())
    result.value = value
    result.upper_bound = value
    result.extremal_keys = [
        key for key, (_, count) in outcome.level.items() if count == value
    ]
    logger.info(
        "f(%d,%d,%d) = %d, %d extremal classes, %d nodes",
        n,
        k,
        l,
        value,
        len(result.extremal_keys),
        outcome.nodes,
    )
    return result


def ramsey_check(
    s: int,
    t: int,
    n: int,
    budget: SearchBudget | None = None,
    pool: WorkerPool | None = None,
) -> RamseyResult:
    """Whether some n-vertex graph has no K_s and no independent set of size t."""
    if s < 2 or t < 2:
        msg = f"Ramsey parameters must be at least 2, got s={s}, t={t}"
        raise DomainError(msg)
    rule = Admissibility(t, extra_forbidden=(SmallGraph.complete(s).to_string(),))
    outcome = _grow(n, rule, None, None, budget or SearchBudget(), pool)
    if not outcome.complete:
        return RamseyResult(s=s, t=t, n=n, status="incomplete")
    witness = next(iter(outcome.level), None)
    return RamseyResult(s=s, t=t, n=n, exists=witness is not None, witness=witness)


# ── Double-counting identity ────────────────────────────────────────


def _direct_pairs(
    tau: TypeSpec, flags: Sequence[FlagSpec], host: SmallGraph
) -> list[list[int]]:
    """#{(chi, X1, X2)} in ``host`` with X1, X2 meeting exactly in the image of chi."""
    g = len(flags)
    table = [[0] * g for _ in range(g)]
    if not flags:
        return table
    v = tau.order
    half = flags[0].order - v
    index = {flag_key(flag.graph, v): a for a, flag in enumerate(flags)}
    for chi in type_embeddings(tau, host):
        rest = [u for u in range(host.order) if u not in chi]
        labels: dict[tuple[int, ...], int | None] = {
            subset: index.get(flag_key(host.induced(list(chi) + list(subset)), v))
            for subset in itertools.combinations(rest, half)
        }
        for first, a in labels.items():
            if a is None:
                continue
            for second, b in labels.items():
                if b is not None and not set(first) & set(second):
                    table[a][b] += 1
    return table


def _identity_discrepancy(
    cert: Certificate, host: SmallGraph, coefficients: CoefficientFn
) -> int:
    graphs = cert.graphs()
    copies = [count_induced(graph, host) for graph in graphs]
    worst = 0
    for tau, flags in zip(cert.type_specs(), cert.flag_specs()):
        direct = _direct_pairs(tau, flags, host)
        summed = [[0] * len(flags) for _ in flags]
        for graph, p in zip(graphs, copies):
            if p == 0:
                continue
            table = coefficients(tau, flags, graph)
            for a, row in enumerate(table):
                for b, value in enumerate(row):
                    summed[a][b] += value * p
        for a, row in enumerate(direct):
            for b, value in enumerate(row):
                worst = max(worst, abs(value - summed[a][b]))
    return worst


def _hosts(
    order: int, rule: Admissibility, trials: int, seed: int
) -> list[SmallGraph]:
    family = admissible_family(order, rule)
    rng = seeded_rng(seed, f"identity-audit:{order}:{rule.l}")
    if len(family) > trials:
        family = tuple(rng.sample(family, trials))
    hosts = []
    for graph in family:
        perm = list(range(order))
        rng.shuffle(perm)
        hosts.append(graph.induced(perm))
    return hosts


def identity_audit(
    cert: Certificate,
    trials: int,
    seed: int,
    coefficients: CoefficientFn | None = None,
) -> IdentityAuditReport:
    """Check sum_S coef(a, b; G[S]) against sum_i coef(a, b; G_i) P(G_i, G).

    Hosts are randomly relabeled admissible graphs of orders N and N + 1;
    a whole order is checked when its family has at most ``trials`` classes.
    ``coefficients`` replaces ``pair_coefficients`` on the right-hand side.
    """
    problem = cert.problem
    rule = problem.admissibility()
    fn = coefficients or pair_coefficients
    report = IdentityAuditReport(
        order=problem.order,
        l=problem.l,
        seed=derive_seed(seed, "identity-audit"),
        trials=trials,
    )
    for order in (problem.order, problem.order + 1):
        if order > MAX_ENUMERATION_ORDER:
            report.detail = f"order {order} is beyond exhaustive enumeration"
            break
        for host in _hosts(order, rule, trials, report.seed):
            report.graphs_checked += 1
            discrepancy = _identity_discrepancy(cert, host, fn)
            if discrepancy > report.max_discrepancy:
                report.max_discrepancy = discrepancy
            if discrepancy and report.counterexample is None:
                report.counterexample = host.to_string()
    report.passed = report.max_discrepancy == 0
    if report.passed:
        logger.info("identity holds on %d graphs", report.graphs_checked)
    else:
        logger.info(
            "identity fails, max discrepancy %d at %s",
            report.max_discrepancy,
            report.counterexample,
        )
    return report
