"""Tests for the brute-force oracle and the identity audit."""

from collections.abc import Sequence

import pytest

from flagforge.algebra import PSDBlock, pair_coefficients, remove_type
from flagforge.errors import DomainError
from flagforge.graphs import (
    Admissibility,
    FlagSpec,
    SmallGraph,
    TypeSpec,
    admissible_family,
    canonical_key,
    count_cliques,
    enumerate_flags,
    independence_number,
    is_isomorphic,
    parse_graph,
)
from flagforge.models import Certificate, ProblemSpec
from flagforge.parallel import WorkerPool
from flagforge.verification import (
    SearchBudget,
    brute_force_f,
    build_certificate,
    goodman_certificate,
    identity_audit,
    ramsey_check,
    turan_complement_count,
)
from flagforge.verification.oracle import _hosts

TWO_TRIANGLES = SmallGraph.from_edges(
    6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
)


def _skeleton(order: int, types: list[str]) -> Certificate:
    blocks = []
    for text in types:
        tau = TypeSpec.parse(text)
        flags = enumerate_flags(tau, (order + tau.order) // 2, 3, order)
        blocks.append(PSDBlock.zero(len(flags)))
    return build_certificate(
        ProblemSpec(k=3, l=3, order=order), types=types, blocks=blocks
    )


class TestTuranComplementCount:
    def test_values(self) -> None:
        assert turan_complement_count(6, 3, 3) == 2
        assert turan_complement_count(5, 3, 3) == 1
        assert turan_complement_count(7, 3, 3) == 5
        assert turan_complement_count(8, 3, 4) == 2
        assert turan_complement_count(2, 3, 3) == 0

    def test_rejects_bad_parameters(self) -> None:
        with pytest.raises(DomainError):
            turan_complement_count(5, 3, 1)


class TestBruteForce:
    def test_c5_is_triangle_free(self) -> None:
        result = brute_force_f(5, 3, 3)
        assert result.status == "complete"
        assert result.value == 0
        assert len(result.extremal_keys) == 1
        assert is_isomorphic(parse_graph(result.extremal_keys[0]), SmallGraph.cycle(5))

    def test_two_triangles(self) -> None:
        result = brute_force_f(6, 3, 3)
        assert result.value == 2
        assert any(
            is_isomorphic(parse_graph(key), TWO_TRIANGLES)
            for key in result.extremal_keys
        )

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_matches_exhaustive_family(self, n: int) -> None:
        exhaustive = min(count_cliques(g, 3) for g in admissible_family(n, 3))
        assert brute_force_f(n, 3, 3).value == exhaustive

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_turan_complement_is_upper_bound(self, n: int) -> None:
        result = brute_force_f(n, 3, 3)
        assert result.value is not None
        assert result.value <= turan_complement_count(n, 3, 3)

    def test_extremal_graphs_are_admissible(self) -> None:
        result = brute_force_f(7, 3, 3)
        for key in result.extremal_keys:
            graph = parse_graph(key)
            assert independence_number(graph) < 3
            assert count_cliques(graph, 3) == result.value

    @pytest.mark.parametrize("n", [6, 7])
    def test_extremal_keys_are_every_minimizer(self, n: int) -> None:
        family = admissible_family(n, 3)
        best = min(count_cliques(g, 3) for g in family)
        minimizers = {canonical_key(g) for g in family if count_cliques(g, 3) == best}
        found = brute_force_f(n, 3, 3).extremal_keys
        assert {canonical_key(parse_graph(key)) for key in found} == minimizers

    @pytest.mark.slow
    def test_ramsey_graph_order_eight(self) -> None:
        assert brute_force_f(8, 3, 4).value == 0

    def test_complemented_mirror(self) -> None:
        plain = brute_force_f(6, 3, 3)
        mirrored = brute_force_f(6, 3, 3, complemented=True)
        assert mirrored.value == plain.value
        assert mirrored.complemented

    def test_budget_exhausted(self) -> None:
        result = brute_force_f(7, 3, 3, SearchBudget(max_nodes=2))
        assert result.status == "incomplete"
        assert result.value is None
        exact = brute_force_f(7, 3, 3).value
        assert result.upper_bound is not None
        assert exact is not None
        assert exact <= result.upper_bound <= turan_complement_count(7, 3, 3)

    def test_pool_matches_serial(self) -> None:
        with WorkerPool(threads=2) as pool:
            parallel = brute_force_f(6, 3, 3, pool=pool)
        assert parallel == brute_force_f(6, 3, 3)


class TestRamsey:
    def test_pentagon(self) -> None:
        result = ramsey_check(3, 3, 5)
        assert result.exists
        assert result.witness is not None
        assert is_isomorphic(parse_graph(result.witness), SmallGraph.cycle(5))

    def test_six_vertices(self) -> None:
        result = ramsey_check(3, 3, 6)
        assert result.status == "complete"
        assert result.exists is False
        assert result.witness is None

    def test_eight_vertices(self) -> None:
        result = ramsey_check(3, 4, 8)
        assert result.exists
        witness = parse_graph(result.witness)
        assert count_cliques(witness, 3) == 0
        assert independence_number(witness) <= 3

    def test_agrees_with_f(self) -> None:
        for n in (4, 5, 6):
            positive = brute_force_f(n, 3, 3).value > 0
            assert positive == (not ramsey_check(3, 3, n).exists)

    def test_incomplete(self) -> None:
        result = ramsey_check(3, 3, 6, SearchBudget(max_nodes=1))
        assert result.status == "incomplete"
        assert result.exists is None


class TestIdentityAudit:
    def test_goodman_exhaustive(self) -> None:
        report = identity_audit(goodman_certificate(), trials=100, seed=0)
        assert report.passed
        assert report.max_discrepancy == 0
        assert report.graphs_checked == len(admissible_family(3, 3)) + len(
            admissible_family(4, 3)
        )

    def test_empty_skeleton(self) -> None:
        report = identity_audit(remove_type(goodman_certificate(), 0), 10, seed=0)
        assert report.passed

    def test_corrupted_coefficients(self) -> None:
        def shifted(
            tau: TypeSpec, flags: Sequence[FlagSpec], host: SmallGraph
        ) -> list[list[int]]:
            table = pair_coefficients(tau, flags, host)
            table[0][0] += 1
            return table

        report = identity_audit(
            goodman_certificate(), 100, seed=0, coefficients=shifted
        )
        assert not report.passed
        assert report.counterexample is not None
        assert report.max_discrepancy > 0

    def test_order_five(self) -> None:
        cert = _skeleton(5, ["1:", "3:1213"])
        report = identity_audit(cert, trials=200, seed=7)
        assert report.passed
        assert report.graphs_checked == len(admissible_family(5, 3)) + len(
            admissible_family(6, 3)
        )

    def test_seed_is_recorded(self) -> None:
        first = identity_audit(goodman_certificate(), 5, seed=3)
        second = identity_audit(goodman_certificate(), 5, seed=3)
        assert first.seed == second.seed
        assert first == second

    def test_sampled_hosts_are_distinct_classes(self) -> None:
        for seed in range(5):
            hosts = _hosts(5, Admissibility(3), trials=6, seed=seed)
            assert len(hosts) == 6
            assert len({canonical_key(h) for h in hosts}) == 6

    def test_sampled_audit_counts(self) -> None:
        report = identity_audit(_skeleton(5, ["1:"]), trials=4, seed=1)
        assert report.passed
        assert report.graphs_checked == 8
        assert first.trials == 5
