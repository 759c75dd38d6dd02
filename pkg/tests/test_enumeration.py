"""Tests for admissible graph, type and flag enumeration."""

import pytest

from flagforge.errors import DomainError
from flagforge.graphs import (
    Admissibility,
    SmallGraph,
    TypeSpec,
    admissible_family,
    admissible_graphs,
    canonical_key,
    enumerate_flags,
    enumerate_types,
    flag_key,
    independence_number,
    parse_graph,
)
from flagforge.graphs import enumeration
from flagforge.parallel import WorkerPool

COMPLEMENTED = Admissibility(3, complemented=True)


class TestAdmissibleGraphs:
    @pytest.mark.parametrize(
        ("order", "count"), [(2, 2), (3, 3), (5, 14), (6, 38), (7, 107), (8, 410)]
    )
    def test_counts_alpha_below_three(self, order: int, count: int) -> None:
        assert len(admissible_graphs(order, 3)) == count

    def test_complemented_counts_match(self) -> None:
        """Triangle-free classes are the complements of the alpha < 3 classes."""
        for order in (5, 6, 7):
            plain = admissible_family(order, 3)
            flipped = {canonical_key(g.complement()) for g in plain}
            assert flipped == set(admissible_graphs(order, COMPLEMENTED))

    def test_every_class_admissible(self) -> None:
        for g in admissible_family(6, 3):
            assert independence_number(g) < 3

    def test_sorted_and_isomorph_free(self) -> None:
        keys = admissible_graphs(7, 3)
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)
        assert [canonical_key(parse_graph(k)) for k in keys] == keys

    def test_monotone_in_l(self) -> None:
        counts = [len(admissible_graphs(6, l)) for l in range(2, 8)]  # noqa: E741
        assert counts == sorted(counts)
        assert counts[0] == 1
        assert counts[-1] == 156

    def test_extra_forbidden(self) -> None:
        rule = Admissibility(3, extra_forbidden=("3:12",))
        keys = admissible_graphs(4, rule)
        assert len(admissible_graphs(4, 3)) == 7
        # complete multipartite with parts of size at most two: K4, K4 - e, C4
        assert len(keys) == 3
        assert canonical_key(SmallGraph.complete(4)) in keys
        assert canonical_key(SmallGraph.cycle(4)) in keys

    def test_order_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            admissible_graphs(11, 3)

    def test_pool_gives_same_result(self) -> None:
        serial = admissible_graphs(6, 4)
        enumeration._LEVELS.clear()
        with WorkerPool(2) as pool:
            parallel = admissible_graphs(6, Admissibility(4), pool)
        assert parallel == serial


class TestEnumerateTypes:
    def test_single_vertex_type(self) -> None:
        types = enumerate_types(3, 3)
        assert [t.key for t in types] == ["1:"]

    def test_even_order_parity(self) -> None:
        assert {t.order for t in enumerate_types(6, 3)} == {0, 2, 4}

    def test_odd_order(self) -> None:
        types = enumerate_types(5, 3)
        assert {t.order for t in types} == {1, 3}
        assert sorted(t.key for t in types if t.order == 3) == [
            "3:12",
            "3:1213",
            "3:121323",
        ]


class TestEnumerateFlags:
    def test_tau6(self) -> None:
        tau = TypeSpec.parse("4:121324")
        assert len(enumerate_flags(tau, 5, 3)) == 8

    def test_tau11_complemented(self) -> None:
        tau = TypeSpec.parse("5:121324")
        assert len(enumerate_flags(tau, 6, COMPLEMENTED, ambient_order=7)) == 16

    def test_tau37_complemented(self) -> None:
        tau = TypeSpec.parse("6:1213243545")
        assert len(enumerate_flags(tau, 7, COMPLEMENTED)) == 22

    def test_single_vertex(self) -> None:
        flags = enumerate_flags(TypeSpec.parse("1:"), 2, 3)
        assert [f.key for f in flags] == ["2:(1)", "2:12(1)"]

    def test_parity_violation(self) -> None:
        with pytest.raises(DomainError):
            enumerate_flags(TypeSpec.parse("4:121324"), 5, 3, ambient_order=5)

    def test_inadmissible_type(self) -> None:
        with pytest.raises(DomainError):
            enumerate_flags(TypeSpec(SmallGraph.empty(3)), 4, 3)

    def test_flags_restrict_to_type(self) -> None:
        tau = TypeSpec.parse("4:121324")
        for flag in enumerate_flags(tau, 5, 3):
            assert flag.type_graph() == tau.graph
            assert independence_number(flag.graph) < 3

    def test_extensions_partition(self) -> None:
        """Every rooted admissible graph matches exactly one listed flag."""
        tau = TypeSpec.parse("1:")
        keys = {f.key for f in enumerate_flags(tau, 3, 3)}
        for g in admissible_family(3, 3):
            for x in range(3):
                order = [x] + [u for u in range(3) if u != x]
                assert flag_key(g.induced(order), 1) in keys

    def test_isomorph_free(self) -> None:
        tau = TypeSpec.parse("2:12")
        flags = enumerate_flags(tau, 4, 3)
        keys = [flag_key(f.graph, 2) for f in flags]
        assert keys == [f.key for f in flags]
        assert len(set(keys)) == len(keys)
