"""Tests for small graph parsing, canonical keys and counting."""

import itertools
import random
from fractions import Fraction
from math import comb

import networkx as nx
import pytest

from flagforge.errors import DomainError, GraphParseError
from flagforge.graphs import (
    SmallGraph,
    admissible_family,
    automorphism_count,
    canonical_key,
    clique_number,
    complement,
    count_cliques,
    count_induced,
    density,
    flag_key,
    independence_number,
    induced_embeddings,
    is_isomorphic,
    parse_flag,
    parse_graph,
)
from tests.helpers import from_networkx, random_graph, to_networkx

C5 = SmallGraph.cycle(5)
K3 = SmallGraph.complete(3)
K4 = SmallGraph.complete(4)


class TestParseGraph:
    def test_path_notation(self) -> None:
        g = parse_graph("4:121324")
        assert g.order == 4
        assert g.edges() == [(0, 1), (0, 2), (1, 3)]
        # the path 3-1-2-4
        assert g.adjacent(2, 0) and g.adjacent(0, 1) and g.adjacent(1, 3)
        assert g.degree(2) == 1 and g.degree(3) == 1

    def test_empty_graph(self) -> None:
        g = parse_graph("2:")
        assert g.order == 2
        assert g.edge_count == 0

    def test_triangle(self) -> None:
        assert parse_graph("3:121323") == K3

    def test_order_above_nine(self) -> None:
        g = parse_graph("a:1a")
        assert g.order == 10
        assert g.adjacent(0, 9)
        assert g.to_string() == "a:1a"

    def test_round_trip_string(self) -> None:
        assert parse_graph("6:1213243545").to_string() == "6:1213243545"

    @pytest.mark.parametrize(
        ("text", "token"),
        [
            ("3:11", "11"),
            ("3:1212", "12"),
            ("3:1221", "21"),
            ("3:14", "14"),
            ("3:1!", "1!"),
            ("3:121", "1"),
            ("x:12", "x"),
        ],
    )
    def test_errors_name_token(self, text: str, token: str) -> None:
        with pytest.raises(GraphParseError) as info:
            parse_graph(text)
        assert info.value.token == token

    def test_missing_separator(self) -> None:
        with pytest.raises(GraphParseError):
            parse_graph("312")

    def test_parse_flag(self) -> None:
        graph, labeled = parse_flag("5:121324(3)")
        assert graph.order == 5
        assert labeled == 3
        assert parse_flag("3:12")[1] == 3


class TestSmallGraphInvariants:
    def test_asymmetric_rows_rejected(self) -> None:
        with pytest.raises(DomainError):
            SmallGraph(2, (0b10, 0))

    def test_loop_rejected(self) -> None:
        with pytest.raises(DomainError):
            SmallGraph(2, (0b01, 0))

    def test_order_limit(self) -> None:
        with pytest.raises(DomainError):
            SmallGraph.empty(33)

    def test_add_vertex(self) -> None:
        g = SmallGraph.complete(2).add_vertex(0b01)
        assert g.edges() == [(0, 1), (0, 2)]

    def test_relabel(self) -> None:
        g = parse_graph("3:12").relabel([2, 0, 1])
        assert g.to_string() == "3:13"
        assert canonical_key(g) == "3:12"

    def test_relabel_needs_permutation(self) -> None:
        with pytest.raises(DomainError):
            K3.relabel([0, 0, 1])


class TestCanonicalKey:
    def test_five_cycle_labelings_agree(self) -> None:
        a = parse_graph("5:1223344515")
        b = parse_graph("5:1335522441")
        assert canonical_key(a) == canonical_key(b) == "5:1213243545"

    def test_small_keys(self) -> None:
        assert canonical_key(K3) == "3:121323"
        assert canonical_key(parse_graph("3:2313")) == "3:1213"
        assert canonical_key(parse_graph("3:23")) == "3:12"

    def test_triangle_and_path_differ(self) -> None:
        assert canonical_key(K3) != canonical_key(parse_graph("3:1213"))

    def test_one_edge_relabelings(self) -> None:
        g = parse_graph("3:12")
        keys = {canonical_key(g.induced(p)) for p in itertools.permutations(range(3))}
        assert keys == {"3:12"}

    def test_exhaustive_order_five(self) -> None:
        pairs = list(itertools.combinations(range(5), 2))
        classes: dict[str, SmallGraph] = {}
        for mask in range(1 << len(pairs)):
            edges = [pair for i, pair in enumerate(pairs) if (mask >> i) & 1]
            g = SmallGraph.from_edges(5, edges)
            key = canonical_key(g)
            if key in classes:
                assert nx.is_isomorphic(to_networkx(g), to_networkx(classes[key]))
            else:
                classes[key] = g
        assert len(classes) == 34
        reps = list(classes.values())
        for a, b in itertools.combinations(reps, 2):
            assert not nx.is_isomorphic(to_networkx(a), to_networkx(b))

    def test_class_counts_up_to_six(self) -> None:
        counts = [len(admissible_family(n, max(n + 1, 2))) for n in range(7)]
        assert counts == [1, 1, 2, 4, 11, 34, 156]

    def test_random_relabelings(self) -> None:
        rng = random.Random(7)
        for order in (7, 9, 12):
            g = random_graph(order, rng)
            perm = list(range(order))
            rng.shuffle(perm)
            assert canonical_key(g) == canonical_key(g.induced(perm))

    def test_petersen_relabeled(self) -> None:
        g = from_networkx(nx.petersen_graph())
        perm = list(range(10))
        random.Random(3).shuffle(perm)
        assert is_isomorphic(g, g.induced(perm))

    def test_flag_key_keeps_labels(self) -> None:
        # labeled end of a path vs labeled middle vertex
        end = flag_key(parse_graph("3:1223"), 1)
        middle = flag_key(parse_graph("3:1213"), 1)
        assert end != middle
        assert flag_key(parse_graph("3:1323"), 1) == end


class TestIndependenceNumber:
    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    def test_complete(self, n: int) -> None:
        assert independence_number(SmallGraph.complete(n)) == 1

    def test_cycle(self) -> None:
        assert independence_number(C5) == 2

    def test_empty_order(self) -> None:
        assert independence_number(SmallGraph.empty(0)) == 0

    def test_matches_networkx(self) -> None:
        rng = random.Random(11)
        for _ in range(40):
            g = random_graph(rng.randint(1, 10), rng)
            cliques = nx.find_cliques(nx.complement(to_networkx(g)))
            expected = max(len(c) for c in cliques)
            assert independence_number(g) == expected
            assert independence_number(g) == clique_number(complement(g))


class TestCountInduced:
    def test_triangles_in_k4(self) -> None:
        assert count_induced(K3, K4) == 4

    def test_edges_in_c5(self) -> None:
        assert count_induced(SmallGraph.complete(2), C5) == 5

    def test_c5_in_petersen(self) -> None:
        petersen = from_networkx(nx.petersen_graph())
        assert count_induced(C5, petersen) == 12

    def test_pattern_too_large(self) -> None:
        with pytest.raises(DomainError):
            count_induced(K4, K3)

    def test_counts_sum_to_binomial(self) -> None:
        rng = random.Random(5)
        g = random_graph(7, rng)
        total = sum(count_induced(f, g) for f in admissible_family(3, 4))
        assert total == comb(7, 3)

    def test_embeddings_over_automorphisms(self) -> None:
        rng = random.Random(19)
        for _ in range(10):
            g = random_graph(7, rng)
            for pattern in (parse_graph("3:1213"), C5, parse_graph("4:121324")):
                embeddings = sum(1 for _ in induced_embeddings(pattern, g))
                assert embeddings % automorphism_count(pattern) == 0
                assert count_induced(pattern, g) == embeddings // automorphism_count(
                    pattern
                )

    def test_clique_count_matches_subset_scan(self) -> None:
        rng = random.Random(23)
        g = random_graph(9, rng, p=0.6)
        assert count_cliques(g, 3) == count_induced(K3, g)
        assert count_cliques(g, 4) == count_induced(K4, g)


class TestDensity:
    def test_identity(self) -> None:
        assert density(K3, K3) == 1

    def test_edges_in_c5(self) -> None:
        assert density(SmallGraph.complete(2), C5) == Fraction(1, 2)

    def test_triangles_in_complement_of_c5(self) -> None:
        assert density(K3, complement(C5)) == 0


class TestComplement:
    def test_complete(self) -> None:
        assert complement(K4) == SmallGraph.empty(4)

    def test_involution(self) -> None:
        rng = random.Random(2)
        for _ in range(20):
            g = random_graph(rng.randint(0, 12), rng)
            assert complement(complement(g)) == g

    def test_self_complementary_cycle(self) -> None:
        assert is_isomorphic(complement(C5), C5)

    def test_automorphisms(self) -> None:
        assert automorphism_count(C5) == 10
        assert automorphism_count(K4) == 24
