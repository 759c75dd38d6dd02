"""Tests for legal sets, gradients, strictness and the weight optimizer."""

from fractions import Fraction

import numpy as np
import pytest

from flagforge.constructions import (
    FloatOptimum,
    OptimizerConfig,
    check_strict,
    clebsch_graph,
    clebsch_vertices,
    gradient,
    legal_sets,
    optimize_weights,
)
from flagforge.errors import DomainError
from flagforge.graphs import SmallGraph, count_independent_sets
from flagforge.parallel import WorkerPool

C5 = SmallGraph.cycle(5)
CLEBSCH_COMPLEMENT = clebsch_graph().complement()
# V(L) minus these four words is the legal set checked for k = 6, 7
REMOVED = ("00000", "00011", "00101", "00110")


def _mask(vertices: tuple[int, ...]) -> int:
    return sum(1 << v for v in vertices)


class TestLegalSets:
    def test_c5(self) -> None:
        reports = legal_sets(C5, 3)
        assert len(reports) == 11
        assert all(r.legal for r in reports)
        assert sum(r.is_closed_neighborhood for r in reports) == 5

    def test_c5_all_subsets(self) -> None:
        reports = legal_sets(C5, 3, include_illegal=True)
        assert len(reports) == 32
        assert sum(r.legal for r in reports) == 11
        legal = {r.vertices for r in legal_sets(C5, 3)}
        assert legal == {r.vertices for r in reports if r.legal}

    def test_edgeless_triple(self) -> None:
        reports = legal_sets(SmallGraph.empty(3), 4, include_illegal=True)
        illegal = [r.vertices for r in reports if not r.legal]
        assert illegal == [()]
        assert len(legal_sets(SmallGraph.empty(3), 4)) == 7

    def test_clebsch_complement(self) -> None:
        reports = legal_sets(CLEBSCH_COMPLEMENT, 3)
        independent = sum(
            count_independent_sets(clebsch_graph(), size) for size in range(6)
        )
        assert len(reports) == independent
        graph = clebsch_graph()
        for report in reports:
            rest = [v for v in range(16) if v not in report.vertices]
            induced = graph.induced(rest)
            assert induced.edge_count == 0

    def test_gradients_attached(self) -> None:
        reports = legal_sets(C5, 3, k=4)
        assert all(r.gradient is not None for r in reports)
        assert legal_sets(C5, 3)[0].gradient is None

    def test_pool_matches_serial(self) -> None:
        serial = legal_sets(C5, 3, k=4)
        with WorkerPool(threads=2) as pool:
            parallel = legal_sets(C5, 3, k=4, pool=pool)
        assert [(r.vertices, r.gradient) for r in serial] == [
            (r.vertices, r.gradient) for r in parallel
        ]

    def test_rejects_small_l(self) -> None:
        with pytest.raises(DomainError):
            legal_sets(C5, 1)


class TestGradient:
    def test_clebsch_values(self) -> None:
        words = clebsch_vertices()
        legal = [i for i, w in enumerate(words) if w not in REMOVED]
        assert gradient(CLEBSCH_COMPLEMENT, legal, 6) == Fraction(1437, 2**16)
        assert gradient(CLEBSCH_COMPLEMENT, legal, 7) == Fraction(14503, 2**21)

    def test_c5_closed_neighbourhoods(self) -> None:
        for i in range(5):
            hood = [(i - 1) % 5, i, (i + 1) % 5]
            assert gradient(C5, hood, 4) == Fraction(3, 25)
            assert gradient(C5, hood, 5) == Fraction(31, 625)

    def test_whole_c5(self) -> None:
        assert gradient(C5, range(5), 4) == Fraction(7, 25)

    def test_k_one(self) -> None:
        assert gradient(C5, [], 1) == 1

    def test_weighted(self) -> None:
        weights = [Fraction(1, 2), Fraction(1, 2), 0, 0, 0]
        assert gradient(C5, [0, 1], 3, weights) == 1

    def test_outside_vertex(self) -> None:
        with pytest.raises(DomainError):
            gradient(C5, [7], 3)


class TestCheckStrict:
    def test_c5(self) -> None:
        strict, violators = check_strict(C5, 3, 4, Fraction(3, 25))
        assert strict
        assert violators == []

    @pytest.mark.parametrize(
        ("k", "bound"), [(6, Fraction(19211, 2**20)), (7, Fraction(98491, 2**24))]
    )
    def test_clebsch_complement(self, k: int, bound: Fraction) -> None:
        strict, _ = check_strict(CLEBSCH_COMPLEMENT, 3, k, bound)
        assert strict

    @pytest.mark.parametrize("l", [4, 5, 6, 7])
    def test_turan_complement(self, l: int) -> None:  # noqa: E741
        bound = Fraction(1, (l - 1) ** 2)
        strict, _ = check_strict(SmallGraph.empty(l - 1), l, 3, bound)
        assert strict

    def test_failure_lists_violators(self) -> None:
        strict, violators = check_strict(C5, 3, 4, Fraction(1, 5))
        assert not strict
        # the four-vertex paths sit at 22/125
        assert {_mask(r.vertices) for r in violators} == {
            0b11111 & ~(1 << i) for i in range(5)
        }
        assert all(r.gradient == Fraction(22, 125) for r in violators)


class TestOptimizer:
    def test_conjectured_construction(self) -> None:
        edges = [(v, (v + 1) % 8) for v in range(8)] + [(0, 4), (1, 5)]
        result = optimize_weights(SmallGraph.from_edges(8, edges), 4)
        target = (-11 + 14 * 2 ** (1 / 3)) / 192
        assert result.density == pytest.approx(target, abs=1e-8)
        small = 1 / (4 * (1 + 2 ** (1 / 3)))
        diameter_ends = result.weights[[0, 1, 4, 5]]
        assert diameter_ends == pytest.approx(np.full(4, small), abs=1e-3)
        assert result.weights.sum() == pytest.approx(1.0)

    def test_c5_uniform(self) -> None:
        result = optimize_weights(C5, 4)
        assert result.density == pytest.approx(0.12, abs=1e-9)
        assert result.weights == pytest.approx(np.full(5, 0.2), abs=1e-5)

    def test_single_vertex(self) -> None:
        result = optimize_weights(SmallGraph.empty(1), 3)
        assert isinstance(result, FloatOptimum)
        assert result.density == 1.0
        assert list(result.weights) == [1.0]
        assert result.exact is False

    def test_deterministic(self) -> None:
        config = OptimizerConfig(restarts=3, seed=11)
        first = optimize_weights(C5, 4, config=config)
        second = optimize_weights(C5, 4, config=config)
        assert first.density == second.density
        assert first.to_dict()["exact"] is False

    def test_bad_tolerance(self) -> None:
        with pytest.raises(DomainError):
            optimize_weights(C5, 4, tolerance=0)
