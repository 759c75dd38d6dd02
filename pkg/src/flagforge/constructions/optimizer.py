"""Floating-point search for the best part weights of an expansion.

This is the only non-exact surface of the package. Results carry
``exact = False`` and are never fed back into certificates.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from flagforge.constructions.expansions import cliques
from flagforge.errors import DomainError
from flagforge.graphs.smallgraph import SmallGraph

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


@dataclass
class OptimizerConfig:
    """Knobs for the multi-start SLSQP search."""

    restarts: int = 8
    max_iterations: int = 1000
    ftol: float = 1e-15
    seed: int = 0


@dataclass
class FloatOptimum:
    weights: FloatArray
    density: float
    converged: bool
    iterations: int = 0
    message: str = ""
    exact: bool = field(default=False, init=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "weights": [float(w) for w in self.weights],
            "density": self.density,
            "converged": self.converged,
            "iterations": self.iterations,
            "message": self.message,
            "exact": self.exact,
        }


class CliquePolynomial:
    """The K_k density of the expansion of F as a polynomial in the part weights.

    f(w) = sum over cliques T of F of c_T * w(T)^k, where c_T collects the
    inclusion-exclusion signs of every clique containing T.
    """

    def __init__(self, graph: SmallGraph, k: int) -> None:
        coefficients: dict[tuple[int, ...], int] = defaultdict(int)
        for clique in cliques(graph):
            size = len(clique)
            for r in range(1, size + 1):
                sign = -1 if (size - r) % 2 else 1
                for subset in combinations(clique, r):
                    coefficients[subset] += sign
        terms = [(t, c) for t, c in coefficients.items() if c]
        self.k = k
        self.incidence = np.zeros((len(terms), graph.order))
        for row, (subset, _) in enumerate(terms):
            self.incidence[row, list(subset)] = 1.0
        self.coefficients = np.array([c for _, c in terms], dtype=float)

    def value(self, weights: FloatArray) -> float:
        sums = self.incidence @ weights
        return float(self.coefficients @ sums**self.k)

    def gradient(self, weights: FloatArray) -> FloatArray:
        sums = self.incidence @ weights
        inner = self.coefficients * self.k * sums ** (self.k - 1)
        return np.asarray(self.incidence.T @ inner, dtype=float)


def _starts(order: int, config: OptimizerConfig) -> list[FloatArray]:
    rng = np.random.default_rng(config.seed)
    starts = [np.full(order, 1.0 / order)]
    starts.extend(rng.dirichlet(np.ones(order)) for _ in range(config.restarts))
    return starts


def optimize_weights(
    graph: SmallGraph,
    k: int,
    tolerance: float = 1e-12,
    config: OptimizerConfig | None = None,
) -> FloatOptimum:
    """Locally minimal K_k density over the weight simplex for expansions of F.

    Runs SLSQP from the uniform point and from ``config.restarts`` random
    points of the simplex, keeping the best local minimum.
    """
    if k < 1:
        msg = f"Clique size must be at least 1, got {k}"
        raise DomainError(msg)
    if tolerance <= 0:
        msg = f"Tolerance must be positive, got {tolerance}"
        raise DomainError(msg)
    if graph.order == 0:
        msg = "Cannot optimize over the empty pattern"
        raise DomainError(msg)
    config = config or OptimizerConfig()
    polynomial = CliquePolynomial(graph, k)
    if graph.order == 1:
        return FloatOptimum(np.ones(1), polynomial.value(np.ones(1)), True)

    constraint = {
        "type": "eq",
        "fun": lambda w: float(np.sum(w) - 1.0),
        "jac": lambda w: np.ones_like(w),
    }
    candidates = []
    for start in _starts(graph.order, config):
        result = minimize(
            polynomial.value,
            start,
            jac=polynomial.gradient,
            method="SLSQP",
            bounds=[(0.0, 1.0)] * graph.order,
            constraints=[constraint],
            options={"maxiter": config.max_iterations, "ftol": config.ftol},
        )
        weights = np.clip(np.asarray(result.x, dtype=float), 0.0, None)
        weights /= weights.sum()
        candidate = FloatOptimum(
            weights=weights,
            density=polynomial.value(weights),
            converged=bool(result.success),
            iterations=int(result.nit),
            message=str(result.message),
        )
        logger.debug(
            "start %s -> density %.12f (%s)",
            np.round(start, 4),
            candidate.density,
            candidate.message,
        )
        candidates.append(candidate)
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate.density < best.density - tolerance:
            best = candidate
    if not best.converged:
        logger.warning(
            "optimizer did not converge within %d iterations: %s",
            config.max_iterations,
            best.message,
        )
    return best
