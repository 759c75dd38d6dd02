"""Shared builders for the test suite."""

from __future__ import annotations

import random

import networkx as nx

from flagforge.graphs import SmallGraph


def random_graph(order: int, rng: random.Random, p: float = 0.5) -> SmallGraph:
    edges = [
        (u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < p
    ]
    return SmallGraph.from_edges(order, edges)


def from_networkx(graph: nx.Graph) -> SmallGraph:
    index = {node: i for i, node in enumerate(graph.nodes)}
    return SmallGraph.from_edges(
        len(index), [(index[u], index[v]) for u, v in graph.edges]
    )


def to_networkx(graph: SmallGraph) -> nx.Graph:
    result = nx.Graph()
    result.add_nodes_from(range(graph.order))
    result.add_edges_from(graph.edges())
    return result
