"""Shared generators and oracles for the test suite."""

from __future__ import annotations

import numpy as np

from tricover import Graph, count_bruteforce
from tricover.rmat import RmatParams, generate_rmat


def complete_graph(n: int) -> Graph:
    iu = np.triu_indices(n, k=1)
    return Graph.from_edges(np.column_stack(iu), n=n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n=n)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], n=leaves + 1)


def er_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, k=1)
    mask = rng.random(len(iu[0])) < p
    return Graph.from_edges(np.column_stack([iu[0][mask], iu[1][mask]]), n=n)


def small_rmat(scale: int, edge_factor: int, seed: int) -> Graph:
    return generate_rmat(RmatParams(scale=scale, edge_factor=edge_factor, seed=seed))


def oracle_graphs(count: int = 200):
    """The seeded mixed corpus (half Erdos-Renyi, half RMAT) used by the
    cross-algorithm and lemma checks; n <= 128 so brute force stays cheap."""
    graphs = []
    half = count // 2
    for i in range(half):
        n = 4 + (i * 7) % 125
        p = 0.05 + (i % 10) * 0.045
        graphs.append((f"er-{i}", er_graph(n, p, seed=1000 + i)))
    for i in range(count - half):
        scale = 3 + i % 5  # n in 8..128
        ef = 2 + i % 7
        graphs.append((f"rmat-{i}", small_rmat(scale, ef, seed=2000 + i)))
    return graphs


def triangle_set(g: Graph) -> set[tuple[int, int, int]]:
    """All triangles as sorted triples, via the brute-force oracle."""
    found: set[tuple[int, int, int]] = set()
    count_bruteforce(g, emit=lambda a, b, c: found.add((a, b, c)))
    return found
