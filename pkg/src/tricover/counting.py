"""Sequential triangle counters.

``count_cetc`` scans only the BFS horizontal edges and counts each triangle
exactly once through its level predicate.  ``count_edge_iterator`` and
``count_bruteforce`` are independent baselines (no BFS involved) used as
correctness oracles.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .bfs import BfsLabels, EdgeClassification
from .graph import Graph, _expand_ranges

__all__ = [
    "TriangleCountReport",
    "KERNELS",
    "intersect",
    "count_cetc",
    "count_edge_iterator",
    "count_bruteforce",
    "BRUTE_FORCE_MAX_N",
]

KERNELS = ("merge", "binary_search", "hash")
BRUTE_FORCE_MAX_N = 512

EmitFn = Callable[[int, int, int], None]


@dataclass(frozen=True)
class TriangleCountReport:
    """Result of one counting run, with the work counters the algorithms expose."""

    total: int
    algorithm: str
    horizontal_edges_scanned: int
    intersections_performed: int
    elapsed: float


def _check_sorted(a) -> None:
    if __debug__ and len(a) > 1:
        arr = np.asarray(a)
        assert np.all(arr[1:] > arr[:-1]), "intersect inputs must be strictly increasing"


def intersect(a, b, kernel: str = "merge") -> np.ndarray:
    """Intersection of two sorted, duplicate-free id lists; result sorted.

    merge: two-pointer scan of both lists.
    binary_search: each element of the shorter list searched in the longer.
    hash: table built on the shorter list, probed with the longer.
    """
    _check_sorted(a)
    _check_sorted(b)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if kernel == "merge":
        out = []
        i = j = 0
        la, lb = len(a), len(b)
        while i < la and j < lb:
            x, y = a[i], b[j]
            if x == y:
                out.append(int(x))
                i += 1
                j += 1
            elif x < y:
                i += 1
            else:
                j += 1
        return np.array(out, dtype=np.int64)
    if kernel == "binary_search":
        short, long_ = (a, b) if len(a) <= len(b) else (b, a)
        if len(long_) == 0:
            return np.empty(0, dtype=np.int64)
        pos = np.searchsorted(long_, short)
        pos_c = np.minimum(pos, len(long_) - 1)
        return short[(pos < len(long_)) & (long_[pos_c] == short)]
    if kernel == "hash":
        short, long_ = (a, b) if len(a) <= len(b) else (b, a)
        table = set(short.tolist())
        return np.array([int(x) for x in long_ if int(x) in table], dtype=np.int64)
    raise ValueError(f"unknown intersect kernel {kernel!r}; expected one of {KERNELS}")


def _candidate_batches(g: Graph, eu: np.ndarray, ev: np.ndarray, budget: int = 1 << 22):
    """Yield (edge_idx, a_rep, b_rep, w) candidate batches for an edge set.

    For each edge the candidate apexes w are the neighbors of its
    lower-degree endpoint (a); membership of (b, w) still has to be probed.
    Batches are sized so the expanded arrays stay near ``budget`` elements.
    """
    deg = g.degrees()
    swap = deg[ev] < deg[eu]
    a = np.where(swap, ev, eu)
    b = np.where(swap, eu, ev)
    lengths = deg[a]
    cum = np.cumsum(lengths)
    start = 0
    n_edges = len(eu)
    while start < n_edges:
        base = cum[start - 1] if start else 0
        stop = int(np.searchsorted(cum, base + budget)) + 1
        stop = min(max(stop, start + 1), n_edges)
        sl = slice(start, stop)
        ls = lengths[sl]
        w = g.neighbors[_expand_ranges(g.row_offsets[a[sl]], ls)]
        edge_idx = np.repeat(np.arange(start, stop, dtype=np.int64), ls)
        yield edge_idx, np.repeat(a[sl], ls), np.repeat(b[sl], ls), w
        start = stop


def _emit_triples(emit: EmitFn, us, vs, ws) -> None:
    for u, v, w in zip(us.tolist(), vs.tolist(), ws.tolist()):
        emit(u, v, w)


def _count_cover_vectorized(g: Graph, labels: BfsLabels, eu, ev, emit: EmitFn | None) -> int:
    level = labels.level
    total = 0
    for edge_idx, _, b, w in _candidate_batches(g, eu, ev):
        found = g.contains_pairs(b, w)
        u = eu[edge_idx]
        v = ev[edge_idx]
        fired = found & ((level[w] != level[u]) | (w > v))
        total += int(np.count_nonzero(fired))
        if emit is not None:
            _emit_triples(emit, u[fired], v[fired], w[fired])
    return total


def _count_cover_per_edge(g: Graph, labels: BfsLabels, eu, ev, kernel: str, emit: EmitFn | None) -> int:
    level = labels.level
    total = 0
    for u, v in zip(eu.tolist(), ev.tolist()):
        common = intersect(g.neighbors_of(u), g.neighbors_of(v), kernel)
        if len(common) == 0:
            continue
        fired = common[(level[common] != level[u]) | (common > v)]
        total += len(fired)
        if emit is not None:
            for w in fired.tolist():
                emit(u, v, w)
    return total


def count_cetc(
    g: Graph,
    cls: EdgeClassification,
    labels: BfsLabels,
    kernel: str = "binary_search",
    emit: EmitFn | None = None,
) -> TriangleCountReport:
    """Count triangles from the cover-edge set.

    For each horizontal edge {u, v} (u < v) and each common neighbor w, the
    triangle is counted iff L(u) != L(w), or L(u) == L(w) and v < w - so a
    triangle with a single horizontal edge is counted there, and an
    all-horizontal triangle only at its lowest-id edge.  ``emit``, when
    given, receives each counted (u, v, w).
    """
    if labels.n != g.n or cls.m != g.m:
        raise ValueError("classification/labels do not match the graph")
    if kernel not in KERNELS:
        raise ValueError(f"unknown intersect kernel {kernel!r}; expected one of {KERNELS}")
    t0 = time.perf_counter()
    cover = cls.cover_edges
    eu, ev = cover[:, 0], cover[:, 1]
    if len(cover) == 0:
        total = 0
    elif kernel == "binary_search":
        total = _count_cover_vectorized(g, labels, eu, ev, emit)
    else:
        total = _count_cover_per_edge(g, labels, eu, ev, kernel, emit)
    return TriangleCountReport(
        total=total,
        algorithm="cetc",
        horizontal_edges_scanned=len(cover),
        intersections_performed=len(cover),
        elapsed=time.perf_counter() - t0,
    )


def count_edge_iterator(g: Graph, emit: EmitFn | None = None) -> TriangleCountReport:
    """Direction-oriented edge iterator, independent of any BFS.

    For each edge {u, v} with u < v, counts the common neighbors w > v, so
    every triangle is counted exactly once at its lowest edge.
    """
    t0 = time.perf_counter()
    edges = g.edges()
    total = 0
    if len(edges):
        eu, ev = edges[:, 0], edges[:, 1]
        for edge_idx, _, b, w in _candidate_batches(g, eu, ev):
            found = g.contains_pairs(b, w)
            fired = found & (w > ev[edge_idx])
            total += int(np.count_nonzero(fired))
            if emit is not None:
                _emit_triples(emit, eu[edge_idx][fired], ev[edge_idx][fired], w[fired])
    return TriangleCountReport(
        total=total,
        algorithm="edge-iter",
        horizontal_edges_scanned=0,
        intersections_performed=len(edges),
        elapsed=time.perf_counter() - t0,
    )


def count_bruteforce(g: Graph, emit: EmitFn | None = None) -> TriangleCountReport:
    """Oracle counter: checks every vertex triple a < b < c for its three edges.

    Dense-matrix membership with an early exit on the first missing edge;
    refuses graphs beyond ``BRUTE_FORCE_MAX_N`` vertices.
    """
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute force is capped at n <= {BRUTE_FORCE_MAX_N} "
            f"(got n={g.n}); use count_edge_iterator as the oracle instead"
        )
    t0 = time.perf_counter()
    n = g.n
    dense = np.zeros((n, n), dtype=bool)
    if g.m:
        src = np.repeat(np.arange(n, dtype=np.int64), g.degrees())
        dense[src, g.neighbors] = True
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            if not dense[a, b]:
                continue
            closing = dense[a, b + 1 :] & dense[b, b + 1 :]
            total += int(np.count_nonzero(closing))
            if emit is not None:
                for c in np.nonzero(closing)[0] + b + 1:
                    emit(a, b, int(c))
    return TriangleCountReport(
        total=total,
        algorithm="brute",
        horizontal_edges_scanned=0,
        intersections_performed=0,
        elapsed=time.perf_counter() - t0,
    )
