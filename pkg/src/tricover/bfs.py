"""BFS forest construction and horizontal/strut/tree edge classification.

A full BFS traversal over every component assigns each vertex a level
(shortest-path distance from its component root).  Each undirected edge
then falls into exactly one class:

* tree - an edge of the BFS forest,
* strut - a non-tree edge whose endpoints sit on adjacent levels,
* horizontal - a non-tree edge whose endpoints share a level.

The horizontal edges are the cover-edge set used by the triangle
counters: every triangle contains at least one of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .graph import Graph

__all__ = [
    "BfsLabels",
    "EdgeClass",
    "EdgeClassification",
    "InternalConsistencyError",
    "bfs_forest",
    "classify_edges",
    "diameter_proxy",
    "format_vertex_dump",
    "format_edge_dump",
]


class InternalConsistencyError(RuntimeError):
    """Labels violate a BFS invariant (adjacent levels differ by more than 1)."""


class EdgeClass(IntEnum):
    TREE = 0
    STRUT = 1
    HORIZONTAL = 2


@dataclass(frozen=True)
class BfsLabels:
    """Per-vertex output of a full BFS forest traversal.

    ``level[v]`` is the distance from v's component root, ``parent[v]`` the
    vertex that discovered v (-1 for roots), ``component[v]`` the root id of
    v's component.  ``roots`` lists the roots in traversal order and
    ``max_depth_per_component`` the matching eccentricity from each root.
    """

    level: np.ndarray
    parent: np.ndarray
    component: np.ndarray
    roots: tuple[int, ...]
    max_depth_per_component: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.level)


def _bfs_from(g: Graph, root: int, level: np.ndarray, parent: np.ndarray, component: np.ndarray) -> int:
    """Level-synchronous BFS from ``root``; returns the component's max depth.

    Discovery order matches a FIFO queue that scans each dequeued vertex's
    neighbors in ascending id: within a frontier, candidate arcs are laid
    out in queue order, and the first occurrence of an undiscovered vertex
    fixes its parent.
    """
    offsets, adj = g.row_offsets, g.neighbors
    level[root] = 0
    component[root] = root
    frontier = np.array([root], dtype=np.int64)
    depth = 0
    while True:
        counts = offsets[frontier + 1] - offsets[frontier]
        starts = offsets[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        cum = np.cumsum(counts)
        idx = np.repeat(starts - (cum - counts), counts) + np.arange(total, dtype=np.int64)
        cand_dst = adj[idx]
        cand_src = np.repeat(frontier, counts)
        fresh = level[cand_dst] < 0
        if not fresh.any():
            break
        cand_dst = cand_dst[fresh]
        cand_src = cand_src[fresh]
        # first occurrence in queue order decides parent and frontier position
        uniq, first = np.unique(cand_dst, return_index=True)
        order = np.argsort(first, kind="stable")
        nxt = uniq[order]
        parent[nxt] = cand_src[first[order]]
        depth += 1
        level[nxt] = depth
        component[nxt] = root
        frontier = nxt
    return depth


def bfs_forest(
    g: Graph,
    root_policy: str = "lowest_id",
    *,
    roots=None,
    seed: int | None = None,
) -> BfsLabels:
    """Run BFS over every component of ``g`` and label all vertices.

    root_policy:
        ``lowest_id`` - start each component at its smallest unvisited id.
        ``given_roots`` - start from ``roots`` in order (error on an invalid
            id); any components they miss fall back to lowest-id sweeps.
        ``seeded_random`` - component roots drawn from a seeded permutation,
            deterministic per ``seed``.
    """
    n = g.n
    level = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    component = np.full(n, -1, dtype=np.int64)
    root_list: list[int] = []
    depths: list[int] = []

    def visit(r: int) -> None:
        root_list.append(r)
        depths.append(_bfs_from(g, r, level, parent, component))

    if root_policy == "given_roots":
        if roots is None:
            raise ValueError("given_roots policy requires a roots list")
        for r in roots:
            r = int(r)
            if not 0 <= r < n:
                raise ValueError(f"root {r} out of range for n={n}")
            if level[r] < 0:
                visit(r)
        candidates = np.arange(n, dtype=np.int64)
    elif root_policy == "seeded_random":
        rng = np.random.default_rng(seed)
        candidates = rng.permutation(n).astype(np.int64)
    elif root_policy == "lowest_id":
        candidates = np.arange(n, dtype=np.int64)
    else:
        raise ValueError(f"unknown root policy {root_policy!r}")

    for r in candidates:
        if level[r] < 0:
            visit(int(r))
    return BfsLabels(level, parent, component, tuple(root_list), tuple(depths))


@dataclass(frozen=True)
class EdgeClassification:
    """Per-edge class tags plus the extracted cover-edge set.

    ``class_of`` is aligned with the canonical edge enumeration of
    ``Graph.edges()`` (u < v, sorted).  ``cover_edges`` holds the
    horizontal edges as an (H, 2) array with u < v, and ``k`` is the
    cover-edge ratio H / m (0.0 for an edgeless graph).
    """

    class_of: np.ndarray
    cover_edges: np.ndarray
    k: float
    tree_count: int
    strut_count: int
    horizontal_count: int

    @property
    def m(self) -> int:
        return len(self.class_of)


def classify_edges(g: Graph, labels: BfsLabels, parent: np.ndarray | None = None) -> EdgeClassification:
    """Tag every edge of ``g`` as tree/strut/horizontal under ``labels``."""
    if labels.n != g.n:
        raise ValueError("labels were computed for a different graph size")
    if parent is None:
        parent = labels.parent
    edges = g.edges()
    level = labels.level
    if len(edges) == 0:
        empty = np.empty((0, 2), dtype=np.int64)
        return EdgeClassification(np.empty(0, dtype=np.uint8), empty, 0.0, 0, 0, 0)
    eu, ev = edges[:, 0], edges[:, 1]
    dl = level[eu] - level[ev]
    if np.any(np.abs(dl) > 1):
        bad = int(np.argmax(np.abs(dl) > 1))
        raise InternalConsistencyError(
            f"edge ({eu[bad]}, {ev[bad]}) spans levels {level[eu[bad]]} and {level[ev[bad]]}"
        )
    tree = (parent[ev] == eu) | (parent[eu] == ev)
    horizontal = dl == 0
    if np.any(tree & horizontal):
        raise InternalConsistencyError("tree edge with equal endpoint levels")
    class_of = np.full(len(edges), EdgeClass.STRUT, dtype=np.uint8)
    class_of[tree] = EdgeClass.TREE
    class_of[horizontal] = EdgeClass.HORIZONTAL
    cover = edges[horizontal]
    h = len(cover)
    return EdgeClassification(
        class_of,
        cover,
        h / len(edges),
        int(np.count_nonzero(tree)),
        int(len(edges) - np.count_nonzero(tree) - h),
        h,
    )


def diameter_proxy(labels: BfsLabels) -> int:
    """Upper-bound diameter proxy: the largest BFS depth over all components."""
    return max(labels.max_depth_per_component, default=0)


def format_vertex_dump(labels: BfsLabels) -> str:
    """Debug dump: one ``id level parent`` line per vertex."""
    return "".join(
        f"{v} {labels.level[v]} {labels.parent[v]}\n" for v in range(labels.n)
    )


def format_edge_dump(g: Graph, cls: EdgeClassification) -> str:
    """Debug dump: one ``u v class`` line per edge, canonical order."""
    names = {EdgeClass.TREE: "tree", EdgeClass.STRUT: "strut", EdgeClass.HORIZONTAL: "horizontal"}
    return "".join(
        f"{u} {v} {names[EdgeClass(c)]}\n"
        for (u, v), c in zip(g.edges(), cls.class_of)
    )
