"""Undirected simple graph in CSR form, plus edge-list ingestion and degree stats.

The adjacency layout is the usual compressed-sparse-row pair:
``row_offsets`` (length ``n + 1``) and ``neighbors`` (length ``2 * m``,
sorted ascending within each vertex's range).  Every constructed graph is
normalized: no self-loops, no duplicate edges, symmetric adjacency, dense
vertex ids ``0 .. n-1``.
"""

from __future__ import annotations

import io
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EdgeListParseError",
    "Graph",
    "DegreeStats",
    "load_edge_list",
    "load_edge_list_file",
    "degree_stats",
]


class EdgeListParseError(ValueError):
    """Raised on a malformed edge-list line; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _expand_ranges(starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Concatenate ``[arange(s, s+l) for s, l in zip(starts, lengths)]`` without a loop."""
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    cum = np.cumsum(lengths)
    offsets = np.repeat(starts - (cum - lengths), lengths)
    return offsets + np.arange(total, dtype=np.int64)


class Graph:
    """Immutable undirected simple graph with sorted CSR adjacency.

    Attributes
    ----------
    n : int
        Vertex count; vertex ids are ``0 .. n-1``.
    m : int
        Undirected edge count.  Each edge {u, v} is stored as the two
        arcs (u, v) and (v, u).
    row_offsets : ndarray of int64, shape (n + 1,)
        CSR pointers; the neighbors of ``v`` occupy
        ``neighbors[row_offsets[v]:row_offsets[v + 1]]``.
    neighbors : ndarray of int64, shape (2 * m,)
        Concatenated adjacency lists, strictly increasing per vertex.
    original_ids : ndarray of int64 or None
        Sidecar map from compact id back to the external id it replaced
        (None when the graph was built directly from dense ids).
    dropped_self_loops, dropped_duplicates : int
        Normalization counters from construction.
    """

    __slots__ = (
        "n",
        "m",
        "row_offsets",
        "neighbors",
        "original_ids",
        "dropped_self_loops",
        "dropped_duplicates",
        "_arc_keys",
    )

    def __init__(
        self,
        row_offsets: np.ndarray,
        neighbors: np.ndarray,
        original_ids: np.ndarray | None = None,
        dropped_self_loops: int = 0,
        dropped_duplicates: int = 0,
    ):
        self.row_offsets = np.ascontiguousarray(row_offsets, dtype=np.int64)
        self.neighbors = np.ascontiguousarray(neighbors, dtype=np.int64)
        self.n = len(self.row_offsets) - 1
        self.m = len(self.neighbors) // 2
        self.original_ids = original_ids
        self.dropped_self_loops = dropped_self_loops
        self.dropped_duplicates = dropped_duplicates
        # Sorted arc keys u*n + v, used for O(log m) edge membership.
        self._arc_keys = None
        self._validate()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, edges, n: int | None = None, **meta) -> "Graph":
        """Build a normalized graph from an iterable/array of (u, v) pairs.

        Self-loops are dropped and duplicate edges (in either orientation)
        merged.  Vertex ids must already be dense ``0 .. n-1``; pass ``n``
        to include trailing isolated vertices.
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be an array of (u, v) pairs")
        if arr.size and arr.min() < 0:
            raise ValueError("negative vertex id")
        max_id = int(arr.max()) if arr.size else -1
        if n is None:
            n = max_id + 1
        elif max_id >= n:
            raise ValueError(f"vertex id {max_id} out of range for n={n}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        loops = int(np.count_nonzero(lo == hi))
        keep = lo != hi
        lo, hi = lo[keep], hi[keep]
        keys = lo * np.int64(n) + hi
        unique_keys = np.unique(keys)
        dups = len(keys) - len(unique_keys)
        lo = unique_keys // n
        hi = unique_keys % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        row_offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=row_offsets[1:])
        return cls(
            row_offsets,
            dst,
            dropped_self_loops=meta.pop("dropped_self_loops", 0) + loops,
            dropped_duplicates=meta.pop("dropped_duplicates", 0) + dups,
            **meta,
        )

    def _validate(self) -> None:
        n, m = self.n, self.m
        if n < 0 or self.row_offsets[0] != 0:
            raise ValueError("malformed row_offsets")
        if self.row_offsets[-1] != 2 * m:
            raise ValueError("row_offsets[n] must equal 2m")
        if np.any(np.diff(self.row_offsets) < 0):
            raise ValueError("row_offsets must be non-decreasing")
        if m == 0:
            return
        if self.neighbors.min() < 0 or self.neighbors.max() >= n:
            raise ValueError("neighbor id out of range")
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(self.row_offsets))
        if np.any(src == self.neighbors):
            raise ValueError("self-loop in adjacency")
        keys = src * np.int64(n) + self.neighbors
        if np.any(np.diff(keys) <= 0):
            # keys are globally strictly increasing iff each range is sorted
            # and duplicate-free (src is non-decreasing by construction)
            raise ValueError("adjacency ranges must be strictly increasing")
        swapped = self.neighbors * np.int64(n) + src
        if not np.array_equal(np.sort(swapped), keys):
            raise ValueError("adjacency is not symmetric")
        self._arc_keys = keys

    # -- queries -----------------------------------------------------------

    def degrees(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    def neighbors_of(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        return self.neighbors[self.row_offsets[v] : self.row_offsets[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        """Edge membership via binary search in the sorted adjacency of ``u``."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex pair ({u}, {v}) out of range")
        row = self.neighbors_of(u)
        i = int(np.searchsorted(row, v))
        return i < len(row) and row[i] == v

    def arc_keys(self) -> np.ndarray:
        """Sorted int64 keys ``u * n + v`` for every arc; backs bulk membership tests."""
        if self._arc_keys is None:
            src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.row_offsets))
            self._arc_keys = src * np.int64(self.n) + self.neighbors
        return self._arc_keys

    def contains_pairs(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Vectorized ``has_edge`` over parallel arrays of endpoints."""
        keys = self.arc_keys()
        q = us * np.int64(self.n) + vs
        pos = np.searchsorted(keys, q)
        pos_clipped = np.minimum(pos, len(keys) - 1) if len(keys) else pos
        if not len(keys):
            return np.zeros(len(q), dtype=bool)
        return (pos < len(keys)) & (keys[pos_clipped] == q)

    def edges(self) -> np.ndarray:
        """All undirected edges as an (m, 2) array with u < v, sorted by (u, v)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.row_offsets))
        mask = src < self.neighbors
        return np.column_stack([src[mask], self.neighbors[mask]])

    # -- serialization -----------------------------------------------------

    def write_canonical(self, stream: io.TextIOBase) -> None:
        """Write the canonical edge list: one ``u v`` per line, u < v, ascending."""
        for u, v in self.edges():
            stream.write(f"{u} {v}\n")

    def canonical_text(self) -> str:
        buf = io.StringIO()
        self.write_canonical(buf)
        return buf.getvalue()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.neighbors, other.neighbors)
        )

    def __hash__(self):  # mutable ndarray payload; identity hash is fine
        return id(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(
    lines: Iterable[str],
    *,
    skip_comments: bool = True,
    one_indexed: bool = False,
) -> Graph:
    """Parse a SNAP-style whitespace edge list into a normalized :class:`Graph`.

    Lines starting with ``#`` are comments (an error if ``skip_comments`` is
    off); each data line holds exactly two integer tokens.  Self-loops are
    dropped, duplicates merged, and sparse external ids compacted to
    ``0 .. n-1`` (in ascending external-id order; the external ids are kept
    in ``Graph.original_ids``).  Empty input yields the empty graph.
    """
    shift = 1 if one_indexed else 0
    src: list[int] = []
    dst: list[int] = []
    lineno = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if skip_comments:
                continue
            raise EdgeListParseError(lineno, "comment line not allowed (skip_comments=False)")
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, f"expected 2 tokens, got {len(tokens)}")
        try:
            u = int(tokens[0]) - shift
            v = int(tokens[1]) - shift
        except ValueError:
            raise EdgeListParseError(lineno, f"non-integer token in {tokens!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, f"negative vertex id ({u}, {v})")
        src.append(u)
        dst.append(v)
    if not src:
        return Graph(np.zeros(1, dtype=np.int64), np.empty(0, dtype=np.int64))
    raw = np.array([src, dst], dtype=np.int64).T
    external = np.unique(raw)  # ascending external ids -> dense 0..n-1
    compact = np.searchsorted(external, raw)
    return Graph.from_edges(compact, n=len(external), original_ids=external)


def load_edge_list_file(path, **kwargs) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh, **kwargs)


@dataclass(frozen=True)
class DegreeStats:
    """Per-vertex degrees plus the two wedge (2-path) counters.

    ``wedge_total`` counts every unordered 2-path: sum over v of C(d(v), 2).
    ``wedge_oriented`` counts 2-paths in the degree-ordered orientation
    (each edge directed from its lower-degree endpoint, ties broken by
    vertex id): sum over v of C(d+(v), 2).  Wedge sums are exact Python
    integers, so they cannot silently wrap on skewed degree sequences.
    """

    degrees: np.ndarray
    d_max: int
    wedge_total: int
    wedge_oriented: int

    def wedges(self, definition: str) -> int:
        if definition == "total":
            return self.wedge_total
        if definition == "oriented":
            return self.wedge_oriented
        raise ValueError(f"unknown wedge definition {definition!r}")


def _exact_choose2_sum(counts: np.ndarray) -> int:
    terms = counts.astype(np.int64)
    terms = terms * (terms - 1) // 2
    if len(terms) == 0:
        return 0
    # int64 is fine unless the sum could exceed 2**63; fall back to bigints then.
    if int(terms.max()) * len(terms) < 2**63:
        return int(terms.sum())
    return sum(int(t) for t in terms)


def degree_stats(g: Graph) -> DegreeStats:
    """Exact degree and wedge statistics for ``g``."""
    deg = g.degrees()
    d_max = int(deg.max()) if g.n else 0
    wedge_total = _exact_choose2_sum(deg)
    if g.m:
        src = np.repeat(np.arange(g.n, dtype=np.int64), deg)
        dst = g.neighbors
        forward = (deg[src] < deg[dst]) | ((deg[src] == deg[dst]) & (src < dst))
        out_deg = np.bincount(src[forward], minlength=g.n)
    else:
        out_deg = np.zeros(g.n, dtype=np.int64)
    wedge_oriented = _exact_choose2_sum(out_deg)
    return DegreeStats(deg, d_max, wedge_total, wedge_oriented)
