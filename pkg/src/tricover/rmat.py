"""Seeded RMAT (Graph500-style) edge-list generator.

Edge slots are sampled by recursive quadrant descent with probabilities
(a, b, c, d) over ``scale`` levels, then normalized into a simple
undirected graph (duplicates merged, self-loops dropped), so the surviving
edge count is at most ``edge_factor * 2**scale``.  Sampling is keyed to a
counter-based generator per fixed-size slot block, so generation is
bit-for-bit reproducible and could be parallelized across blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["RmatParams", "generate_rmat", "MAX_SCALE"]

MAX_SCALE = 24  # 2**24 vertices, 256M sampled slots at edge_factor 16
_BLOCK_SLOTS = 1 << 18


@dataclass(frozen=True)
class RmatParams:
    scale: int
    edge_factor: int = 16
    a: float = 0.57
    b: float = 0.19
    c: float = 0.19
    d: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError(f"scale must be >= 1, got {self.scale}")
        if self.edge_factor < 1:
            raise ValueError(f"edge_factor must be >= 1, got {self.edge_factor}")
        probs = (self.a, self.b, self.c, self.d)
        if min(probs) < 0:
            raise ValueError(f"quadrant probabilities must be non-negative: {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"quadrant probabilities must sum to 1, got {sum(probs)}")

    @property
    def n(self) -> int:
        return 1 << self.scale

    @property
    def edge_slots(self) -> int:
        return self.edge_factor << self.scale


def _sample_slot_block(params: RmatParams, block_idx: int, count: int):
    """Sample ``count`` directed edge slots from the block's own stream."""
    key = np.array([params.seed & (2**64 - 1), block_idx], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    r = rng.random((count, params.scale))
    ab = params.a + params.b
    abc = ab + params.c
    src_bits = r >= ab
    dst_bits = ((r >= params.a) & (r < ab)) | (r >= abc)
    weights = np.int64(1) << np.arange(params.scale - 1, -1, -1, dtype=np.int64)
    src = src_bits.astype(np.int64) @ weights
    dst = dst_bits.astype(np.int64) @ weights
    return src, dst


def sample_edge_slots(params: RmatParams, n_slots: int | None = None):
    """All raw directed slots as (src, dst) arrays, before normalization."""
    total = params.edge_slots if n_slots is None else n_slots
    srcs, dsts = [], []
    for block_idx in range(0, -(-total // _BLOCK_SLOTS)):
        count = min(_BLOCK_SLOTS, total - block_idx * _BLOCK_SLOTS)
        s, d = _sample_slot_block(params, block_idx, count)
        srcs.append(s)
        dsts.append(d)
    if not srcs:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(srcs), np.concatenate(dsts)


def generate_rmat(params: RmatParams) -> Graph:
    """Generate the normalized undirected graph for ``params``.

    The vertex set is the full 2**scale ids (isolated vertices included);
    identical params and seed always produce an identical graph.
    """
    if params.scale > MAX_SCALE:
        raise ValueError(
            f"scale {params.scale} exceeds the generation guard ({MAX_SCALE}); "
            "larger instances are handled analytically, not materialized"
        )
    src, dst = sample_edge_slots(params)
    return Graph.from_edges(np.column_stack([src, dst]), n=params.n)
