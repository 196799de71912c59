"""Closed-form communication-volume models and curve fits.

All volumes are in bits, computed exactly (rational arithmetic, rounded up
to whole bits) so the formulas stay trustworthy at graph scales far beyond
64-bit intermediate products.  Byte conversions use binary units
throughout: KB = 2**10 bytes, MB = 2**20, ... EB = 2**60.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "BYTE_UNITS",
    "EXTRAPOLATION_DIAMETER",
    "TRIANGLE_FIT_AMPLITUDE",
    "TRIANGLE_FIT_EXPONENT",
    "ModelInputs",
    "FitResult",
    "log2_ceil",
    "cover_edge_volume_bits",
    "wedge_volume_bits",
    "reduction_ratio",
    "fit_k_exponential",
    "estimate_triangles_powerlaw",
]

BYTE_UNITS = (
    ("EB", 2**60),
    ("PB", 2**50),
    ("TB", 2**40),
    ("GB", 2**30),
    ("MB", 2**20),
    ("KB", 2**10),
    ("B", 1),
)

# Diameter stand-in for extrapolated rows: ceil(log2(16)) = 4 bits of level,
# a reasonable allowance for the shallow BFS depth of large scale-free graphs.
EXTRAPOLATION_DIAMETER = 16

# Triangle-count power law fitted to published RMAT measurements.
TRIANGLE_FIT_AMPLITUDE = 77.422
TRIANGLE_FIT_EXPONENT = 1.125


def log2_ceil(x: int) -> int:
    """Smallest b with 2**b >= x, for x >= 1 (so log2_ceil(1) == 0)."""
    if x < 1:
        raise ValueError(f"log2_ceil requires x >= 1, got {x}")
    return (int(x) - 1).bit_length()


@dataclass(frozen=True)
class ModelInputs:
    """Graph-level quantities the volume formulas consume.

    ``diameter`` is the BFS-depth proxy; only its ceil-log2 enters the
    formula, so extrapolations can pass :data:`EXTRAPOLATION_DIAMETER`.
    """

    n: int
    m: int
    diameter: int
    k: float
    p: int = 1
    wedges: int = 0

    def __post_init__(self):
        if self.n < 0 or self.m < 0 or self.diameter < 0 or self.p < 1 or self.wedges < 0:
            raise ValueError(f"negative model input: {self}")
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k must lie in [0, 1], got {self.k}")


def cover_edge_volume_bits(inputs: ModelInputs) -> int:
    """Total bits moved by the cover-edge exchange scheme.

    Evaluates m * (ceil(log2 D) + (k*p + 3) * ceil(log2 n)) +
    (p - 1) * ceil(log2 n) exactly and rounds the result up to whole bits.
    The three addends charge BFS level dissemination, shipping the k*m
    horizontal edges to the p processors, and the final count reduction.
    """
    if inputs.m == 0:
        return 0
    if inputs.diameter < 1:
        raise ValueError("diameter must be >= 1 when the graph has edges")
    log_n = log2_ceil(inputs.n)
    log_d = log2_ceil(inputs.diameter)
    total = (
        inputs.m * (log_d + (Fraction(inputs.k) * inputs.p + 3) * log_n)
        + (inputs.p - 1) * log_n
    )
    return math.ceil(total)


def wedge_volume_bits(wedges: int, n: int) -> int:
    """Bits moved by wedge-checking schemes: one 2-id query per wedge."""
    if wedges < 0:
        raise ValueError("wedge count must be non-negative")
    if wedges == 0:
        return 0
    return int(wedges) * 2 * log2_ceil(n)


def reduction_ratio(previous_bits, new_bits) -> float:
    """Communication reduction (and expected speedup): previous / new."""
    if new_bits <= 0:
        raise ValueError("new volume must be positive")
    return previous_bits / new_bits


@dataclass(frozen=True)
class FitResult:
    """Exponential decay fit k = amplitude * exp(-decay_rate * scale).

    The regression runs on (scale, ln k); ``fit_space`` records that
    ``r_squared`` is likewise computed over the log-transformed values.
    """

    amplitude: float
    decay_rate: float
    r_squared: float
    samples: tuple[tuple[float, float], ...]
    fit_space: str = "log"

    def predict(self, scale: float) -> float:
        return self.amplitude * math.exp(-self.decay_rate * scale)


def fit_k_exponential(samples) -> FitResult:
    """Least-squares exponential fit of cover-edge ratio against graph scale."""
    pts = [(float(s), float(k)) for s, k in samples]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 samples, got {len(pts)}")
    if any(k <= 0 for _, k in pts):
        raise ValueError("all k samples must be positive for the log transform")
    x = np.array([s for s, _ in pts])
    y = np.log([k for _, k in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(
        amplitude=float(np.exp(intercept)),
        decay_rate=float(-slope),
        r_squared=r2,
        samples=tuple(pts),
    )


def estimate_triangles_powerlaw(n: int) -> float:
    """Triangle-count estimate 77.422 * n**1.125 for RMAT-class graphs."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return TRIANGLE_FIT_AMPLITUDE * float(n) ** TRIANGLE_FIT_EXPONENT
