"""Assemble and render communication-cost report rows.

A row combines measured quantities (triangles, wedges, cover-edge ratio)
with the two volume models: the wedge-checking baseline ("Previous") and
the cover-edge scheme ("New").  Extrapolated rows take their graph
statistics from fits or supplied constants and carry per-cell flags so the
rendering can mark estimates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .bfs import bfs_forest, classify_edges, diameter_proxy
from .counting import count_cetc
from .graph import Graph, degree_stats
from .model import (
    BYTE_UNITS,
    EXTRAPOLATION_DIAMETER,
    ModelInputs,
    cover_edge_volume_bits,
    reduction_ratio,
    wedge_volume_bits,
)

__all__ = [
    "DEFAULT_WEDGE_DEFINITION",
    "ReportRow",
    "build_row",
    "build_extrapolated_row",
    "render",
    "parse_csv",
    "format_bytes",
    "format_ratio",
]

# Degree-ordered out-wedges are what wedge-checking schemes actually ship
# (orienting each edge toward its higher-degree endpoint keeps hub centers
# from exploding the count); "total" counts every unordered 2-path.
DEFAULT_WEDGE_DEFINITION = "oriented"

_EXTRAPOLATED_CELLS = ("k", "new", "reduction", "triangles", "wedges")

TABLE_COLUMNS = (
    "Graph",
    "n",
    "m",
    "Triangles",
    "Wedges",
    "k",
    "p",
    "Previous",
    "New",
    "Reduction",
)


def _round_sigfigs(value: float, figures: int = 3) -> float:
    if value == 0:
        return 0.0
    return round(value, figures - 1 - math.floor(math.log10(abs(value))))


def _format_sigfigs(value: float, figures: int = 3) -> str:
    """3-significant-figure formatting: 4.31, 56.0, 7.10; integers from 100 up."""
    if value >= 100:
        return str(round(value))
    value = _round_sigfigs(value, figures)
    decimals = max(0, figures - 1 - math.floor(math.log10(abs(value)))) if value else figures - 1
    return f"{value:.{decimals}f}"


def format_bytes(bits) -> str:
    """Render a bit count as bytes with a binary-prefix unit, 3 significant figures."""
    if bits < 0:
        raise ValueError("bit count must be non-negative")
    if bits == 0:
        return "0B"
    nbytes = bits / 8
    for unit, size in BYTE_UNITS:
        if nbytes >= size:
            return _format_sigfigs(nbytes / size) + unit
    return _format_sigfigs(nbytes) + "B"


def format_ratio(x: float) -> str:
    return _format_sigfigs(x)


def _format_count(value, estimated: bool) -> str:
    if estimated:
        return f"{float(value):.3g}".upper()
    return str(int(value))


@dataclass(frozen=True)
class ReportRow:
    """One line of the communication-cost table; volumes kept in exact bits."""

    name: str
    n: int
    m: int
    triangles: float
    wedges: float
    k: float
    p: int
    previous_bits: int
    new_bits: int
    reduction: float
    extrapolated: tuple[str, ...] = ()

    def __post_init__(self):
        expected = reduction_ratio(self.previous_bits, self.new_bits)
        if not math.isclose(self.reduction, expected, rel_tol=1e-9):
            raise ValueError(f"reduction {self.reduction} inconsistent with volumes ({expected})")
        object.__setattr__(self, "extrapolated", tuple(sorted(self.extrapolated)))

    @property
    def previous_bytes(self) -> float:
        return self.previous_bits / 8

    @property
    def new_bytes(self) -> float:
        return self.new_bits / 8


def build_row(
    name: str,
    g: Graph,
    p: int,
    *,
    wedge_definition: str = DEFAULT_WEDGE_DEFINITION,
    root_policy: str = "lowest_id",
    seed: int | None = None,
) -> ReportRow:
    """Measure a loaded graph and evaluate both volume models for it."""
    labels = bfs_forest(g, root_policy, seed=seed)
    cls = classify_edges(g, labels)
    stats = degree_stats(g)
    wedges = stats.wedges(wedge_definition)
    triangles = count_cetc(g, cls, labels).total
    inputs = ModelInputs(
        n=g.n, m=g.m, diameter=max(diameter_proxy(labels), 1), k=cls.k, p=p, wedges=wedges
    )
    new_bits = cover_edge_volume_bits(inputs)
    previous_bits = wedge_volume_bits(wedges, g.n)
    return ReportRow(
        name=name,
        n=g.n,
        m=g.m,
        triangles=triangles,
        wedges=wedges,
        k=cls.k,
        p=p,
        previous_bits=previous_bits,
        new_bits=new_bits,
        reduction=reduction_ratio(previous_bits, new_bits),
    )


def build_extrapolated_row(
    name: str,
    *,
    n: int | None = None,
    m: int | None = None,
    k: float | None = None,
    wedges: float | None = None,
    triangles: float | None = None,
    p: int | None = None,
    diameter: int = EXTRAPOLATION_DIAMETER,
) -> ReportRow:
    """Build a row for a graph too large to materialize, from supplied estimates."""
    missing = [
        field
        for field, value in (
            ("n", n), ("m", m), ("k", k), ("wedges", wedges), ("triangles", triangles), ("p", p),
        )
        if value is None
    ]
    if missing:
        raise ValueError(f"missing extrapolation inputs: {', '.join(missing)}")
    inputs = ModelInputs(n=n, m=m, diameter=diameter, k=k, p=p)
    new_bits = cover_edge_volume_bits(inputs)
    previous_bits = wedge_volume_bits(int(wedges), n)
    return ReportRow(
        name=name,
        n=n,
        m=m,
        triangles=triangles,
        wedges=wedges,
        k=k,
        p=p,
        previous_bits=previous_bits,
        new_bits=new_bits,
        reduction=reduction_ratio(previous_bits, new_bits),
        extrapolated=_EXTRAPOLATED_CELLS,
    )


def _table_cells(row: ReportRow) -> list[str]:
    est = set(row.extrapolated)
    return [
        row.name,
        str(row.n),
        str(row.m),
        _format_count(row.triangles, "triangles" in est),
        _format_count(row.wedges, "wedges" in est),
        f"{row.k:.3f}",
        str(row.p),
        format_bytes(row.previous_bits),
        format_bytes(row.new_bits),
        format_ratio(row.reduction),
    ]


def render(rows, fmt: str = "table") -> str:
    """Render rows as an aligned table, machine CSV, or JSON records."""
    rows = list(rows)
    if fmt == "table":
        grid = [list(TABLE_COLUMNS)] + [_table_cells(r) for r in rows]
        widths = [max(len(line[c]) for line in grid) for c in range(len(TABLE_COLUMNS))]
        out = []
        for line in grid:
            cells = [line[0].ljust(widths[0])] + [
                cell.rjust(w) for cell, w in zip(line[1:], widths[1:])
            ]
            out.append("  ".join(cells).rstrip())
        return "\n".join(out) + "\n"
    if fmt == "csv":
        out = ["name,n,m,triangles,wedges,k,p,previous_bits,new_bits,reduction,extrapolated"]
        for r in rows:
            out.append(
                f"{r.name},{r.n},{r.m},{_csv_num(r.triangles)},{_csv_num(r.wedges)},"
                f"{r.k!r},{r.p},{r.previous_bits},{r.new_bits},{r.reduction!r},"
                f"{';'.join(r.extrapolated)}"
            )
        return "\n".join(out) + "\n"
    if fmt == "records":
        out = []
        for r in rows:
            rec = {
                "name": r.name,
                "n": r.n,
                "m": r.m,
                "triangles": r.triangles,
                "wedges": r.wedges,
                "k": r.k,
                "p": r.p,
                "previous_bits": r.previous_bits,
                "new_bits": r.new_bits,
                "reduction": r.reduction,
                "extrapolated": list(r.extrapolated),
            }
            out.append(json.dumps(rec))
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def _csv_num(value) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _parse_num(token: str):
    return float(token) if ("." in token or "e" in token or "E" in token) else int(token)


def parse_csv(text: str) -> list[ReportRow]:
    """Inverse of ``render(..., "csv")``; round-trips exactly."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return []
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 11:
            raise ValueError(f"malformed report CSV line: {line!r}")
        rows.append(
            ReportRow(
                name=parts[0],
                n=int(parts[1]),
                m=int(parts[2]),
                triangles=_parse_num(parts[3]),
                wedges=_parse_num(parts[4]),
                k=float(parts[5]),
                p=int(parts[6]),
                previous_bits=int(parts[7]),
                new_bits=int(parts[8]),
                reduction=float(parts[9]),
                extrapolated=tuple(t for t in parts[10].split(";") if t),
            )
        )
    return rows
