"""Triangle counting and communication-volume modeling via BFS cover-edge sets."""

from .bfs import (
    BfsLabels,
    EdgeClass,
    EdgeClassification,
    InternalConsistencyError,
    bfs_forest,
    classify_edges,
    diameter_proxy,
)
from .counting import (
    TriangleCountReport,
    count_bruteforce,
    count_cetc,
    count_edge_iterator,
    intersect,
)
from .distsim import (
    CommLedger,
    Partition,
    SimResult,
    charge_ledger,
    partition_vertices,
    simulate_comm_cetc,
)
from .graph import (
    DegreeStats,
    EdgeListParseError,
    Graph,
    degree_stats,
    load_edge_list,
    load_edge_list_file,
)
from .model import (
    FitResult,
    ModelInputs,
    cover_edge_volume_bits,
    estimate_triangles_powerlaw,
    fit_k_exponential,
    log2_ceil,
    reduction_ratio,
    wedge_volume_bits,
)
from .report import (
    DEFAULT_WEDGE_DEFINITION,
    ReportRow,
    build_extrapolated_row,
    build_row,
    format_bytes,
    parse_csv,
    render,
)
from .rmat import RmatParams, generate_rmat

__version__ = "0.1.0"

__all__ = [
    "BfsLabels",
    "CommLedger",
    "DEFAULT_WEDGE_DEFINITION",
    "DegreeStats",
    "EdgeClass",
    "EdgeClassification",
    "EdgeListParseError",
    "FitResult",
    "Graph",
    "InternalConsistencyError",
    "ModelInputs",
    "Partition",
    "ReportRow",
    "RmatParams",
    "SimResult",
    "TriangleCountReport",
    "bfs_forest",
    "build_extrapolated_row",
    "build_row",
    "charge_ledger",
    "classify_edges",
    "count_bruteforce",
    "count_cetc",
    "count_edge_iterator",
    "cover_edge_volume_bits",
    "degree_stats",
    "diameter_proxy",
    "estimate_triangles_powerlaw",
    "fit_k_exponential",
    "format_bytes",
    "generate_rmat",
    "intersect",
    "load_edge_list",
    "load_edge_list_file",
    "log2_ceil",
    "parse_csv",
    "partition_vertices",
    "reduction_ratio",
    "render",
    "simulate_comm_cetc",
    "wedge_volume_bits",
]
