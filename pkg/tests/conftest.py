import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make tests/util.py importable

# SNAP graph name -> (download stem, expected n, expected m after normalization)
SNAP_GRAPHS = {
    "ca-GrQc": ("ca-GrQc.txt", 5242, 14484),
    "ca-HepTh": ("ca-HepTh.txt", 9877, 25973),
    "facebook_combined": ("facebook_combined.txt", 4039, 88234),
    "ca-CondMat": ("ca-CondMat.txt", 23133, 93439),
    "ca-HepPh": ("ca-HepPh.txt", 12008, 118489),
    "email-Enron": ("email-Enron.txt", 36692, 183831),
}


def data_dir() -> Path:
    env = os.environ.get("TRICOVER_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"


def snap_path(name: str) -> Path:
    filename = SNAP_GRAPHS[name][0]
    path = data_dir() / filename
    if not path.exists():
        pytest.skip(
            f"SNAP graph {filename} not present under {data_dir()} "
            f"(set TRICOVER_DATA_DIR or see README for the download commands)"
        )
    return path


@pytest.fixture(scope="session")
def snap_graph_cache():
    from tricover import load_edge_list_file

    cache = {}

    def load(name: str):
        if name not in cache:
            cache[name] = load_edge_list_file(snap_path(name))
        return cache[name]

    return load
