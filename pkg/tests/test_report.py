import pytest

from tricover import build_extrapolated_row, build_row, parse_csv, render
from tricover.model import wedge_volume_bits
from tricover.report import ReportRow, format_bytes, format_ratio
from util import complete_graph, er_graph


def rmat36_row():
    return build_extrapolated_row(
        "RMAT-36", n=2**36, m=2**40, k=0.311, wedges=2.73e16, triangles=1.2e14, p=128
    )


def test_format_bytes_table_conventions():
    assert format_bytes(4_310_748) == "526KB"
    assert format_bytes(wedge_volume_bits(776895, 26475)) == "2.78MB"
    assert format_bytes(wedge_volume_bits(17051688, 4039)) == "48.8MB"
    assert format_bytes(wedge_volume_bits(209811585, 1134890)) == "1.03GB"
    assert format_bytes(wedge_volume_bits(int(2.73e16), 2**36)) == "218PB"
    assert format_bytes(0) == "0B"
    assert format_bytes(8) == "1.00B"


def test_format_ratio_conventions():
    assert format_ratio(4.3131) == "4.31"
    assert format_ratio(56.01) == "56.0"
    assert format_ratio(7.0996) == "7.10"
    assert format_ratio(1156.6) == "1157"


def test_build_row_k3():
    g = complete_graph(3)
    row = build_row("k3", g, 1, wedge_definition="total")
    assert row.triangles == 1
    assert row.wedges == 3
    assert row.previous_bits == 3 * 2 * 2
    assert row.new_bits == 20
    assert row.reduction == pytest.approx(12 / 20)
    assert row.extrapolated == ()


def test_build_row_default_wedges_oriented():
    row = build_row("k3", complete_graph(3), 1)
    assert row.wedges == 1  # degree-ordered out-wedges of a triangle


def test_extrapolated_row_reduction():
    row = rmat36_row()
    assert row.reduction == pytest.approx(1156, rel=0.02)
    assert set(row.extrapolated) == {"k", "new", "reduction", "triangles", "wedges"}


def test_extrapolated_row_missing_fields():
    with pytest.raises(ValueError, match="wedges, triangles"):
        build_extrapolated_row("x", n=4, m=4, k=0.5, p=2)


def test_render_empty_and_single():
    header_only = render([], "table")
    assert header_only.splitlines()[0].split() == [
        "Graph", "n", "m", "Triangles", "Wedges", "k", "p", "Previous", "New", "Reduction",
    ]
    assert len(header_only.splitlines()) == 1
    out = render([rmat36_row()], "table")
    assert len(out.splitlines()) == 2
    assert "218PB" in out and "0.311" in out and "1.2E+14" in out


def test_render_measured_row_integers():
    g = er_graph(30, 0.3, seed=4)
    out = render([build_row("er", g, 2)], "table")
    assert "E+" not in out  # measured cells print as plain integers


def test_csv_round_trip_idempotent():
    rows = [rmat36_row(), build_row("k3", complete_graph(3), 1)]
    text = render(rows, "csv")
    again = render(parse_csv(text), "csv")
    assert again == text
    parsed = parse_csv(text)
    assert parsed[0].new_bits == rows[0].new_bits
    assert parsed[1].k == rows[1].k


def test_records_format():
    import json

    lines = render([rmat36_row()], "records").splitlines()
    rec = json.loads(lines[0])
    assert rec["name"] == "RMAT-36"
    assert rec["p"] == 128
    assert "new_bits" in rec and "extrapolated" in rec


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render([], "yaml")


def test_row_consistency_guard():
    with pytest.raises(ValueError):
        ReportRow(
            name="bad", n=3, m=3, triangles=1, wedges=3, k=0.3, p=1,
            previous_bits=100, new_bits=10, reduction=3.0,
        )
