"""Tests for JSON, CSV, SVG and table output."""
import csv
import io
import xml.etree.ElementTree as ET
from fractions import Fraction as F

from rich.table import Table

from kitebilliards.arithgraph import Window, build_graph
from kitebilliards.dynamics import square_orbit
from kitebilliards.hexagrid import hexagrid
from kitebilliards.models import LatticePoint, PlanePoint, Report
from kitebilliards.output import (
    chain_document,
    dumps,
    graph_document,
    graph_svg,
    jsonable,
    loads,
    orbit_document,
    report_table,
    return_table,
    write_artifact,
    write_orbit_csv,
    write_return_csv,
)
from kitebilliards.output.export import ORBIT_COLUMNS, RETURN_COLUMNS
from kitebilliards.pivots import pivot_points
from kitebilliards.seqcore import predecessor_chain

SVG = "{http://www.w3.org/2000/svg}"


def test_jsonable_keeps_fractions_exact():
    value = {"x": F(5, 49), "n": F(4), "v": LatticePoint(1, -1), "p": PlanePoint(F(1, 3), F(-1))}
    assert jsonable(value) == {"x": "5/49", "n": 4, "v": [1, -1], "p": ["1/3", -1]}


def test_jsonable_with_decimal_places():
    assert jsonable(F(1, 3), places=4) == "0.3333"
    assert jsonable({3, 1, 2}) == [1, 2, 3]


def test_dumps_is_deterministic(settings):
    first = dumps({"b": F(1, 2), "a": [F(1, 3)]}, settings)
    second = dumps({"a": [F(1, 3)], "b": F(1, 2)}, settings)
    assert first == second
    assert first.endswith(b"\n")
    assert loads(first) == {"a": ["1/3"], "b": "1/2"}


def test_write_artifact_creates_parents(tmp_path):
    path = write_artifact(tmp_path / "deep" / "out.json", "{}")
    assert path.read_text() == "{}"


def test_orbit_document_and_csv(kite_third):
    trace = square_orbit(kite_third, PlanePoint(F(1, 3), F(-1)))
    document = jsonable(orbit_document(trace))
    assert document["closed"] is True
    assert document["hits"] == ["1/3", "5/3"]

    stream = io.StringIO()
    rows = write_orbit_csv(trace, stream)
    lines = list(csv.reader(io.StringIO(stream.getvalue())))
    assert lines[0] == ORBIT_COLUMNS == ["step", "x_num", "x_den", "y"]
    assert lines[1] == ["0", "1", "3", "-1"]
    assert all(int(row[3]) % 2 == 1 for row in lines[1:])
    assert len(lines) == rows + 1


def test_return_csv_uses_fixed_columns():
    row = {
        "digits": "0 1",
        "X_num": 5,
        "X_den": 49,
        "sigma": 1,
        "q_sigma": 3,
        "h1_observed": "2.5",
        "h2_observed": 7,
        "bounds_ok": True,
    }
    stream = io.StringIO()
    assert write_return_csv([row], stream) == 1
    header, body = stream.getvalue().splitlines()
    assert header.split(",") == RETURN_COLUMNS
    assert body.endswith(",true")


def test_chain_document():
    document = chain_document(predecessor_chain(F(19, 49)), lambdas=[F(30, 49)])
    assert document["ds"] == [1, 2, 1]
    assert document["sides"] == [-1, 1, 1]
    assert jsonable(document)["lambda"] == ["30/49"]


def test_graph_document_lists_every_vertex(settings):
    graph = build_graph(F(1, 3), window=Window(-4, 4, -2, 4), settings=settings)
    document = jsonable(graph_document(graph))
    assert document["A"] == "1/3"
    assert len(document["vertices"]) == len(graph.edges)
    assert document["gamma"] == graph.gamma_index


def test_graph_svg_is_well_formed(settings):
    a = F(1, 3)
    graph = build_graph(a, window=Window(-4, 6, -3, 5), settings=settings)
    text = graph_svg(graph, grid=hexagrid(a), pivots=pivot_points(a, settings), settings=settings)
    root = ET.fromstring(text.encode("utf-8"))
    assert root.tag == f"{SVG}svg"
    layers = [g.get("id") for g in root.findall(f"{SVG}g")]
    assert "gamma" in layers or "components" in layers
    assert "pivots" in layers
    assert root.find(f"{SVG}title").text == "A = 1/3"


def test_tables():
    report = Report(name="discrete", checked=3)
    assert isinstance(report_table([report]), Table)
    table = return_table([{key: "" for key in RETURN_COLUMNS}])
    assert len(table.columns) == len(RETURN_COLUMNS)
