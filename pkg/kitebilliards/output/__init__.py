"""Artifact export: JSON, CSV, SVG and terminal tables."""
from kitebilliards.output.export import (
    chain_document,
    dumps,
    graph_document,
    jsonable,
    loads,
    orbit_document,
    write_artifact,
    write_orbit_csv,
    write_return_csv,
)
from kitebilliards.output.render import SvgDocument, graph_svg
from kitebilliards.output.tables import report_table, return_table, rows_table

__all__ = [
    "SvgDocument",
    "chain_document",
    "dumps",
    "graph_document",
    "graph_svg",
    "jsonable",
    "loads",
    "orbit_document",
    "report_table",
    "return_table",
    "rows_table",
    "write_artifact",
    "write_orbit_csv",
    "write_return_csv",
]
