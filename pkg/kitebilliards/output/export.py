"""
JSON and CSV export.

Every number leaves the package as an exact fraction string ``"p/q"``
unless a caller opts into decimals through ``output.decimal_places``.
JSON keys are sorted, so identical input always gives identical bytes.
"""
import csv
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, TextIO

import orjson
from pydantic import BaseModel

from kitebilliards.config import Settings, get_settings
from kitebilliards.models import (
    LatticePoint,
    OrbitTrace,
    PlanePoint,
    SequenceChain,
    format_rational,
)

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE

ORBIT_COLUMNS = ["step", "x_num", "x_den", "y"]
RETURN_COLUMNS = ["digits", "X_num", "X_den", "sigma", "q_sigma", "h1_observed", "h2_observed", "bounds_ok"]


def format_number(value: Fraction, places: Optional[int] = None) -> str:
    """Exact ``p/q`` text, or a fixed-point decimal when ``places`` is set."""
    if places is None:
        return format_rational(value)
    return f"{float(value):.{places}f}"


def jsonable(value: Any, places: Optional[int] = None) -> Any:
    """Convert package objects into plain JSON data.

    Args:
        value: Fractions, points, pydantic models, dataclasses with
            ``to_json_dict`` and nested containers of these
        places: Decimal places for fractions; ``None`` keeps them exact

    Returns:
        Nested dicts, lists, strings, ints, floats, bools and None
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1 and places is None:
            return value.numerator
        return format_number(value, places)
    if isinstance(value, float):
        return round(value, places) if places is not None else value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, PlanePoint):
        return [jsonable(value.x, places), jsonable(value.y, places)]
    if isinstance(value, LatticePoint):
        return [value.m, value.n]
    if hasattr(value, "to_json_dict"):
        return jsonable(value.to_json_dict(), places)
    if isinstance(value, BaseModel):
        return jsonable(value.model_dump(), places)
    if isinstance(value, dict):
        return {str(key): jsonable(item, places) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(item, places) for item in items]
    raise TypeError(f"cannot export {type(value).__name__}")


def dumps(value: Any, settings: Optional[Settings] = None) -> bytes:
    """Serialize to indented JSON with sorted keys."""
    settings = settings or get_settings()
    return orjson.dumps(jsonable(value, settings.output.decimal_places), option=JSON_OPTIONS)


def loads(data: bytes) -> Any:
    return orjson.loads(data)


def write_artifact(path: Path, data: Any) -> Path:
    """Write bytes or text to ``path``, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    path.write_bytes(data)
    logger.info(f"wrote {len(data)} bytes to {path}")
    return path


# ===== Documents =====

def graph_document(graph: Any) -> Dict[str, Any]:
    """Vertices, edges and components of an arithmetic graph window."""
    vertices = []
    for v in sorted(graph.edges):
        forward, backward = graph.edges[v]
        vertices.append({
            "v": v,
            "forward": forward,
            "backward": backward,
            "component": graph.component_of.get(v),
        })
    return {
        "A": graph.a,
        "alpha": graph.alpha,
        "window": list(graph.window.as_tuple()),
        "gamma": graph.gamma_index,
        "components": [
            {"size": len(members), "closed": closed, "start": members[0]}
            for members, closed in zip(graph.components, graph.closed)
        ],
        "isolated": len(graph.isolated),
        "vertices": vertices,
    }


def orbit_document(trace: OrbitTrace) -> Dict[str, Any]:
    return {
        "start": trace.start,
        "steps": trace.steps,
        "closed": trace.closed,
        "hits": trace.hits,
        "xi_diameter": trace.xi_diameter(),
        "points": trace.points,
    }


def chain_document(chain: SequenceChain, lambdas: Optional[List[Fraction]] = None) -> Dict[str, Any]:
    document = dict(chain.to_json_dict())
    document["sides"] = list(chain.sides)
    if lambdas is not None:
        document["lambda"] = lambdas
    return document


# ===== CSV =====

def write_orbit_csv(trace: OrbitTrace, stream: TextIO) -> int:
    """One row per ψ-iterate: step, x_num, x_den, y. Returns the number of rows.

    Special orbits stay on odd integer heights, so y is written as an integer.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(ORBIT_COLUMNS)
    for step, point in enumerate(trace.points):
        y = point.y.numerator if point.y.denominator == 1 else format_rational(point.y)
        writer.writerow([step, point.x.numerator, point.x.denominator, y])
    return len(trace.points)


def write_return_csv(rows: Iterable[Dict[str, Any]], stream: TextIO) -> int:
    """Per-κ return report with the fixed column order of ``RETURN_COLUMNS``."""
    writer = csv.DictWriter(stream, fieldnames=RETURN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({key: _cell(row[key]) for key in RETURN_COLUMNS})
        count += 1
    return count


def _cell(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return " ".join(str(item) for item in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value
