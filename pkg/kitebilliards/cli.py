"""
Command-line front end.

Commands compute one structure for a parameter A and print it, or run
verification suites. JSON goes to stdout (or ``--out``); tables and log
lines go to the terminal. Exit codes: 0 pass, 1 verification failure,
2 usage error.
"""
import io
import logging
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, List, Optional

import typer
from rich.console import Console

from kitebilliards.arithgraph import Window, build_graph
from kitebilliards.comet import (
    cantor_approx,
    dimension_estimate,
    fundamental_chain,
    verify_fundamental_orbit,
    verify_return_model,
)
from kitebilliards.config import OutputFormat, Settings, get_settings
from kitebilliards.dynamics import Kite, first_return_direct, pinwheel, return_pair, square_orbit
from kitebilliards.exceptions import BudgetExceededError, KiteBilliardsError
from kitebilliards.hexagrid import Hexagrid
from kitebilliards.models import PlanePoint, format_rational, parse_rational
from kitebilliards.output import (
    chain_document,
    dumps,
    graph_document,
    graph_svg,
    orbit_document,
    report_table,
    return_table,
    rows_table,
    write_artifact,
    write_orbit_csv,
    write_return_csv,
)
from kitebilliards.pivots import PivotData, pivot_endpoints, pivot_points
from kitebilliards.seqcore import approximant_data, extend_many, predecessor_chain, unit_chain
from kitebilliards.suites import VerificationRunner

logger = logging.getLogger(__name__)

app = typer.Typer(name="kitebilliards", help="Outer billiards on kites in exact arithmetic.", add_completion=False)

A_HELP = "Kite parameter p/q in (0, 1)"


# ===== Option Parsing =====

def _rational(text: str, name: str = "--A") -> Fraction:
    try:
        return parse_rational(text)
    except KiteBilliardsError as e:
        raise typer.BadParameter(str(e), param_hint=name)


def _parameter(text: str) -> Fraction:
    a = _rational(text)
    if not 0 < a < 1:
        raise typer.BadParameter(f"{text} is not in (0, 1)", param_hint="--A")
    return a


def _deltas(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"cannot parse {text!r}", param_hint="--extend")


def _format(fmt: Optional[OutputFormat], allowed: List[OutputFormat], settings: Settings) -> OutputFormat:
    fmt = fmt or settings.output.format
    if fmt not in allowed:
        if fmt is settings.output.format:
            return allowed[0]
        choices = ", ".join(f.value for f in allowed)
        raise typer.BadParameter(f"{fmt.value} is not available here; use {choices}", param_hint="--format")
    return fmt


@contextmanager
def _usage_errors() -> Iterator[None]:
    """Domain errors raised by a command are usage errors."""
    try:
        yield
    except KiteBilliardsError as e:
        Console(stderr=True).print(f"[red]error:[/red] {e}")
        raise typer.Exit(code=2)


def _emit(data: Any, out: Optional[Path]) -> None:
    if out is not None:
        write_artifact(out, data)
        return
    typer.echo(data.decode("utf-8") if isinstance(data, bytes) else data, nl=False)


# ===== Commands =====

@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Override the configured log level"),
) -> None:
    """Configure logging once for every command."""
    settings = get_settings()
    logging.basicConfig(
        level=(log_level or settings.log_level.value).upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )


@app.command()
def orbit(
    a: str = typer.Option(..., "--A", help=A_HELP),
    x: Optional[str] = typer.Option(None, "--x", help="Start x (defaults to 1/q)"),
    y: int = typer.Option(-1, "--y", help="Odd start height"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Maximum square-map steps"),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Dump the square-map orbit of a special point."""
    settings = get_settings()
    a_value = _parameter(a)
    fmt = _format(fmt, [OutputFormat.JSON, OutputFormat.CSV], settings)
    start = PlanePoint(_rational(x, "--x") if x else Fraction(1, a_value.denominator), Fraction(y))
    with _usage_errors():
        trace = square_orbit(Kite(a_value), start, steps=budget, settings=settings)
    if fmt is OutputFormat.CSV:
        buffer = io.StringIO()
        write_orbit_csv(trace, buffer)
        _emit(buffer.getvalue(), out)
    else:
        _emit(dumps(orbit_document(trace), settings), out)


@app.command("return")
def return_command(
    a: str = typer.Option(..., "--A", help=A_HELP),
    x: str = typer.Option(..., "--x", help="Start x > 0"),
    y: int = typer.Option(-1, "--y", help="Start height, ±1"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Maximum square-map steps"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """First return to Ξ by direct iteration, with the pinwheel map alongside."""
    settings = get_settings()
    kite = Kite(_parameter(a))
    start = PlanePoint(_rational(x, "--x"), Fraction(y))
    with _usage_errors():
        direct = first_return_direct(kite, start, budget=budget, settings=settings)
        fast = pinwheel(kite, start)
        pair = return_pair(kite, start, direct.point)
    document = {
        "A": kite.a,
        "start": start,
        "point": direct.point,
        "steps": direct.steps,
        "pair": [pair.eps1, pair.eps2, pair.eps3],
        "spectrum": list(fast.spectrum.counts),
        "agrees": fast.point == direct.point,
    }
    _emit(dumps(document, settings), out)


@app.command()
def graph(
    a: str = typer.Option(..., "--A", help=A_HELP),
    alpha: Optional[str] = typer.Option(None, "--alpha", help="Offset of the fundamental map"),
    window: Optional[str] = typer.Option(None, "--window", help="x0,x1,y0,y1"),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Arithmetic graph of a window as JSON or SVG."""
    settings = get_settings()
    a_value = _parameter(a)
    fmt = _format(fmt, [OutputFormat.JSON, OutputFormat.SVG], settings)
    with _usage_errors():
        box = Window.parse(window) if window else None
        built = build_graph(a_value, _rational(alpha, "--alpha") if alpha else None, box, settings)
    if fmt is OutputFormat.SVG:
        _emit(graph_svg(built, settings=settings), out)
    else:
        _emit(dumps(graph_document(built), settings), out)


@app.command()
def hexagrid(
    a: str = typer.Option(..., "--A", help=A_HELP),
    window: Optional[str] = typer.Option(None, "--window", help="x0,x1,y0,y1"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """SVG of the graph with its hexagrid walls, floors and doors."""
    settings = get_settings()
    a_value = _parameter(a)
    grid = Hexagrid(a_value)
    with _usage_errors():
        box = Window.parse(window) if window else grid.period_window()
        built = build_graph(a_value, window=box, settings=settings)
    _emit(graph_svg(built, grid=grid, settings=settings), out)


@app.command()
def sequence(
    a: str = typer.Option(..., "--A", help="Odd rational p/q in (0, 1]"),
    extend: Optional[str] = typer.Option(None, "--extend", help="Comma-separated δ values to append"),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Inferior chain with δ, d, superior flags and λ."""
    settings = get_settings()
    a_value = _rational(a)
    deltas = _deltas(extend)
    as_json = out is not None or fmt is not None
    if fmt is not None and fmt is not OutputFormat.JSON:
        raise typer.BadParameter(f"{fmt.value} is not available here; use json", param_hint="--format")
    with _usage_errors():
        chain = unit_chain() if a_value == 1 else predecessor_chain(a_value)
        chain = extend_many(chain, deltas)
        data = approximant_data(chain, chain.terminal)
    if as_json:
        _emit(dumps(chain_document(chain, data.lambdas), settings), out)
        return
    rows = []
    for i, term in enumerate(chain.terms):
        rows.append([
            i,
            format_rational(term),
            chain.deltas[i] if i < len(chain.deltas) else "",
            chain.ds[i] if i < len(chain.ds) else "",
            chain.superior[i],
            data.lambdas[i],
        ])
    Console().print(rows_table(f"chain of {format_rational(chain.terminal)}", ["n", "A_n", "δ", "d", "superior", "λ"], rows))


@app.command()
def pivot(
    a: str = typer.Option(..., "--A", help=A_HELP),
    arc: bool = typer.Option(True, "--arc/--no-arc", help="Trace the pivot arc"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Pivot points E± and, optionally, the pivot arc."""
    settings = get_settings()
    a_value = _parameter(a)
    with _usage_errors():
        e_minus, e_plus, source = pivot_endpoints(a_value)
        data = PivotData(a=a_value, e_minus=e_minus, e_plus=e_plus, source=source)
        if arc:
            try:
                data = pivot_points(a_value, settings)
            except BudgetExceededError as e:
                logger.warning(f"pivot arc not traced: {e}")
    if out is not None:
        _emit(dumps(data, settings), out)
        return
    console = Console()
    console.print(f"E+ = {e_plus.as_tuple()}  E- = {e_minus.as_tuple()}  source = {format_rational(source)}")
    if data.arc:
        console.print(f"arc: {len(data.arc)} vertices from {data.arc[0].as_tuple()} to {data.arc[-1].as_tuple()}")


@app.command()
def cantor(
    a: str = typer.Option(..., "--A", help=A_HELP),
    depth: Optional[int] = typer.Option(None, "--depth", help="Digits of the Cantor truncation"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Maximum Ψ-iterates per return"),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Fundamental orbit, its return table and the truncated Cantor set."""
    settings = get_settings()
    a_value = _parameter(a)
    fmt = _format(fmt, [OutputFormat.JSON, OutputFormat.CSV], settings)
    with _usage_errors():
        chain = fundamental_chain(a_value)
        orbit_report = verify_fundamental_orbit(chain, settings)
        returns = verify_return_model(chain, budget, settings)
        approx = cantor_approx(chain, depth, settings)
    rows = returns.details["rows"]
    if fmt is OutputFormat.CSV:
        buffer = io.StringIO()
        write_return_csv(rows, buffer)
        _emit(buffer.getvalue(), out)
        return
    if out is not None:
        document = {
            "fundamental_orbit": orbit_report,
            "returns": returns,
            "cantor": {"depth": approx.depth, "hull": list(approx.hull()), "points": approx.points},
        }
        _emit(dumps(document, settings), out)
        return
    console = Console()
    console.print("X(κ): " + " ".join(orbit_report.details["points"]))
    console.print(return_table(rows, title=f"returns of {format_rational(a_value)}"))
    low, high = approx.hull()
    console.print(f"C_A depth {approx.depth}: {len(approx.points)} intervals in [{low}, {high}]")


@app.command()
def dimension(
    a: str = typer.Option("1/1", "--A", help="Odd rational starting the chain"),
    extend: Optional[str] = typer.Option(None, "--extend", help="Comma-separated δ values to append"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Superior levels to report"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Level estimates and closed forms of the dimension of C_A."""
    settings = get_settings()
    a_value = _rational(a)
    with _usage_errors():
        chain = unit_chain() if a_value == 1 else predecessor_chain(a_value)
        chain = extend_many(chain, _deltas(extend))
        estimate = dimension_estimate(chain, depth, settings)
    if out is not None:
        _emit(dumps(estimate, settings), out)
        return
    console = Console()
    console.print(rows_table(
        "dimension",
        ["n", "A_n", "D_n", "estimate", "enhanced"],
        ([lv["level"], lv["term"], lv["D"], lv["estimate"], lv["enhanced_estimate"]] for lv in estimate.levels),
    ))
    console.print(f"slope: {estimate.slope_estimate}  enhanced slope: {estimate.enhanced_slope_estimate}")
    if estimate.closed_form:
        console.print(f"closed form: {estimate.closed_form} = {estimate.closed_form_value}")
        console.print(f"enhanced: {estimate.enhanced_closed_form} = {estimate.enhanced_closed_form_value}")


@app.command()
def verify(
    suites: Optional[List[str]] = typer.Argument(None, help="Suite names; all when omitted"),
    a: Optional[List[str]] = typer.Option(None, "--A", help="Parameter override, repeatable"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write all reports as JSON"),
    save: bool = typer.Option(False, "--save", help="Also write the reports under the configured output directory"),
) -> None:
    """Run verification suites; exit 1 if any fails."""
    settings = get_settings()
    runner = VerificationRunner(settings)
    unknown = [name for name in suites or [] if name not in runner.names]
    if unknown:
        raise typer.BadParameter(
            f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(runner.names)}",
            param_hint="SUITES",
        )
    params = [_parameter(text) for text in a] if a else None
    with _usage_errors():
        reports = runner.run(suites, params)
    if out is not None:
        write_artifact(out, dumps(reports, settings))
    if save:
        write_artifact(settings.artifact_path("verify", suffix="json"), dumps(reports, settings))
    Console(stderr=True).print(report_table(reports))
    failed = [report for report in reports if not report.passed]
    if failed:
        typer.echo(dumps(failed, settings).decode("utf-8"), nl=False)
        raise typer.Exit(code=1)
    for report in reports:
        if report.name == "discrete":
            for name, details in report.details.items():
                typer.echo(f"{name}: {' '.join(details['points'])}")
