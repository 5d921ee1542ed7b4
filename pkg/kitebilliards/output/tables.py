"""Terminal tables for reports and return data."""
from typing import Any, Dict, Iterable, List, Sequence

from rich.table import Table

from kitebilliards.models import Report
from kitebilliards.output.export import RETURN_COLUMNS, jsonable


def _text(value: Any) -> str:
    value = jsonable(value)
    if isinstance(value, list):
        return "(" + ", ".join(_text(item) for item in value) + ")"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return "" if value is None else str(value)


def rows_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Table:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_text(cell) for cell in row))
    return table


def report_table(reports: List[Report]) -> Table:
    """One line per suite: name, status, checks and failure count."""
    table = Table(title="verification")
    table.add_column("suite")
    table.add_column("status")
    table.add_column("checked", justify="right")
    table.add_column("failures", justify="right")
    for report in reports:
        status = "[green]pass[/green]" if report.passed else "[red]FAIL[/red]"
        table.add_row(report.name, status, str(report.checked), str(len(report.failures)))
    return table


def return_table(rows: List[Dict[str, Any]], title: str = "returns") -> Table:
    return rows_table(title, RETURN_COLUMNS, ([row[key] for key in RETURN_COLUMNS] for row in rows))
