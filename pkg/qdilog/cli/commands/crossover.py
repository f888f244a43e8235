"""
crossover: direct summation against the optimally truncated q -> 1 expansion, as CSV.
"""

from pathlib import Path
from typing import List, Optional

import typer

from qdilog.cli.common import build_context, emit, out_option, precision_option, reported_errors
from qdilog.services.crossover import crossover_table, rows_to_csv


def crossover_command(
    xs: Optional[List[str]] = typer.Option(None, "--x", help="Sample point; repeat for several"),
    zparam: str = typer.Option("2", "--zparam", help="z with Re z > 1"),
    theta: str = typer.Option("0.3", "--theta", help="Angle parameter 0 < theta < 1"),
    prec: int = precision_option(),
    out: Optional[Path] = out_option(),
) -> None:
    """One row per --x; with no --x the table is empty."""
    with reported_errors():
        ctx = build_context(prec)
        rows = crossover_table(zparam, theta, ctx, xs=xs or [])
    emit(rows_to_csv(rows), out)
