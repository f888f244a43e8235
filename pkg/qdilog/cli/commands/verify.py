"""
verify: run an identity suite and print its report.
"""

from pathlib import Path
from typing import Optional

import typer

from qdilog.cli.common import build_context, emit, load_grid, out_option, precision_option, reported_errors
from qdilog.services.verification import SUITES, run_suite


def verify_command(
    suite: str = typer.Argument(..., help=", ".join(SUITES)),
    grid: Optional[str] = typer.Option(None, "--grid", help="'default' or a file with one JSON object per case"),
    prec: int = precision_option(),
    out: Optional[Path] = out_option(),
) -> None:
    """Run a verification suite; exit 0 iff every case passes, 1 otherwise."""
    with reported_errors():
        ctx = build_context(prec)
        report = run_suite(suite, ctx, load_grid(grid))
    emit(report.model_dump_json(indent=2), out)
    if not report.passed:
        raise typer.Exit(code=1)
