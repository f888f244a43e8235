"""
Shared options and output handling for the command modules.

Library errors are converted to exit codes here and nowhere else.
"""

import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional

import typer

from qdilog.core.config import settings
from qdilog.core.exceptions import ParameterError, QDilogError
from qdilog.core.hpnum import PrecisionContext, with_precision

logger = logging.getLogger(__name__)


def precision_option() -> int:
    return typer.Option(settings.DEFAULT_PRECISION, "--prec", help="Decimal digits of precision (>= 15)")


def out_option() -> Optional[Path]:
    return typer.Option(None, "--out", help="Write the output to this file instead of standard output")


def build_context(prec: int) -> PrecisionContext:
    return with_precision(prec)


def emit(text: str, out: Optional[Path]) -> None:
    """Write a finished JSON or CSV document."""
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
        return
    out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info(f"Wrote {out}")


@contextmanager
def reported_errors() -> Iterator[None]:
    """Turn library errors into a message on stderr and the matching exit code."""
    try:
        yield
    except QDilogError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=e.exit_code)


def load_grid(grid: Optional[str]) -> Optional[List[Dict[str, str]]]:
    """
    Read a grid file with one JSON object per line.

    ``None`` and ``"default"`` select the suite's embedded grid. Values are
    kept as strings so decimal inputs are parsed at working precision.
    """
    if grid is None or grid == "default":
        return None
    path = Path(grid)
    if not path.is_file():
        raise ParameterError(f"Grid file {grid} does not exist")
    points = []
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParameterError(f"{grid}:{number}: invalid JSON ({e.msg})") from e
        if not isinstance(record, dict):
            raise ParameterError(f"{grid}:{number}: expected a JSON object")
        points.append({str(key): str(value) for key, value in record.items()})
    return points
