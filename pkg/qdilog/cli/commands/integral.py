"""
integral: a Barnes integral along a vertical line as a JSON document.
"""

from pathlib import Path
from typing import Optional

import typer

from qdilog.cli.common import build_context, emit, out_option, precision_option, reported_errors
from qdilog.core.exceptions import ParameterError
from qdilog.schemas.evaluation import IntegralResponse
from qdilog.services import mellin
from qdilog.services.qfun import ExponentialParam

INTEGRALS = {
    "li2": mellin.barnes_li2,
    "ci2": mellin.barnes_ci2,
    "si2": mellin.barnes_si2,
}


def integral_command(
    which: str = typer.Option("li2", "--which", help="li2, ci2 or si2"),
    x: str = typer.Option("1", "--x", help="x = -log q, positive"),
    zparam: str = typer.Option("2", "--zparam", help="z with Re z > 1"),
    theta: str = typer.Option("0.3", "--theta", help="Angle parameter 0 < theta < 1"),
    c: str = typer.Option("1.5", "--c", help="Abscissa: c > 1 for li2, 1 < c < 2 for ci2 and si2"),
    tol: Optional[str] = typer.Option(None, "--tol", help="Quadrature target; defaults to 10^-prec"),
    prec: int = precision_option(),
    out: Optional[Path] = out_option(),
) -> None:
    """Evaluate the integral and print its value, node count and self-consistency estimate."""
    with reported_errors():
        integral = INTEGRALS.get(which)
        if integral is None:
            raise ParameterError(f"Unknown integral {which!r}; expected li2, ci2 or si2")
        ctx = build_context(prec)
        p = ExponentialParam.of(x, zparam, theta, ctx)
        result = integral(p, c, ctx, tol)
        params = {"x": x, "zparam": zparam, "theta": theta, "c": c}
        if tol is not None:
            params["tol"] = tol
        response = IntegralResponse(
            which=which,
            params=params,
            value_re=ctx.format(result.value.real),
            value_im=ctx.format(result.value.imag),
            nodes_used=result.nodes_used,
            estimate=ctx.format(result.estimate),
            height=ctx.format(result.spec.height),
            step=ctx.format(result.spec.step),
            digits=ctx.digits
        )
    emit(response.model_dump_json(indent=2), out)
