"""
eval: value of one library function as a JSON document.
"""

from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

import typer
from mpmath import mp

from qdilog.cli.common import build_context, emit, out_option, precision_option, reported_errors
from qdilog.core.exceptions import ParameterError
from qdilog.core.hpnum import HPComplex, PrecisionContext, to_hp
from qdilog.schemas.evaluation import EvaluationResponse
from qdilog.services import qfun, specfun
from qdilog.services.qfun import QParam
from qdilog.services.specfun import ThetaParam

Evaluated = Tuple[HPComplex, Optional[int]]


def _require(params: Dict[str, str], *names: str) -> Tuple[str, ...]:
    missing = [name for name in names if name not in params]
    if missing:
        raise ParameterError(f"Missing --{', --'.join(missing)}")
    return tuple(params[name] for name in names)


def _integer(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise ParameterError(f"--{name} must be an integer, got {text!r}") from e


def _li2q(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    z, q = _require(params, "z", "q")
    result = qfun.q_polylog_series(2, z, QParam.of(q, ctx), ctx)
    return result.value, result.terms_used


def _qlog(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    z, q = _require(params, "z", "q")
    return qfun.q_log(z, QParam.of(q, ctx), ctx), None


def _qpolylog(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    n, z, q = _require(params, "n", "z", "q")
    result = qfun.q_polylog_series(_integer(n, "n"), z, QParam.of(q, ctx), ctx)
    return result.value, result.terms_used


def _hurwitz(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    s, z = _require(params, "s", "z")
    return specfun.hurwitz_zeta(s, z, ctx), None


def _periodic_zeta(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    theta, s = _require(params, "theta", "s")
    return specfun.periodic_zeta(ThetaParam.of(theta, ctx), s, ctx), None


def _polylog(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    s, z = _require(params, "s", "z")
    return specfun.polylog(s, z, ctx), None


def _polygamma(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    n, z = _require(params, "n", "z")
    return specfun.polygamma(_integer(n, "n"), z, ctx), None


def _bernoulli(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    n, z = _require(params, "n", "z")
    return specfun.bernoulli_poly(_integer(n, "n"), z, ctx), None


def _apostol(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    n, x = _require(params, "n", "x")
    if "lam" in params:
        lam = to_hp(params["lam"], ctx)
    elif "theta" in params:
        lam = ThetaParam.of(params["theta"], ctx).lam(ctx)
    else:
        raise ParameterError("apostol needs --lam or --theta")
    return specfun.apostol_bernoulli(_integer(n, "n"), x, lam, ctx), None


def _euler_series(params: Dict[str, str], ctx: PrecisionContext) -> Evaluated:
    z, q = _require(params, "z", "q")
    result = qfun.euler_series_sum(z, QParam.of(q, ctx), ctx)
    return result.value, result.terms_used


FUNCTIONS: Dict[str, Callable[[Dict[str, str], PrecisionContext], Evaluated]] = {
    "li2q": _li2q,
    "qlog": _qlog,
    "qpolylog": _qpolylog,
    "hurwitz": _hurwitz,
    "periodic_zeta": _periodic_zeta,
    "polylog": _polylog,
    "polygamma": _polygamma,
    "bernoulli": _bernoulli,
    "apostol": _apostol,
    "euler_series": _euler_series,
}


def evaluate(
    params: Dict[str, str],
    function: str,
    ctx: PrecisionContext
) -> EvaluationResponse:
    """
    Evaluate a named function.

    Raises:
        ParameterError: unknown function or missing parameter
    """
    handler = FUNCTIONS.get(function)
    if handler is None:
        raise ParameterError(f"Unknown function {function!r}; expected one of {', '.join(FUNCTIONS)}")
    value, terms_used = handler(params, ctx)
    with ctx.workdps():
        value = mp.mpc(value)
    return EvaluationResponse(
        function=function,
        params=params,
        value_re=ctx.format(value.real),
        value_im=ctx.format(value.imag),
        digits=ctx.digits,
        terms_used=terms_used
    )


def eval_command(
    function: str = typer.Argument(..., help="li2q, qlog, qpolylog, hurwitz, periodic_zeta, polylog, polygamma, bernoulli, apostol or euler_series"),
    z: Optional[str] = typer.Option(None, "--z", help="Argument z, e.g. 0.25 or 0.3+0.4i"),
    q: Optional[str] = typer.Option(None, "--q", help="Deformation parameter 0 < q < 1"),
    s: Optional[str] = typer.Option(None, "--s", help="Order s of a zeta function or polylogarithm"),
    n: Optional[str] = typer.Option(None, "--n", help="Integer index"),
    x: Optional[str] = typer.Option(None, "--x", help="Polynomial argument of apostol"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Angle parameter 0 < theta < 1"),
    lam: Optional[str] = typer.Option(None, "--lam", help="Apostol parameter lambda"),
    prec: int = precision_option(),
    out: Optional[Path] = out_option(),
) -> None:
    """Evaluate one function and print {function, params, value_re, value_im, digits, terms_used}."""
    given = {"z": z, "q": q, "s": s, "n": n, "x": x, "theta": theta, "lam": lam}
    params = {name: value for name, value in given.items() if value is not None}
    with reported_errors():
        ctx = build_context(prec)
        response = evaluate(params, function, ctx)
    emit(response.model_dump_json(indent=2), out)
