"""
Crossover Service

Compares the two ways of evaluating Li_2(omega, e^(-x)) near q = 1: the
direct series, whose cost grows like 1/x, against the q -> 1 expansion
truncated at its optimal order. Both are measured against a reference at
doubled precision.
"""

import logging
import time
from typing import List, Sequence

import mpmath
import pandas as pd

from qdilog.core.hpnum import PrecisionContext, Scalar
from qdilog.schemas.crossover import CROSSOVER_COLUMNS, CrossoverRow
from qdilog.services import asymp, qfun
from qdilog.services.asymp import MAX_TRUNCATION_ORDER, Provenance, Regime
from qdilog.services.qfun import ExponentialParam

logger = logging.getLogger(__name__)

DEFAULT_XS = ("0.5", "0.2", "0.1", "0.05", "0.02", "0.01")


def crossover_row(
    x: Scalar,
    zparam: Scalar,
    theta: Scalar,
    ctx: PrecisionContext,
    max_order: int = MAX_TRUNCATION_ORDER
) -> CrossoverRow:
    """Direct and asymptotic evaluation at one x."""
    p = ExponentialParam.of(x, zparam, theta, ctx)

    started = time.perf_counter()
    direct = qfun.q_polylog_series(2, p.omega(ctx), p.q(ctx), ctx)
    elapsed = time.perf_counter() - started

    reference_ctx = ctx.doubled()
    reference = qfun.li2q(ExponentialParam.of(x, zparam, theta, reference_ctx), reference_ctx)

    order = asymp.optimal_truncation(p.zparam, p.theta, p.x, Regime.Q_TO_1, ctx, max_order=max_order)
    expansion = asymp.q1_expansion(p.zparam, p.theta, order, Provenance.CLOSED_FORM, ctx)
    approximation = asymp.eval_expansion(expansion, p.x, ctx)

    with ctx.workdps():
        asymp_error = abs(approximation - reference)
        direct_error = abs(direct.value - reference)
    logger.info(f"x = {mpmath.nstr(p.x, 8)}: {direct.terms_used} terms in {elapsed:.4f}s, optimal order {order}")
    return CrossoverRow(
        x=ctx.format(p.x),
        direct_terms=direct.terms_used,
        direct_time=f"{elapsed:.6f}",
        asymp_N=order,
        asymp_error=mpmath.nstr(asymp_error, 8),
        direct_error=mpmath.nstr(direct_error, 8)
    )


def crossover_table(
    zparam: Scalar,
    theta: Scalar,
    ctx: PrecisionContext,
    xs: Sequence[Scalar] = DEFAULT_XS
) -> List[CrossoverRow]:
    return [crossover_row(x, zparam, theta, ctx) for x in xs]


def rows_to_csv(rows: List[CrossoverRow]) -> str:
    """CSV with the columns of CROSSOVER_COLUMNS."""
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=CROSSOVER_COLUMNS)
    return frame.to_csv(index=False)
