"""
Precision contexts and tail-bounded series summation.

Every numerical service receives a PrecisionContext explicitly; there is no
global precision. Arithmetic runs at ``digits + guard_digits`` decimal digits
inside ``ctx.workdps()`` and results are reported at ``digits``.
"""

import logging
from dataclasses import dataclass
from numbers import Number
from typing import Callable, Optional, Union

import mpmath
from mpmath import mp, mpc, mpf

from qdilog.core.config import settings
from qdilog.core.exceptions import (
    InvalidPrecisionError,
    NonConvergenceError,
    NonFiniteError,
    ParameterError,
)

logger = logging.getLogger(__name__)

MIN_DIGITS = 15

# The universal value type: a complex number at working precision.
HPComplex = mpc
HPReal = mpf

Scalar = Union[str, Number, mpf, mpc]


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision shared by every operation of a computation."""
    digits: int
    guard_digits: int

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard_digits

    @property
    def tolerance(self) -> mpf:
        """10^(-digits) at working precision."""
        with self.workdps():
            return mpf(10) ** (-self.digits)

    def eps(self, slack: int = 0) -> mpf:
        """10^(-digits + slack), the scaled tolerances used by the invariants."""
        with self.workdps():
            return mpf(10) ** (slack - self.digits)

    def workdps(self):
        """Context manager running mpmath at the working precision."""
        return mp.workdps(self.working_digits)

    def extended(self, extra_digits: int) -> "PrecisionContext":
        """Same guard policy, ``extra_digits`` more reported digits."""
        return with_precision(self.digits + max(0, int(extra_digits)))

    def doubled(self) -> "PrecisionContext":
        return with_precision(2 * self.digits)

    def format(self, value: Scalar) -> str:
        """Decimal string of a real value at the reported precision."""
        return mpmath.nstr(value, self.digits, min_fixed=-5, max_fixed=self.digits)


def with_precision(digits: int) -> PrecisionContext:
    """
    Build a precision context.

    Args:
        digits: Decimal digits of working precision (>= 15)

    Returns:
        PrecisionContext with guard_digits = max(10, digits // 10)
    """
    if isinstance(digits, bool) or not isinstance(digits, int):
        raise InvalidPrecisionError(f"Precision must be an integer number of digits, got {digits!r}")
    if digits < MIN_DIGITS:
        raise InvalidPrecisionError(f"Precision {digits} is below the minimum of {MIN_DIGITS} digits")
    return PrecisionContext(digits=digits, guard_digits=max(10, digits // 10))


def _parse_complex_text(text: str) -> mpc:
    body = text.strip().lower().replace(" ", "").replace("j", "i")
    if not body:
        raise ParameterError("Empty numeric value")
    if not body.endswith("i"):
        return mpc(mpf(body))
    body = body[:-1]
    split = -1
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] != "e":
            split = pos
            break
    if split == -1:
        real_text, imag_text = "0", body
    else:
        real_text, imag_text = body[:split], body[split:]
    if imag_text in ("", "+"):
        imag_text = "1"
    elif imag_text == "-":
        imag_text = "-1"
    return mpc(mpf(real_text), mpf(imag_text))


def to_hp(value: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    Convert a number or a decimal string ("0.3", "1.5+0.2i", "2-1j") to HPComplex.

    Decimal strings are parsed at working precision, so "0.3" is exact to
    the working digits rather than inheriting binary float error.
    """
    with ctx.workdps():
        try:
            if isinstance(value, str):
                result = _parse_complex_text(value)
            else:
                result = mpc(value)
        except (ValueError, TypeError) as e:
            raise ParameterError(f"Cannot parse numeric value {value!r}: {e}") from e
    return ensure_finite(result, "input")


def to_real(value: Scalar, ctx: PrecisionContext) -> HPReal:
    """Convert to a high-precision real, rejecting non-zero imaginary parts."""
    z = to_hp(value, ctx)
    if z.imag != 0:
        raise ParameterError(f"Expected a real value, got {value!r}")
    return z.real


def ensure_finite(value, what: str = "value"):
    """Raise NonFiniteError if an infinity or NaN escaped an operation."""
    if isinstance(value, (mpc, complex)):
        parts = (value.real, value.imag)
    else:
        parts = (value,)
    for part in parts:
        if not mpmath.isfinite(part):
            raise NonFiniteError(f"Non-finite {what}: {value}")
    return value


@dataclass(frozen=True)
class SeriesResult:
    """Value of a summed series with the bound on its discarded tail."""
    value: HPComplex
    terms_used: int
    tail_bound: HPReal


def _two_sum(a: mpf, b: mpf):
    x = a + b
    z = x - a
    y = (a - (x - z)) + (b - z)
    return x, y


class _CompensatedAccumulator:
    """Neumaier-style compensated sum, real and imaginary parts kept separately."""

    def __init__(self):
        self.re = mpf(0)
        self.im = mpf(0)
        self.re_err = mpf(0)
        self.im_err = mpf(0)

    def add(self, term) -> None:
        term = mpc(term)
        self.re, err = _two_sum(self.re, term.real)
        self.re_err += err
        self.im, err = _two_sum(self.im, term.imag)
        self.im_err += err

    @property
    def value(self) -> mpc:
        return mpc(self.re + self.re_err, self.im + self.im_err)


def sum_series(
    term: Callable[[int], Scalar],
    tail_bound: Callable[[int], Scalar],
    ctx: PrecisionContext,
    start: int = 1,
    max_terms: Optional[int] = None
) -> SeriesResult:
    """
    Sum term(start) + term(start + 1) + ... until the tail bound meets the tolerance.

    ``tail_bound(n)`` must bound |sum of term(k) for k > n| and decrease with n.
    Terms are requested in increasing order, so stateful term callables are fine.

    Args:
        term: Map from index to series term
        tail_bound: Map from index to an upper bound on the remaining tail
        ctx: Precision context
        start: First index
        max_terms: Iteration cap (defaults to settings.QDILOG_MAX_TERMS)

    Returns:
        SeriesResult with the compensated partial sum

    Raises:
        NonConvergenceError: cap exceeded; carries the partial state
    """
    cap = max_terms if max_terms is not None else settings.QDILOG_MAX_TERMS
    with ctx.workdps():
        target = mpf(10) ** (-ctx.digits)
        acc = _CompensatedAccumulator()
        bound = mpmath.inf
        for count in range(1, cap + 1):
            n = start + count - 1
            acc.add(term(n))
            bound = mpf(tail_bound(n))
            partial = acc.value
            if bound <= target * max(1, abs(partial)):
                return SeriesResult(value=ensure_finite(partial, "series sum"), terms_used=count, tail_bound=bound)
        logger.warning(f"Series did not converge within {cap} terms (tail bound {mpmath.nstr(bound, 5)})")
        raise NonConvergenceError(
            f"Series did not converge within {cap} terms",
            partial_sum=acc.value,
            terms_used=cap,
            tail_bound=bound
        )
