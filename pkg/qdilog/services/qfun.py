"""
q-Series Service

The q-series family around the q-dilogarithm Li_2(z; q) = sum z^n / (n (1 - q^n)):
q-Pochhammer symbols, the q-logarithm and its continuation outside the unit
disk, q-polylogarithms, the Euler series of the Kirillov identity, Jackson
integration, the q-Clausen pair and the two limit probes q -> 1, q -> 0.

All tails are bounded by geometric comparison using 1 - q^n >= 1 - q.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from qdilog.core.exceptions import DomainError, ParameterError, PoleError
from qdilog.core.hpnum import (
    HPComplex,
    HPReal,
    PrecisionContext,
    Scalar,
    SeriesResult,
    sum_series,
    to_hp,
    to_real,
)
from qdilog.services.specfun import ThetaParam

logger = logging.getLogger(__name__)


# ================================
# DOMAIN TYPES
# ================================

@dataclass(frozen=True)
class QParam:
    """Deformation parameter 0 < q < 1."""
    q: mpf

    @classmethod
    def of(cls, q: Scalar, ctx: PrecisionContext) -> "QParam":
        value = q if isinstance(q, mpf) else to_real(q, ctx)
        if not (0 < value < 1):
            raise DomainError(f"q must lie strictly inside (0, 1), got {mpmath.nstr(value, 10)}")
        return cls(q=value)


@dataclass(frozen=True)
class ExponentialParam:
    """
    Exponential parametrisation q = e^(-x), omega = e^(-zparam x + 2 pi i theta).

    q is always derived from x so (q, x) pairs can never disagree.
    """
    x: mpf
    zparam: mpc
    theta: ThetaParam

    @classmethod
    def of(cls, x: Scalar, zparam: Scalar, theta: Scalar, ctx: PrecisionContext) -> "ExponentialParam":
        x_value = x if isinstance(x, mpf) else to_real(x, ctx)
        if x_value <= 0:
            raise DomainError(f"x must be positive, got {mpmath.nstr(x_value, 10)}")
        z_value = to_hp(zparam, ctx)
        if z_value.real <= 1:
            raise DomainError(f"Re zparam must exceed 1, got {mpmath.nstr(z_value.real, 10)}")
        theta_value = theta if isinstance(theta, ThetaParam) else ThetaParam.of(theta, ctx)
        return cls(x=x_value, zparam=z_value, theta=theta_value)

    def q(self, ctx: PrecisionContext) -> QParam:
        with ctx.workdps():
            return QParam(q=mp.exp(-self.x))

    def omega(self, ctx: PrecisionContext) -> HPComplex:
        with ctx.workdps():
            return mp.exp(-self.zparam * self.x + 2j * mp.pi * self.theta.theta)

    def decay(self, ctx: PrecisionContext) -> HPReal:
        """|omega| = e^(-Re(zparam) x)."""
        with ctx.workdps():
            return mp.exp(-self.zparam.real * self.x)


# ================================
# HELPERS
# ================================

def _require_unit_disk(z: mpc, what: str) -> mpf:
    r = abs(z)
    if r >= 1:
        raise DomainError(f"{what} needs |z| < 1, got |z| = {mpmath.nstr(r, 10)}")
    return r


def _geometric_tail(r: mpf, one_minus_q: mpf) -> Callable[[int], mpf]:
    # |z|^(K+1) / ((1 - q)(1 - |z|))
    def tail(n: int) -> mpf:
        return r ** (n + 1) / (one_minus_q * (1 - r))
    return tail


# ================================
# OPERATIONS
# ================================

def q_pochhammer(q: QParam, n: int, ctx: PrecisionContext) -> HPReal:
    """(q; q)_n = prod_{k=1}^{n} (1 - q^k), with (q; q)_0 = 1."""
    if n < 0:
        raise ParameterError(f"q-Pochhammer length must be >= 0, got {n}")
    with ctx.workdps():
        product = mpf(1)
        power = mpf(1)
        for _ in range(n):
            power *= q.q
            product *= 1 - power
        return product


def q_log_series(z: Scalar, q: QParam, ctx: PrecisionContext) -> SeriesResult:
    """sum_{n>=1} z^n / (1 - q^n) inside the unit disk."""
    z = to_hp(z, ctx)
    with ctx.workdps():
        r = _require_unit_disk(z, "q-logarithm series")
        if r == 0:
            return SeriesResult(value=mpc(0), terms_used=0, tail_bound=mpf(0))
        return sum_series(lambda n: z ** n / (1 - q.q ** n), _geometric_tail(r, 1 - q.q), ctx)


def q_log_continuation(z: Scalar, q: QParam, ctx: PrecisionContext) -> SeriesResult:
    """
    Continued q-logarithm z * sum_{m>=0} q^m / (1 - z q^m).

    Valid for every z away from the poles q^(-m); agrees with the power
    series on |z| < 1.
    """
    z = to_hp(z, ctx)
    _check_q_log_poles(z, q, ctx)
    with ctx.workdps():
        r = abs(z)

        def term(m: int) -> mpc:
            qm = q.q ** m
            return z * qm / (1 - z * qm)

        def tail(m: int) -> mpf:
            # |1 - z q^k| >= 1/2 once |z| q^k <= 1/2
            if r * q.q ** (m + 1) > mpf(1) / 2:
                return mp.inf
            return 2 * r * q.q ** (m + 1) / (1 - q.q)

        return sum_series(term, tail, ctx, start=0)


def _check_q_log_poles(z: mpc, q: QParam, ctx: PrecisionContext) -> None:
    with ctx.workdps():
        if abs(z) < 1 - mpf(1) / 4:
            return
        n = int(mpmath.nint(-mpmath.log(abs(z)) / mpmath.log(q.q)))
        if n < 0:
            return
        if abs(z * q.q ** n - 1) < ctx.eps(2):
            raise PoleError(f"q-logarithm has a pole at z = q^(-{n})", pole=n)


def q_log(z: Scalar, q: QParam, ctx: PrecisionContext) -> HPComplex:
    """
    Koornwinder q-logarithm.

    Power series for |z| < 1, the continuation elsewhere.

    Raises:
        PoleError: z within 10^(-digits+2) of some q^(-n), n >= 0
    """
    z = to_hp(z, ctx)
    _check_q_log_poles(z, q, ctx)
    if abs(z) < 1:
        return q_log_series(z, q, ctx).value
    return q_log_continuation(z, q, ctx).value


def q_polylog_series(n: int, z: Scalar, q: QParam, ctx: PrecisionContext) -> SeriesResult:
    """
    Li_n(z, q) = sum_{k>=1} z^k / (k^(n-1) (1 - q^k)) with its tail bound.

    The exponent n - 1 makes Li_1 the q-logarithm and Li_2 the q-dilogarithm,
    with Li_n(z, q) = int_0^z Li_(n-1)(t, q) / t dt.
    """
    if n < 1:
        raise ParameterError(f"q-polylogarithm order must be >= 1, got {n}")
    z = to_hp(z, ctx)
    with ctx.workdps():
        r = _require_unit_disk(z, "q-polylogarithm")
        if r == 0:
            return SeriesResult(value=mpc(0), terms_used=0, tail_bound=mpf(0))
        one_minus_q = 1 - q.q

        def term(k: int) -> mpc:
            return z ** k / (mpf(k) ** (n - 1) * (1 - q.q ** k))

        def tail(k: int) -> mpf:
            return r ** (k + 1) / (mpf(k + 1) ** (n - 1) * one_minus_q * (1 - r))

        return sum_series(term, tail, ctx)


def q_polylog(n: int, z: Scalar, q: QParam, ctx: PrecisionContext) -> HPComplex:
    """q-polylogarithm; n = 2 is the q-dilogarithm, n = 1 the q-logarithm."""
    return q_polylog_series(n, z, q, ctx).value


def euler_series_sum(z: Scalar, q: QParam, ctx: PrecisionContext) -> SeriesResult:
    """
    sum_{n>=0} z^n / (q; q)_n.

    The tail after N is bounded by |z|^(N+1) / ((q; q)_inf (1 - |z|)) since
    (q; q)_n decreases to the Euler function (q; q)_inf.
    """
    z = to_hp(z, ctx)
    with ctx.workdps():
        r = _require_unit_disk(z, "Euler series")
        floor = mp.qp(q.q)
        state = {"poch": mpf(1), "power": mpf(1), "zn": mpc(1)}

        def term(n: int) -> mpc:
            if n > 0:
                state["power"] *= q.q
                state["poch"] *= 1 - state["power"]
                state["zn"] *= z
            return state["zn"] / state["poch"]

        def tail(n: int) -> mpf:
            return r ** (n + 1) / (floor * (1 - r))

        return sum_series(term, tail, ctx, start=0)


def euler_series(z: Scalar, q: QParam, ctx: PrecisionContext) -> HPComplex:
    """Left side of the Kirillov identity sum z^n/(q;q)_n = exp(Li_2(z, q))."""
    return euler_series_sum(z, q, ctx).value


def jackson_integral(
    f: Callable[[HPComplex], Scalar],
    z: Scalar,
    q: QParam,
    ctx: PrecisionContext,
    f_bound: Optional[Scalar] = None
) -> HPComplex:
    """
    Jackson q-integral (1 - q) z sum_{n>=0} f(z q^n) q^n.

    Args:
        f: Integrand, evaluable at z q^n
        z: Upper limit
        q: Deformation parameter
        ctx: Precision context
        f_bound: Bound on |f| over the nodes z q^n. Pass it whenever the
            integrand is not known to be bounded near 0. Without it the tail
            uses twice the largest |f| seen so far, which is only a guess: it
            holds for integrands continuous at 0 but is not a guaranteed bound

    Returns:
        Value of the q-integral
    """
    z = to_hp(z, ctx)
    with ctx.workdps():
        if z == 0:
            return mpc(0)
        scale = (1 - q.q) * z
        seen = {"max": mpf(0)}
        fixed_bound = None if f_bound is None else abs(to_hp(f_bound, ctx))

        def term(n: int) -> mpc:
            qn = q.q ** n
            value = mpc(f(z * qn))
            seen["max"] = max(seen["max"], abs(value))
            return scale * value * qn

        def tail(n: int) -> mpf:
            bound = fixed_bound if fixed_bound is not None else 2 * seen["max"]
            return abs(z) * bound * q.q ** (n + 1)

        return sum_series(term, tail, ctx, start=0).value


def q_clausen_pair(p: ExponentialParam, ctx: PrecisionContext) -> Tuple[HPComplex, HPComplex]:
    """
    q-Clausen pair (Ci_2(omega, q), Si_2(omega, q)) with q = e^(-x):

        Ci_2 = sum e^(-n zparam x) cos(2 pi n theta) / (n (1 - q^n))
        Si_2 = sum e^(-n zparam x) sin(2 pi n theta) / (n (1 - q^n))

    so Li_2(omega, q) = Ci_2 + i Si_2.
    """
    q = p.q(ctx)
    with ctx.workdps():
        base = mp.exp(-p.zparam * p.x)
        r = p.decay(ctx)
        one_minus_q = 1 - q.q
        angle = 2 * p.theta.theta

        def tail(n: int) -> mpf:
            return r ** (n + 1) / ((n + 1) * one_minus_q * (1 - r))

        def ci_term(n: int) -> mpc:
            return base ** n * mpmath.cospi(n * angle) / (n * (1 - q.q ** n))

        def si_term(n: int) -> mpc:
            return base ** n * mpmath.sinpi(n * angle) / (n * (1 - q.q ** n))

        ci = sum_series(ci_term, tail, ctx).value
        si = sum_series(si_term, tail, ctx).value
        return ci, si


def li2q(p: ExponentialParam, ctx: PrecisionContext) -> HPComplex:
    """Li_2(omega, e^(-x)), the series side of every Barnes comparison."""
    return q_polylog(2, p.omega(ctx), p.q(ctx), ctx)


def limit_probe_q1(
    z: Scalar,
    qs: List[QParam],
    ctx: PrecisionContext,
    scaled_argument: bool = False
) -> List[HPComplex]:
    """
    (1 - q) Li_2(z, q) for each q; tends to Li_2(z) as q -> 1.

    With ``scaled_argument`` the argument is (1 - q) z instead. That sequence
    behaves like Li_2((1 - q) z) and tends to 0; it is kept so the limits
    suite can show it does not approach Li_2(z).
    """
    z = to_hp(z, ctx)
    values = []
    for q in qs:
        with ctx.workdps():
            argument = (1 - q.q) * z if scaled_argument else z
        value = q_polylog(2, argument, q, ctx)
        with ctx.workdps():
            values.append((1 - q.q) * value)
    return values


def limit_probe_q0(z: Scalar, q: QParam, ctx: PrecisionContext) -> HPComplex:
    """(1 - q) Li_2(z, q); tends to -log(1 - z) as q -> 0."""
    value = q_polylog(2, z, q, ctx)
    with ctx.workdps():
        return (1 - q.q) * value
