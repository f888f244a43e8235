"""
Special Function Service

Classical special functions the q-dilogarithm analysis rests on: Gamma,
Hurwitz zeta, the periodic zeta function F(theta, s), polylogarithm, the
Clausen pair, polygamma, Bernoulli and Apostol-Bernoulli polynomials, and
the residual of the Lerch functional equation.

Gamma and Hurwitz zeta come from mpmath (argument-shifted Stirling series and
Euler-Maclaurin summation respectively). F(theta, s) is continued to the whole
s-plane through the Lerch functional equation evaluated with those two.
"""

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from qdilog.core.exceptions import DomainError, ParameterError, PoleError
from qdilog.core.hpnum import (
    HPComplex,
    PrecisionContext,
    Scalar,
    SeriesResult,
    ensure_finite,
    sum_series,
    to_hp,
    to_real,
)

logger = logging.getLogger(__name__)


# ================================
# DOMAIN TYPES
# ================================

@dataclass(frozen=True)
class ThetaParam:
    """Angle parameter theta of F(theta, s), strictly inside (0, 1)."""
    theta: mpf

    @classmethod
    def of(cls, theta: Scalar, ctx: PrecisionContext) -> "ThetaParam":
        """
        Validate and wrap theta.

        Values within 10^(-digits) of an integer are rejected: F degenerates
        to the Riemann zeta function there.
        """
        value = to_real(theta, ctx) if not isinstance(theta, mpf) else theta
        with ctx.workdps():
            if not (0 < value < 1) or min(value, 1 - value) < ctx.tolerance:
                raise DomainError(f"theta must lie strictly inside (0, 1), got {mpmath.nstr(value, 10)}")
        return cls(theta=value)

    def lam(self, ctx: PrecisionContext) -> HPComplex:
        """lambda = e^(2 pi i theta)."""
        with ctx.workdps():
            return mpc(mpmath.cospi(2 * self.theta), mpmath.sinpi(2 * self.theta))

    def reflected(self, ctx: PrecisionContext) -> "ThetaParam":
        """The partner 1 - theta."""
        with ctx.workdps():
            return ThetaParam(theta=1 - self.theta)


@dataclass(frozen=True)
class BernoulliTable:
    """Exact Bernoulli numbers B_0..B_M (B_1 = -1/2 convention)."""
    numbers: Tuple[Fraction, ...]

    @property
    def max_index(self) -> int:
        return len(self.numbers) - 1

    @classmethod
    def build(cls, max_index: int) -> "BernoulliTable":
        numbers = []
        for n in range(max_index + 1):
            p, q = mpmath.bernfrac(n)
            numbers.append(Fraction(int(p), int(q)))
        return cls(numbers=tuple(numbers))

    def __getitem__(self, n: int) -> Fraction:
        return self.numbers[n]


_bernoulli_lock = threading.Lock()
_bernoulli_table = BernoulliTable.build(64)


def bernoulli_table(max_index: int) -> BernoulliTable:
    """
    Shared Bernoulli table covering at least ``max_index``.

    The table is replaced (never mutated) when a larger index is requested,
    so readers holding the old table are unaffected.
    """
    global _bernoulli_table
    table = _bernoulli_table
    if table.max_index >= max_index:
        return table
    with _bernoulli_lock:
        if _bernoulli_table.max_index < max_index:
            new_size = max(max_index, 2 * _bernoulli_table.max_index)
            logger.info(f"Extending Bernoulli table to index {new_size}")
            _bernoulli_table = BernoulliTable.build(new_size)
        return _bernoulli_table


# ================================
# HELPERS
# ================================

def _nearest_integer(s: mpc) -> int:
    return int(mpmath.nint(s.real))


def _distance_to_integer(s: mpc, k: int) -> mpf:
    return abs(s - k)


def _pole_guard(ctx: PrecisionContext) -> mpf:
    return ctx.eps(2)


def _is_nonpositive_integer(z: mpc, ctx: PrecisionContext) -> bool:
    with ctx.workdps():
        k = _nearest_integer(z)
        return k <= 0 and _distance_to_integer(z, k) < _pole_guard(ctx)


# ================================
# GAMMA, HURWITZ ZETA, POLYGAMMA
# ================================

def gamma(s: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    Gamma function at working precision.

    Raises:
        PoleError: s is (within 10^(-digits+2) of) a non-positive integer
    """
    s = to_hp(s, ctx)
    with ctx.workdps():
        if _is_nonpositive_integer(s, ctx):
            k = _nearest_integer(s)
            raise PoleError(f"Gamma has a pole at s = {k}", pole=k)
        return ensure_finite(mpc(mp.gamma(s)), "gamma")


def hurwitz_zeta(s: Scalar, z: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    Hurwitz zeta function sum_{k>=0} (z + k)^(-s), continued in s.

    Args:
        s: Order (s != 1)
        z: Shift, not a non-positive integer
        ctx: Precision context

    Returns:
        zeta(s, z) at working precision

    Raises:
        PoleError: s = 1
        DomainError: z a non-positive integer
    """
    s = to_hp(s, ctx)
    z = to_hp(z, ctx)
    with ctx.workdps():
        if abs(s - 1) < _pole_guard(ctx):
            raise PoleError("Hurwitz zeta has a simple pole at s = 1", pole=1)
        if _is_nonpositive_integer(z, ctx):
            raise DomainError(f"Hurwitz zeta shift z = {mpmath.nstr(z, 8)} is a non-positive integer")
        return ensure_finite(mpc(mp.zeta(s, z)), "hurwitz_zeta")


def polygamma(n: int, z: Scalar, ctx: PrecisionContext) -> HPComplex:
    """psi^(n)(z) = (-1)^(n+1) n! zeta(n+1, z) for n >= 1."""
    if n < 1:
        raise ParameterError(f"polygamma order must be >= 1, got {n}")
    z = to_hp(z, ctx)
    if _is_nonpositive_integer(z, ctx):
        raise DomainError(f"polygamma argument z = {mpmath.nstr(z, 8)} is a non-positive integer")
    value = hurwitz_zeta(n + 1, z, ctx)
    with ctx.workdps():
        return (-1) ** (n + 1) * mpmath.factorial(n) * value


# ================================
# BERNOULLI FAMILY
# ================================

def bernoulli_poly(n: int, z: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    B_n(z) = sum_k C(n, k) B_k z^(n-k), from the shared Bernoulli table.

    The binomial sum cancels heavily for large n (B_101(2) = 101 from terms
    near 10^79); the sum is repeated with as many extra digits as it lost.
    """
    if n < 0:
        raise ParameterError(f"Bernoulli index must be >= 0, got {n}")
    z = to_hp(z, ctx)
    table = bernoulli_table(n)
    extra = 0
    for _ in range(4):
        with mpmath.workdps(ctx.working_digits + extra):
            terms = []
            for k in range(n + 1):
                b = table[k]
                if b == 0:
                    continue
                terms.append(math.comb(n, k) * (mpf(b.numerator) / b.denominator) * z ** (n - k))
            total = mpc(mpmath.fsum(terms))
            if total == 0:
                break
            lost = int(mpmath.ceil(mpmath.log10(max(abs(t) for t in terms) / abs(total))))
        if lost <= extra:
            break
        extra = lost + ctx.guard_digits
        logger.debug(f"B_{n}: cancellation cost {lost} digits, retrying with {extra} extra")
    with ctx.workdps():
        return mpc(total)


def apostol_bernoulli_all(n_max: int, x: Scalar, lam: Scalar, ctx: PrecisionContext) -> List[HPComplex]:
    """
    Apostol-Bernoulli polynomials B_0(x, lam)..B_{n_max}(x, lam).

    Coefficients of t e^(xt) / (lam e^t - 1) obtained by truncated power-series
    division; requires lam != 1.
    """
    x = to_hp(x, ctx)
    lam = to_hp(lam, ctx)
    with ctx.workdps():
        d0 = lam - 1
        if abs(d0) < _pole_guard(ctx):
            raise DomainError("Power-series division needs lambda != 1")
        numer = [mpc(0)] + [x ** (k - 1) / mpmath.factorial(k - 1) for k in range(1, n_max + 1)]
        denom = [d0] + [lam / mpmath.factorial(k) for k in range(1, n_max + 1)]
        quotient: List[mpc] = []
        for k in range(n_max + 1):
            acc = numer[k] - mpmath.fsum(denom[j] * quotient[k - j] for j in range(1, k + 1))
            quotient.append(acc / d0)
        return [mpmath.factorial(k) * quotient[k] for k in range(n_max + 1)]


def apostol_bernoulli(n: int, x: Scalar, lam: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    Apostol-Bernoulli polynomial B_n(x, lam).

    For lam = 1 the generating function reduces to the classical one and the
    call is delegated to bernoulli_poly.
    """
    if n < 0:
        raise ParameterError(f"Apostol-Bernoulli index must be >= 0, got {n}")
    lam_hp = to_hp(lam, ctx)
    with ctx.workdps():
        if abs(lam_hp - 1) < _pole_guard(ctx):
            logger.info("apostol_bernoulli called with lambda = 1; delegating to bernoulli_poly")
            return bernoulli_poly(n, x, ctx)
    return apostol_bernoulli_all(n, x, lam_hp, ctx)[n]


# ================================
# PERIODIC ZETA AND POLYLOGARITHM
# ================================

def _lerch_formula(theta: ThetaParam, s: mpc, ctx: PrecisionContext) -> mpc:
    """Right-hand side of the Lerch functional equation at s (Gamma(1-s) must be finite)."""
    with ctx.workdps():
        one_minus_s = 1 - s
    zeta_theta = hurwitz_zeta(one_minus_s, theta.theta, ctx)
    zeta_reflected = hurwitz_zeta(one_minus_s, theta.reflected(ctx).theta, ctx)
    g = gamma(one_minus_s, ctx)
    with ctx.workdps():
        phase = mpmath.expjpi(one_minus_s / 2)
        brace = phase * zeta_theta + zeta_reflected / phase
        return g * brace / (2 * mp.pi) ** one_minus_s


def _lerch_continuation(theta: ThetaParam, s: mpc, ctx: PrecisionContext) -> mpc:
    """
    Lerch functional equation with the removable singularities at s = 0, 1, 2, ...

    Gamma(1-s) has poles at positive integers that the brace cancels, and at
    s = 0 the two Hurwitz poles cancel each other. Near
    such a point the working precision is raised by the digits the
    cancellation costs; within eps of it the value is the mean of the two
    symmetric evaluations at s +- 2 eps (error O(eps^2)).
    """
    with ctx.workdps():
        k = _nearest_integer(s)
        dist = _distance_to_integer(s, k)
        if k < 0 or dist >= mpf("0.1"):
            return _lerch_formula(theta, s, ctx)
        eps = mpf(10) ** (-(ctx.working_digits // 2 + 2))
        if dist >= eps:
            extra = int(mpmath.ceil(-mpmath.log10(dist))) + 2
            logger.debug(f"Raising precision by {extra} digits near s = {k}")
            value = _lerch_formula(theta, s, ctx.extended(extra))
            return +value
        extra = ctx.working_digits // 2 + 8
        logger.debug(f"Averaging across the removable singularity at s = {k}")
        wide = ctx.extended(extra)
        upper = _lerch_formula(theta, s + 2 * eps, wide)
        lower = _lerch_formula(theta, s - 2 * eps, wide)
        with wide.workdps():
            mean = (upper + lower) / 2
        return +mean


def periodic_zeta(theta: ThetaParam, s: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    Periodic zeta function F(theta, s) = sum_{n>=1} e^(2 pi i n theta) / n^s.

    Entire in s for 0 < theta < 1; evaluated through the Lerch functional
    equation and two Hurwitz zeta values.
    """
    s = to_hp(s, ctx)
    value = _lerch_continuation(theta, s, ctx)
    return ensure_finite(value, "periodic_zeta")


def periodic_zeta_series(theta: ThetaParam, s: Scalar, ctx: PrecisionContext) -> SeriesResult:
    """
    Direct Dirichlet series for Re s > 1 with the integral tail bound
    |tail after n| <= n^(1-sigma) / (sigma - 1).

    Only practical when Re s is large compared with the digit count.
    """
    s = to_hp(s, ctx)
    with ctx.workdps():
        sigma = s.real
        if sigma <= 1:
            raise DomainError("Dirichlet series of F(theta, s) needs Re s > 1")
        lam = theta.lam(ctx)

        def term(n: int) -> mpc:
            return lam ** n / mpf(n) ** s

        def tail(n: int) -> mpf:
            return mpf(n) ** (1 - sigma) / (sigma - 1)

        return sum_series(term, tail, ctx)


def periodic_zeta_integral(theta: ThetaParam, s: Scalar, ctx: PrecisionContext) -> HPComplex:
    """F(theta, s) = lam / Gamma(s) * int_0^inf t^(s-1) / (e^t - lam) dt, Re s > 1."""
    s = to_hp(s, ctx)
    with ctx.workdps():
        if s.real <= 1:
            raise DomainError("Integral representation of F(theta, s) is used for Re s > 1")
        lam = theta.lam(ctx)
        integral = mp.quad(lambda t: t ** (s - 1) / (mp.exp(t) - lam), [0, 1, mp.inf])
        return ensure_finite(lam * integral / mp.gamma(s), "periodic_zeta_integral")


def _series_terms_estimate(sigma: mpf, ctx: PrecisionContext) -> mpf:
    # smallest n with n^(1-sigma)/(sigma-1) <= 10^-digits
    return mpmath.power(mpf(10) ** ctx.digits / (sigma - 1), 1 / (sigma - 1))


def polylog_series(s: Scalar, z: Scalar, ctx: PrecisionContext) -> SeriesResult:
    """Li_s(z) = sum z^n / n^s inside the unit disk."""
    s = to_hp(s, ctx)
    z = to_hp(z, ctx)
    with ctx.workdps():
        r = abs(z)
        if r >= 1:
            raise DomainError(f"Polylogarithm series needs |z| < 1, got |z| = {mpmath.nstr(r, 8)}")
        sigma = s.real

        def term(n: int) -> mpc:
            return z ** n / mpf(n) ** s

        def tail(n: int) -> mpf:
            ratio = r * max(mpf(1), (1 + mpf(1) / (n + 1)) ** (-sigma))
            if ratio >= 1:
                return mp.inf
            return r ** (n + 1) * mpf(n + 1) ** (-sigma) / (1 - ratio)

        if r == 0:
            return SeriesResult(value=mpc(0), terms_used=0, tail_bound=mpf(0))
        return sum_series(term, tail, ctx)


def polylog(s: Scalar, z: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    Polylogarithm Li_s(z).

    |z| < 1 uses the series; |z| = 1 with Re s > 1 delegates to the
    periodic zeta function (or to zeta(s) at z = 1).

    Raises:
        DomainError: any other z
    """
    s = to_hp(s, ctx)
    z = to_hp(z, ctx)
    with ctx.workdps():
        r = abs(z)
        on_circle = abs(r - 1) < ctx.tolerance
    if r < 1 and not on_circle:
        return polylog_series(s, z, ctx).value
    if on_circle and s.real > 1:
        with ctx.workdps():
            theta = mpmath.arg(z) / (2 * mp.pi)
            if theta < 0:
                theta += 1
            at_one = min(theta, 1 - theta) < ctx.tolerance
        if at_one:
            return hurwitz_zeta(s, 1, ctx)
        return periodic_zeta(ThetaParam(theta=theta), s, ctx)
    raise DomainError(
        f"Polylogarithm is evaluated for |z| < 1 or on |z| = 1 with Re s > 1; got |z| = {mpmath.nstr(r, 8)}"
    )


def clausen_pair(s: Scalar, theta_angle: Scalar, ctx: PrecisionContext) -> Tuple[HPComplex, HPComplex]:
    """
    Clausen pair (Ci_s(angle), Si_s(angle)) with Li_s(e^(i angle)) = Ci + i Si.

    Ci/Si are the even/odd combinations of Li_s(e^(+-i angle)), which are the
    real and imaginary parts of Li_s(e^(i angle)) for real s.
    """
    s = to_hp(s, ctx)
    angle = to_real(theta_angle, ctx) if not isinstance(theta_angle, mpf) else theta_angle
    with ctx.workdps():
        turns = mpmath.frac(angle / (2 * mp.pi))
        at_one = min(turns, 1 - turns) < ctx.tolerance
    if at_one:
        if s.real <= 1:
            raise DomainError("Clausen pair at angle 0 needs Re s > 1")
        value = hurwitz_zeta(s, 1, ctx)
        return value, mpc(0)
    if s.real <= 1:
        raise DomainError("Clausen pair on the unit circle needs Re s > 1")
    forward_theta = ThetaParam(theta=turns)
    forward = periodic_zeta(forward_theta, s, ctx)
    backward = periodic_zeta(forward_theta.reflected(ctx), s, ctx)
    with ctx.workdps():
        ci = (forward + backward) / 2
        si = (forward - backward) / mpc(0, 2)
    return ci, si


# ================================
# FUNCTIONAL-EQUATION CHECKS
# ================================

def lerch_residual(theta: ThetaParam, s: Scalar, ctx: PrecisionContext) -> HPComplex:
    """
    LHS - RHS of the Lerch functional equation for Re s > 1.

    The left side comes from the Dirichlet series when it fits the term cap,
    otherwise from the integral representation; the right side is the
    Hurwitz-zeta form.
    """
    s = to_hp(s, ctx)
    with ctx.workdps():
        if s.real <= 1:
            raise DomainError("Lerch residual needs Re s > 1 so both sides are independent")
        affordable = _series_terms_estimate(s.real, ctx) < 10 ** 5
    if affordable:
        lhs = periodic_zeta_series(theta, s, ctx).value
    else:
        lhs = periodic_zeta_integral(theta, s, ctx)
    rhs = _lerch_continuation(theta, s, ctx)
    with ctx.workdps():
        return lhs - rhs


def lerch_decomposition_residuals(theta: ThetaParam, s: Scalar, ctx: PrecisionContext) -> Tuple[HPComplex, HPComplex]:
    """
    Residuals of the even and odd decompositions

        Gamma(s){F(theta,s+1) + F(1-theta,s+1)} = -(2 pi)^(s+1) / (2 s sin(pi s/2)) {zeta(-s,theta) + zeta(-s,1-theta)}
        Gamma(s){F(theta,s+1) - F(1-theta,s+1)} = i (2 pi)^(s+1) / (2 s cos(pi s/2)) {zeta(-s,theta) - zeta(-s,1-theta)}
    """
    s = to_hp(s, ctx)
    reflected = theta.reflected(ctx)
    with ctx.workdps():
        shifted = s + 1
        negated = -s
    f_theta = periodic_zeta(theta, shifted, ctx)
    f_reflected = periodic_zeta(reflected, shifted, ctx)
    z_theta = hurwitz_zeta(negated, theta.theta, ctx)
    z_reflected = hurwitz_zeta(negated, reflected.theta, ctx)
    g = gamma(s, ctx)
    with ctx.workdps():
        scale = (2 * mp.pi) ** (s + 1) / (2 * s)
        even = g * (f_theta + f_reflected) + scale / mpmath.sinpi(s / 2) * (z_theta + z_reflected)
        odd = g * (f_theta - f_reflected) - mpc(0, 1) * scale / mpmath.cospi(s / 2) * (z_theta - z_reflected)
    return even, odd


PARITY_VARIANTS = ("corrected", "printed", "direct")


def hurwitz_parity_sum(
    n: int,
    theta: ThetaParam,
    sign: int,
    ctx: PrecisionContext,
    variant: str = "corrected"
) -> HPComplex:
    """
    zeta(-n, theta) + sign * zeta(-n, 1 - theta) for n >= 0, sign = +-1.

    Variants:
        corrected: -(1 + sign (-1)^(n+1)) B_{n+1}(theta) / (n+1), from B_m(1-x) = (-1)^m B_m(x)
        printed:   ((-1)^(n+1) - 1) B_{n+1}(theta) / (n+1) for sign = +1,
                   ((-1)^n - 1) B_{n+1}(theta) / (n+1) for sign = -1
        direct:    the two Hurwitz zeta values
    """
    if sign not in (1, -1):
        raise ParameterError(f"Parity sign must be +1 or -1, got {sign}")
    if variant not in PARITY_VARIANTS:
        raise ParameterError(f"Unknown parity variant {variant!r}")
    if variant == "direct":
        first = hurwitz_zeta(-n, theta.theta, ctx)
        second = hurwitz_zeta(-n, theta.reflected(ctx).theta, ctx)
        with ctx.workdps():
            return first + sign * second
    bern = bernoulli_poly(n + 1, theta.theta, ctx)
    if variant == "corrected":
        factor = -(1 + sign * (-1) ** (n + 1))
    elif sign == 1:
        factor = (-1) ** (n + 1) - 1
    else:
        factor = (-1) ** n - 1
    with ctx.workdps():
        return factor * bern / (n + 1)
