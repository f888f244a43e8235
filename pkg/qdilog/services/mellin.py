"""
Mellin-Barnes Service

Numerical machinery behind the Barnes representations of the q-dilogarithm:

    Li_2(omega, e^(-x)) = (1/2 pi i) int_(c) zeta(s, z) F(theta, s+1) Gamma(s) x^(-s) ds,   c > 1

and of its Clausen parts Ci_2 / Si_2 (1 < c < 2). Provides the integrands,
a uniform-step trapezoid rule on vertical lines, a micro-contour residue
extractor used as the coefficient oracle of the asymptotic expansions, and
the contour shifts that turn the integrals into residue sums plus remainders.
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from qdilog.core.config import settings
from qdilog.core.exceptions import (
    DivergenceError,
    HigherOrderPoleError,
    NonConvergenceError,
    ParameterError,
    PoleError,
)
from qdilog.core.hpnum import HPComplex, HPReal, PrecisionContext, Scalar, ensure_finite, to_hp, to_real
from qdilog.services.qfun import ExponentialParam
from qdilog.services.specfun import ThetaParam, gamma, hurwitz_zeta, periodic_zeta

logger = logging.getLogger(__name__)

Integrand = Callable[[HPComplex], HPComplex]

QUIET_NODES = 10
HEIGHT_EXTENSION = 5
MAX_LEVELS = 12


# ================================
# DOMAIN TYPES
# ================================

@dataclass(frozen=True)
class ContourSpec:
    """Vertical line Re s = c, truncated to |Im s| <= height, sampled every ``step``."""
    c: mpf
    height: mpf
    step: mpf

    def __post_init__(self):
        if self.height <= 0 or self.step <= 0:
            raise ParameterError("Contour height and step must be positive")
        if self.node_count > settings.MAX_QUADRATURE_NODES:
            raise ParameterError(
                f"Contour needs {self.node_count} nodes, above the cap of {settings.MAX_QUADRATURE_NODES}"
            )

    @classmethod
    def default(cls, c: Scalar, ctx: PrecisionContext) -> "ContourSpec":
        """Starting contour: height = 0.9 digits + 10, step = 1/4."""
        with ctx.workdps():
            abscissa = c if isinstance(c, mpf) else to_real(c, ctx)
            return cls(c=abscissa, height=mpf(ctx.digits) * mpf("0.9") + 10, step=mpf(1) / 4)

    @property
    def node_count(self) -> int:
        return 2 * int(self.height / self.step) + 1

    def pole_distance(self, pole_bound: int) -> mpf:
        """Distance from the line to the nearest pole, taken to be every integer <= ``pole_bound``."""
        if self.c > pole_bound:
            return self.c - pole_bound
        return abs(self.c - mpmath.nint(self.c))

    def cleared(self, pole_bound: int, ctx: PrecisionContext) -> "ContourSpec":
        """
        The same line with step h = min(step, distance to the nearest pole).

        Raises:
            ParameterError: the line passes within the pole guard 10^(-digits+2)
        """
        with ctx.workdps():
            distance = self.pole_distance(pole_bound)
            if distance < ctx.eps(2):
                raise ParameterError(f"Abscissa c = {mpmath.nstr(self.c, 10)} passes through a pole")
            if distance >= self.step:
                return self
            logger.debug(f"Contour at c = {mpmath.nstr(self.c, 10)}: step reduced to {mpmath.nstr(distance, 6)}")
            return replace(self, step=distance)


@dataclass(frozen=True)
class ResidueTerm:
    """Residue extracted over a circle of the given radius."""
    pole: HPComplex
    value: HPComplex
    radius: HPReal

    def __post_init__(self):
        if not (0 < self.radius < mpf(1) / 2):
            raise ParameterError("Residue radius must lie in (0, 1/2)")


@dataclass(frozen=True)
class QuadratureResult:
    """Vertical-line integral with its self-consistency estimate."""
    value: HPComplex
    nodes_used: int
    estimate: HPReal
    spec: ContourSpec


@dataclass(frozen=True)
class ShiftedContour:
    """Residues collected by a contour shift plus the remainder integral."""
    residues: List[ResidueTerm]
    remainder: QuadratureResult
    residue_sum: HPComplex
    value: HPComplex

    @classmethod
    def assemble(
        cls,
        residues: List[ResidueTerm],
        remainder: QuadratureResult,
        sign: int,
        ctx: PrecisionContext
    ) -> "ShiftedContour":
        with ctx.workdps():
            residue_sum = sign * mpmath.fsum(term.value for term in residues)
            return cls(
                residues=residues,
                remainder=remainder,
                residue_sum=residue_sum,
                value=residue_sum + remainder.value
            )


# ================================
# INTEGRANDS
# ================================

def _guard_poles(s: mpc, top: int, ctx: PrecisionContext) -> None:
    with ctx.workdps():
        k = int(mpmath.nint(s.real))
        near = k <= top and abs(s - k) < ctx.eps(2)
    if near:
        raise PoleError(f"Integrand has a pole at s = {k}", pole=k)


def integrand_g(s: Scalar, zparam: Scalar, theta: ThetaParam, ctx: PrecisionContext) -> HPComplex:
    """
    g(s) = zeta(s, z) F(theta, s+1) Gamma(s).

    Raises:
        PoleError: s within 10^(-digits+2) of 1, 0, -1, ...
    """
    s = to_hp(s, ctx)
    _guard_poles(s, 1, ctx)
    zeta = hurwitz_zeta(s, zparam, ctx)
    with ctx.workdps():
        shifted = s + 1
    periodic = periodic_zeta(theta, shifted, ctx)
    g = gamma(s, ctx)
    with ctx.workdps():
        return zeta * periodic * g


def _hurwitz_brace(s: mpc, theta: ThetaParam, sign: int, ctx: PrecisionContext) -> mpc:
    with ctx.workdps():
        negated = -s
    first = hurwitz_zeta(negated, theta.theta, ctx)
    second = hurwitz_zeta(negated, theta.reflected(ctx).theta, ctx)
    with ctx.workdps():
        return first + sign * second


def ci_integrand(s: Scalar, zparam: Scalar, theta: ThetaParam, ctx: PrecisionContext) -> HPComplex:
    """-(2 pi)^(s+1) zeta(s, z) / (4 s sin(pi s / 2)) {zeta(-s, theta) + zeta(-s, 1 - theta)}."""
    s = to_hp(s, ctx)
    _guard_poles(s, 1, ctx)
    zeta = hurwitz_zeta(s, zparam, ctx)
    brace = _hurwitz_brace(s, theta, 1, ctx)
    with ctx.workdps():
        return -(2 * mp.pi) ** (s + 1) * zeta * brace / (4 * s * mpmath.sinpi(s / 2))


def si_integrand(s: Scalar, zparam: Scalar, theta: ThetaParam, ctx: PrecisionContext) -> HPComplex:
    """(2 pi)^(s+1) zeta(s, z) / (4 s cos(pi s / 2)) {zeta(-s, theta) - zeta(-s, 1 - theta)}."""
    s = to_hp(s, ctx)
    _guard_poles(s, 1, ctx)
    zeta = hurwitz_zeta(s, zparam, ctx)
    brace = _hurwitz_brace(s, theta, -1, ctx)
    with ctx.workdps():
        return (2 * mp.pi) ** (s + 1) * zeta * brace / (4 * s * mpmath.cospi(s / 2))


# ================================
# QUADRATURE
# ================================

class _LineSampler:
    """Caches f(c + it) x^(-(c + it)) by the exact node t."""

    def __init__(self, f: Integrand, c: mpf, x: mpf):
        self.f = f
        self.c = c
        self.x = x
        self.samples: Dict[mpf, mpc] = {}

    def __call__(self, t: mpf) -> mpc:
        value = self.samples.get(t)
        if value is None:
            s = mpc(self.c, t)
            value = ensure_finite(mpc(self.f(s)) * mp.power(self.x, -s), "quadrature sample")
            self.samples[t] = value
        return value


def _trapezoid_level(
    sample: _LineSampler,
    step: mpf,
    height: mpf,
    cutoff: mpf
) -> Tuple[mpc, mpf, mpf]:
    """
    One trapezoid sum with step ``step``.

    Each half-line is walked until QUIET_NODES consecutive samples fall
    below the cutoff; reaching the height first extends it.

    Returns:
        (sum of samples times step, possibly extended height, last-node magnitude)
    """
    values = [sample(mpf(0))]
    tail = mpf(0)
    window = max(QUIET_NODES, int(HEIGHT_EXTENSION / step))
    for sign in (1, -1):
        magnitudes: List[mpf] = []
        quiet = 0
        k = 1
        while quiet < QUIET_NODES:
            t = sign * k * step
            if abs(t) > height:
                if len(magnitudes) >= 2 * window and max(magnitudes[-window:]) >= max(
                    magnitudes[-2 * window:-window]
                ) and max(magnitudes[-window:]) >= cutoff:
                    raise DivergenceError(
                        "Integrand samples do not decay along the contour",
                        partial_sum=mpmath.fsum(values) * step / (2 * mp.pi),
                        terms_used=len(sample.samples),
                        tail_bound=max(magnitudes[-window:])
                    )
                height += HEIGHT_EXTENSION
                if 2 * int(height / step) + 1 > settings.MAX_QUADRATURE_NODES:
                    raise NonConvergenceError(
                        f"Contour height {mpmath.nstr(height, 6)} exceeds the node cap",
                        partial_sum=mpmath.fsum(values) * step / (2 * mp.pi),
                        terms_used=len(sample.samples)
                    )
                logger.debug(f"Extending contour height to {mpmath.nstr(height, 6)}")
            value = sample(t)
            values.append(value)
            magnitude = abs(value)
            magnitudes.append(magnitude)
            quiet = quiet + 1 if magnitude < cutoff else 0
            k += 1
        tail = max(tail, magnitudes[-1])
    return mpmath.fsum(values) * step, height, tail * step


def vertical_line_integral(
    f: Integrand,
    spec: ContourSpec,
    x: Scalar,
    ctx: PrecisionContext,
    tolerance: Optional[Scalar] = None
) -> QuadratureResult:
    """
    (1/2 pi i) int_(c - i inf)^(c + i inf) f(s) x^(-s) ds by the trapezoid rule.

    The step is halved (reusing every cached sample) until successive levels
    differ by delta with delta^2 / max(1, |I|) <= target max(1, |I|);
    the trapezoid error squares with each halving for analytic integrands.
    Each half-line is cut once samples drop below target 10^-5, so a looser
    target shortens the line (T) as well as stopping the halving (h) earlier.

    Args:
        f: Integrand without the x^(-s) factor
        spec: Starting contour
        x: Positive real base of x^(-s)
        ctx: Precision context
        tolerance: Target error relative to max(1, |I|); defaults to 10^(-digits)

    Returns:
        QuadratureResult with estimate max(delta, last-node contribution)

    Raises:
        DivergenceError: samples do not decay
        NonConvergenceError: node cap reached before the levels settle
    """
    x_value = x if isinstance(x, mpf) else to_real(x, ctx)
    if x_value <= 0:
        raise ParameterError("Mellin inversion needs x > 0")
    with ctx.workdps():
        sample = _LineSampler(f, spec.c, x_value)
        target = ctx.tolerance if tolerance is None else to_real(tolerance, ctx)
        if target <= 0:
            raise ParameterError("Quadrature tolerance must be positive")
        target = max(target, ctx.tolerance)
        cutoff = target * mpf(10) ** -5
        two_pi = 2 * mp.pi
        step = spec.step
        height = spec.height
        previous = None
        for level in range(MAX_LEVELS):
            total, height, tail = _trapezoid_level(sample, step, height, cutoff)
            value = total / two_pi
            if previous is not None:
                delta = abs(value - previous)
                scale = max(mpf(1), abs(value))
                logger.debug(f"Level {level}: step {mpmath.nstr(step, 5)}, change {mpmath.nstr(delta, 5)}")
                if delta ** 2 / scale <= target * scale:
                    logger.info(
                        f"Vertical-line integral at c = {mpmath.nstr(spec.c, 6)} settled with "
                        f"{len(sample.samples)} nodes"
                    )
                    return QuadratureResult(
                        value=value,
                        nodes_used=len(sample.samples),
                        estimate=max(delta, tail / two_pi),
                        spec=replace(spec, height=height, step=step)
                    )
            previous = value
            step = step / 2
            if 2 * int(height / step) + 1 > settings.MAX_QUADRATURE_NODES:
                break
        raise NonConvergenceError(
            "Trapezoid levels did not settle within the node cap",
            partial_sum=previous,
            terms_used=len(sample.samples)
        )


# ================================
# RESIDUES
# ================================

def _circle_mean(f: Integrand, pole: mpc, radius: mpf, nodes: int, offset: int = 0, stride: int = 1) -> mpc:
    terms = []
    for j in range(offset, nodes, stride):
        rotation = mpmath.expjpi(mpf(2 * j) / nodes)
        shift = radius * rotation
        terms.append(mpc(f(pole + shift)) * shift)
    return mpmath.fsum(terms)


def residue_at(
    f: Integrand,
    pole: Scalar,
    ctx: PrecisionContext,
    radius: Optional[Scalar] = None,
    nodes: Optional[int] = None
) -> ResidueTerm:
    """
    Residue of f at ``pole`` as (1/2 pi i) of the integral over a small circle.

    The trapezoid rule on the circle is spectrally accurate for integrands
    analytic on a neighbouring annulus. The value is checked against the
    doubled node count and against half the radius.

    Args:
        f: Integrand
        pole: Centre of the circle
        ctx: Precision context
        radius: Circle radius (default settings.RESIDUE_RADIUS)
        nodes: Quadrature nodes (default max(64, 4 digits))

    Raises:
        HigherOrderPoleError: the value moves when the radius halves
            (higher-order pole or another singularity close by)
        NonConvergenceError: doubling the nodes moves the value
    """
    pole = to_hp(pole, ctx)
    nodes = nodes if nodes is not None else max(64, 4 * ctx.digits)
    with ctx.workdps():
        r = mpf(settings.RESIDUE_RADIUS) if radius is None else to_real(radius, ctx)
        if not (0 < r < mpf(1) / 2):
            raise ParameterError("Residue radius must lie in (0, 1/2)")
        even = _circle_mean(f, pole, r, 2 * nodes, offset=0, stride=2)
        odd = _circle_mean(f, pole, r, 2 * nodes, offset=1, stride=2)
        coarse = even / nodes
        fine = (even + odd) / (2 * nodes)
        scale = max(mpf(1), abs(fine))
        tolerance = ctx.eps(5) * scale
        if abs(fine - coarse) > tolerance:
            raise NonConvergenceError(
                f"Residue at {mpmath.nstr(pole, 8)} changed by {mpmath.nstr(abs(fine - coarse), 5)} "
                f"when the nodes doubled",
                partial_sum=fine,
                terms_used=2 * nodes
            )
        halved = _circle_mean(f, pole, r / 2, nodes) / nodes
        if abs(halved - fine) > tolerance:
            raise HigherOrderPoleError(
                f"Residue at {mpmath.nstr(pole, 8)} is not stable under radius halving "
                f"(change {mpmath.nstr(abs(halved - fine), 5)})"
            )
        return ResidueTerm(pole=pole, value=fine, radius=r)


# ================================
# BARNES INTEGRALS
# ================================

def _strip_contour(c: Scalar, low: int, high: Optional[int], ctx: PrecisionContext) -> ContourSpec:
    spec = ContourSpec.default(c, ctx)
    if spec.c <= low or (high is not None and spec.c >= high):
        strip = f"({low}, {high})" if high is not None else f"({low}, inf)"
        raise ParameterError(f"Abscissa c = {mpmath.nstr(spec.c, 10)} must lie in {strip}")
    return spec.cleared(1, ctx)


def barnes_li2(
    p: ExponentialParam,
    c: Scalar,
    ctx: PrecisionContext,
    tolerance: Optional[Scalar] = None
) -> QuadratureResult:
    """
    Li_2(omega, e^(-x)) from its Barnes integral along Re s = c, c > 1.

    ``tolerance`` is the quadrature target (default 10^(-digits)); the value
    does not depend on c.
    """
    spec = _strip_contour(c, 1, None, ctx)
    return vertical_line_integral(lambda s: integrand_g(s, p.zparam, p.theta, ctx), spec, p.x, ctx, tolerance)


def barnes_ci2(
    p: ExponentialParam,
    c: Scalar,
    ctx: PrecisionContext,
    tolerance: Optional[Scalar] = None
) -> QuadratureResult:
    """Ci_2(omega, e^(-x)) from the even Hurwitz decomposition, 1 < c < 2."""
    spec = _strip_contour(c, 1, 2, ctx)
    return vertical_line_integral(lambda s: ci_integrand(s, p.zparam, p.theta, ctx), spec, p.x, ctx, tolerance)


def barnes_si2(
    p: ExponentialParam,
    c: Scalar,
    ctx: PrecisionContext,
    tolerance: Optional[Scalar] = None
) -> QuadratureResult:
    """Si_2(omega, e^(-x)) from the odd Hurwitz decomposition, 1 < c < 2."""
    spec = _strip_contour(c, 1, 2, ctx)
    return vertical_line_integral(lambda s: si_integrand(s, p.zparam, p.theta, ctx), spec, p.x, ctx, tolerance)


def cahen_mellin(x: Scalar, ctx: PrecisionContext, c: Scalar = "1.5") -> Tuple[QuadratureResult, HPComplex]:
    """
    Calibration fixture: (1/2 pi i) int Gamma(s) x^(-s) ds = e^(-x).

    Returns:
        (quadrature result, exact value e^(-x))
    """
    x_value = to_real(x, ctx)
    spec = ContourSpec.default(c, ctx)
    if spec.c <= 0:
        raise ParameterError("Cahen-Mellin abscissa must be positive")
    spec = spec.cleared(0, ctx)
    result = vertical_line_integral(lambda s: gamma(s, ctx), spec, x_value, ctx)
    with ctx.workdps():
        exact = mpc(mp.exp(-x_value))
    return result, exact


def psi_n_transform(
    n: int,
    x: Scalar,
    zparam: Scalar,
    ctx: PrecisionContext,
    c: Scalar = "1.5"
) -> Tuple[QuadratureResult, HPComplex]:
    """
    Single-term Mellin inversion

        psi_n(x) = e^(-n z x) / (n (1 - e^(-n x))) = (1/n)(1/2 pi i) int zeta(s, z) Gamma(s) (n x)^(-s) ds

    Returns:
        (quadrature result, closed form)
    """
    if n < 1:
        raise ParameterError(f"psi_n index must be >= 1, got {n}")
    x_value = to_real(x, ctx)
    z = to_hp(zparam, ctx)
    spec = _strip_contour(c, 1, None, ctx)
    with ctx.workdps():
        scaled = n * x_value

    def integrand(s: mpc) -> mpc:
        value = hurwitz_zeta(s, z, ctx) * gamma(s, ctx)
        return value / n

    result = vertical_line_integral(integrand, spec, scaled, ctx)
    with ctx.workdps():
        closed = mp.exp(-n * z * x_value) / (n * (1 - mp.exp(-n * x_value)))
    return result, closed


# ================================
# CONTOUR SHIFTS
# ================================

def shifted_li2(
    p: ExponentialParam,
    order: int,
    ctx: PrecisionContext,
    tolerance: Optional[Scalar] = None
) -> ShiftedContour:
    """
    Leftward shift of the Li_2 Barnes integral past s = 1, 0, ..., -order.

    The residues of g(s) x^(-s) are collected and the remainder is the integral
    along Re s = -order - 1/2.
    """
    if order < 0:
        raise ParameterError(f"Shift order must be >= 0, got {order}")

    def f(s: mpc) -> mpc:
        return integrand_g(s, p.zparam, p.theta, ctx)

    def weighted(s: mpc) -> mpc:
        return f(s) * mp.power(p.x, -s)

    residues = [residue_at(weighted, pole, ctx) for pole in range(1, -order - 1, -1)]
    with ctx.workdps():
        spec = ContourSpec.default(mpf(-order) - mpf(1) / 2, ctx)
    spec = spec.cleared(1, ctx)
    remainder = vertical_line_integral(f, spec, p.x, ctx, tolerance)
    return ShiftedContour.assemble(residues, remainder, 1, ctx)


def shifted_ci2(
    p: ExponentialParam,
    order: int,
    ctx: PrecisionContext,
    c: Scalar = "1.5",
    tolerance: Optional[Scalar] = None
) -> ShiftedContour:
    """
    Rightward shift of the Ci_2 Barnes integral past s = 2, 4, ..., 2 order.

    Moving the line to the right collects the residues with a minus sign;
    the remainder is the integral along Re s = c + 2 order.
    """
    if order < 1:
        raise ParameterError(f"Shift order must be >= 1, got {order}")
    start = _strip_contour(c, 1, 2, ctx)

    def f(s: mpc) -> mpc:
        return ci_integrand(s, p.zparam, p.theta, ctx)

    def weighted(s: mpc) -> mpc:
        return f(s) * mp.power(p.x, -s)

    residues = [residue_at(weighted, 2 * k, ctx) for k in range(1, order + 1)]
    with ctx.workdps():
        spec = replace(start, c=start.c + 2 * order)
    remainder = vertical_line_integral(f, spec, p.x, ctx, tolerance)
    return ShiftedContour.assemble(residues, remainder, -1, ctx)
