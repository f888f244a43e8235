"""
Asymptotic Expansion Service

The two asymptotic expansions of Li_2(omega, e^(-x)):

- q -> 1 (x -> 0): leftward contour shift past the poles s = 1, 0, -1, ...
  of g(s) = zeta(s, z) F(theta, s+1) Gamma(s), giving powers x^(-1), x^0, x^1, ...
- q -> 0 (x -> oo): rightward shift of the Ci_2 / Si_2 integrals past
  s = 2, 4, ... and s = 3, 5, ...

Coefficients come either from closed forms or from the numerical residue
oracle. The oracle is authoritative; printed formulas are kept as
candidates and adjudicated by the verification suites.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
import pandas as pd
from mpmath import mp, mpc, mpf

from qdilog.core.exceptions import DomainError, ParameterError, UnusableDataError
from qdilog.core.hpnum import HPComplex, HPReal, PrecisionContext, Scalar, to_hp, to_real
from qdilog.services.mellin import ci_integrand, integrand_g, residue_at, si_integrand
from qdilog.services.specfun import (
    ThetaParam,
    apostol_bernoulli_all,
    bernoulli_poly,
    hurwitz_parity_sum,
    hurwitz_zeta,
    polygamma,
)

logger = logging.getLogger(__name__)

MAX_TRUNCATION_ORDER = 40
CSV_COLUMNS = ["power", "coeff_re", "coeff_im", "provenance"]


class Regime(str, Enum):
    """Limit in which an expansion is valid."""
    Q_TO_1 = "q_to_1"
    Q_TO_0 = "q_to_0"


class Provenance(str, Enum):
    """Where the coefficients come from."""
    CLOSED_FORM = "closed_form"
    RESIDUE_ORACLE = "residue_oracle"


class Part(str, Enum):
    """Component of the q -> 0 expansion."""
    CI = "ci"
    SI = "si"
    COMBINED = "combined"


# ================================
# DOMAIN TYPES
# ================================

@dataclass(frozen=True)
class ExpansionTerm:
    """coeff * x^power"""
    power: int
    coeff: HPComplex


@dataclass(frozen=True)
class AsymptoticExpansion:
    """
    Truncated asymptotic expansion.

    Terms are kept sorted by ascending power, one term per power.
    ``remainder_exponent`` is the power of x the dropped remainder is
    claimed to behave like.
    """
    terms: Tuple[ExpansionTerm, ...]
    regime: Regime
    order: int
    remainder_exponent: int
    provenance: Provenance
    part: Optional[Part] = None

    def __post_init__(self):
        powers = [term.power for term in self.terms]
        if powers != sorted(set(powers)):
            raise ParameterError("Expansion terms must have distinct powers in ascending order")

    @property
    def powers(self) -> List[int]:
        return [term.power for term in self.terms]

    def coefficient(self, power: int) -> HPComplex:
        for term in self.terms:
            if term.power == power:
                return term.coeff
        return mpc(0)

    def truncate(self, order: int) -> "AsymptoticExpansion":
        """
        The same expansion cut at a lower order.

        q -> 1 keeps powers <= order; q -> 0 keeps powers >= -(2 order + 1)
        for the Si part and >= -2 order otherwise.
        """
        if order > self.order:
            raise ParameterError(f"Cannot truncate an order-{self.order} expansion at order {order}")
        if self.regime == Regime.Q_TO_1:
            terms = tuple(term for term in self.terms if term.power <= order)
            remainder = order + 1
        else:
            lowest = -(2 * order + 1) if self.part == Part.SI else -2 * order
            terms = tuple(term for term in self.terms if term.power >= lowest)
            remainder = lowest - 1
        return replace(self, terms=terms, order=order, remainder_exponent=remainder)

    def to_frame(self, ctx: PrecisionContext) -> pd.DataFrame:
        """One row per term with decimal-string coefficients."""
        rows = [
            {
                "power": term.power,
                "coeff_re": ctx.format(term.coeff.real),
                "coeff_im": ctx.format(term.coeff.imag),
                "provenance": self.provenance.value,
            }
            for term in self.terms
        ]
        return pd.DataFrame(rows, columns=CSV_COLUMNS)

    def to_csv(self, ctx: PrecisionContext) -> str:
        return self.to_frame(ctx).to_csv(index=False)


def _build(
    coefficients: Dict[int, HPComplex],
    regime: Regime,
    order: int,
    remainder_exponent: int,
    provenance: Provenance,
    part: Optional[Part] = None
) -> AsymptoticExpansion:
    terms = tuple(ExpansionTerm(power=p, coeff=coefficients[p]) for p in sorted(coefficients))
    return AsymptoticExpansion(
        terms=terms,
        regime=regime,
        order=order,
        remainder_exponent=remainder_exponent,
        provenance=provenance,
        part=part
    )


def _validate_zparam(zparam: Scalar, ctx: PrecisionContext) -> HPComplex:
    z = to_hp(zparam, ctx)
    if z.real <= 1:
        raise DomainError(f"Re zparam must exceed 1, got {mpmath.nstr(z.real, 10)}")
    return z


# ================================
# q -> 1 COEFFICIENTS
# ================================

def q1_leading_coefficients(zparam: Scalar, theta: ThetaParam, ctx: PrecisionContext) -> Tuple[HPComplex, HPComplex]:
    """
    Closed forms of the x^(-1) and x^0 coefficients: F(theta, 2) = Li_2(e^(2 pi i theta))
    and (1/2 - z) F(theta, 1) with F(theta, 1) = -log(1 - e^(2 pi i theta)).
    """
    z = to_hp(zparam, ctx)
    lam = theta.lam(ctx)
    with ctx.workdps():
        angle = 2 * mp.pi * theta.theta
        f2 = mpc(mpmath.clcos(2, angle), mpmath.clsin(2, angle))
        f1 = -mp.log(1 - lam)
        return f2, (mpf(1) / 2 - z) * f1


def q1_coefficient_candidates(
    zparam: Scalar,
    theta: ThetaParam,
    n: int,
    ctx: PrecisionContext
) -> Dict[str, HPComplex]:
    """
    Candidate closed forms for the coefficient of x^n, n >= 1.

    - printed: (-1)^(n+1) / ((n+1)(n+1)!) B_{n+1}(z) B_{n+1}(1, lam)
    - printed_limit: the same with (-1)^n
    - index_corrected: Res Gamma(-n) * zeta(-n, z) * F(theta, 1-n)
      = (-1)^n / n! * B_{n+1}(z) / (n+1) * lam B_n(1, lam) / n
    """
    if n < 1:
        raise ParameterError(f"Candidate index must be >= 1, got {n}")
    lam = theta.lam(ctx)
    apostol = apostol_bernoulli_all(n + 1, 1, lam, ctx)
    bz = bernoulli_poly(n + 1, zparam, ctx)
    with ctx.workdps():
        printed_scale = bz * apostol[n + 1] / ((n + 1) * mpmath.factorial(n + 1))
        return {
            "printed": (-1) ** (n + 1) * printed_scale,
            "printed_limit": (-1) ** n * printed_scale,
            "index_corrected": (-1) ** n / mpmath.factorial(n) * bz / (n + 1) * lam * apostol[n] / n,
        }


def _q1_corrected_coefficients(
    zparam: Scalar,
    theta: ThetaParam,
    order: int,
    ctx: PrecisionContext
) -> Dict[int, HPComplex]:
    lam = theta.lam(ctx)
    apostol = apostol_bernoulli_all(order + 1, 1, lam, ctx)
    coefficients = {}
    for n in range(1, order + 1):
        bz = bernoulli_poly(n + 1, zparam, ctx)
        with ctx.workdps():
            coefficients[n] = (-1) ** n / mpmath.factorial(n) * bz / (n + 1) * lam * apostol[n] / n
    return coefficients


def q1_expansion(
    zparam: Scalar,
    theta: ThetaParam,
    order: int,
    provenance: Provenance,
    ctx: PrecisionContext
) -> AsymptoticExpansion:
    """
    q -> 1 expansion of Li_2(omega, e^(-x)) through x^order.

    Powers run from -1 to ``order``; the remainder is O(x^(order+1)).

    Args:
        zparam: z with Re z > 1
        theta: Angle parameter
        order: Highest power N (0 gives just the x^-1 and x^0 terms)
        provenance: Closed forms or the residue oracle
        ctx: Precision context
    """
    if order < 0:
        raise ParameterError(f"Expansion order must be >= 0, got {order}")
    z = _validate_zparam(zparam, ctx)
    coefficients: Dict[int, HPComplex] = {}
    if provenance == Provenance.CLOSED_FORM:
        coefficients[-1], coefficients[0] = q1_leading_coefficients(z, theta, ctx)
        coefficients.update(_q1_corrected_coefficients(z, theta, order, ctx))
    else:
        logger.info(f"Residue oracle for the q -> 1 expansion, poles 1..{-order}")
        for pole in range(1, -order - 1, -1):
            term = residue_at(lambda s: integrand_g(s, z, theta, ctx), pole, ctx)
            coefficients[-pole] = term.value
    return _build(coefficients, Regime.Q_TO_1, order, order + 1, provenance)


# ================================
# q -> 0 COEFFICIENTS
# ================================

def _q0_pole_assembly(
    zparam: HPComplex,
    theta: ThetaParam,
    pole: int,
    variant: str,
    ctx: PrecisionContext
) -> HPComplex:
    """
    Coefficient of x^(-pole) as minus the residue of the Ci (even pole) or
    Si (odd pole) kernel, taking the Hurwitz brace from a parity-sum formula.

    A non-zero brace at the pole leaves a simple pole of 1/sin or 1/cos;
    a vanishing brace leaves a regular kernel and a zero coefficient.
    """
    k = pole // 2
    sign = 1 if pole % 2 == 0 else -1
    brace = hurwitz_parity_sum(pole, theta, sign, ctx, variant=variant)
    zeta = hurwitz_zeta(pole, zparam, ctx)
    with ctx.workdps():
        return (-1) ** k * (2 * mp.pi) ** pole * zeta * brace / pole


def q0_coefficient_candidates(
    zparam: Scalar,
    theta: ThetaParam,
    pole: int,
    ctx: PrecisionContext
) -> Dict[str, HPComplex]:
    """
    Candidate closed forms for the coefficient of x^(-pole), pole >= 2.

    Even poles belong to the Ci part:
        printed: 4 (-1)^n psi^(2n-1)(z) B_{2n+1}(theta) / (2n+1)! (2 pi)^(2n), pole = 2n
    odd poles to the Si part:
        printed: 4 (-1)^n psi^(2n)(z) B_{2n+2}(theta) / (2n+2)! (2 pi)^(2n+1), pole = 2n+1
    parity_corrected assembles the residue with the corrected parity sums.
    """
    if pole < 2:
        raise ParameterError(f"q -> 0 candidates start at pole 2, got {pole}")
    z = to_hp(zparam, ctx)
    n = pole // 2
    if pole % 2 == 0:
        psi = polygamma(2 * n - 1, z, ctx)
        bern = bernoulli_poly(2 * n + 1, theta.theta, ctx)
        denominator = mpmath.factorial(2 * n + 1)
    else:
        psi = polygamma(2 * n, z, ctx)
        bern = bernoulli_poly(2 * n + 2, theta.theta, ctx)
        denominator = mpmath.factorial(2 * n + 2)
    corrected = _q0_pole_assembly(z, theta, pole, "corrected", ctx)
    with ctx.workdps():
        printed = 4 * (-1) ** n * psi * bern / denominator * (2 * mp.pi) ** pole
    return {"printed": printed, "parity_corrected": corrected}


def si_leading_candidates(zparam: Scalar, theta: ThetaParam, ctx: PrecisionContext) -> Dict[str, HPComplex]:
    """
    Candidates for the residue of the Si kernel at s = 1:

    - printed_gamma: (4 gamma / pi) B_2(theta), gamma Euler's constant
    - printed_psi: -(4 psi(z) / pi) B_2(theta), from the finite part of zeta(s, z)
    - clausen: (F(theta, 2) - F(1 - theta, 2)) / 2i, the Clausen sine Cl_2(2 pi theta)
    """
    z = to_hp(zparam, ctx)
    b2 = bernoulli_poly(2, theta.theta, ctx)
    with ctx.workdps():
        return {
            "printed_gamma": 4 * mp.euler / mp.pi * b2,
            "printed_psi": -4 * mp.digamma(z) / mp.pi * b2,
            "clausen": mpc(mpmath.clsin(2, 2 * mp.pi * theta.theta)),
        }


def _q0_printed_combined(z: HPComplex, theta: ThetaParam, top: int, ctx: PrecisionContext) -> Dict[int, HPComplex]:
    """(4 gamma / pi) B_2(theta) i/x + 4 sum_{n>=1} i^n psi^(n-1)(z) B_{n+1}(theta) / (n+1)! (2 pi / x)^n"""
    b2 = bernoulli_poly(2, theta.theta, ctx)
    with ctx.workdps():
        coefficients = {-1: mpc(0, 1) * 4 * mp.euler / mp.pi * b2}
    for n in range(1, top + 1):
        bern = bernoulli_poly(n + 1, theta.theta, ctx)
        with ctx.workdps():
            psi = mp.digamma(z) if n == 1 else mp.psi(n - 1, z)
            term = 4 * mpc(0, 1) ** n * psi * bern / mpmath.factorial(n + 1) * (2 * mp.pi) ** n
            coefficients[-n] = coefficients.get(-n, mpc(0)) + term
    return coefficients


def q0_expansion(
    zparam: Scalar,
    theta: ThetaParam,
    order: int,
    part: Part,
    provenance: Provenance,
    ctx: PrecisionContext
) -> AsymptoticExpansion:
    """
    q -> 0 expansion of Ci_2, Si_2 or Li_2 = Ci_2 + i Si_2 at large x.

    Ci part: powers -2, ..., -2N, remainder x^-(2N+1).
    Si part: powers -1, -3, ..., -(2N+1), remainder x^-(2N+2).
    Combined: powers -1, ..., -2N, remainder x^-(2N+1).

    With the residue oracle the coefficients are minus the residues collected
    by the rightward shift; the Si x^-1 coefficient is 0 since s = 1 lies to
    the left of the strip 1 < c < 2. Closed forms are the printed formulas.
    """
    if order < 1:
        raise ParameterError(f"Expansion order must be >= 1, got {order}")
    z = _validate_zparam(zparam, ctx)
    part = Part(part)

    if part == Part.COMBINED:
        if provenance == Provenance.CLOSED_FORM:
            coefficients = _q0_printed_combined(z, theta, 2 * order, ctx)
        else:
            ci = q0_expansion(z, theta, order, Part.CI, provenance, ctx)
            si = q0_expansion(z, theta, order, Part.SI, provenance, ctx)
            coefficients = {}
            with ctx.workdps():
                for power in range(-2 * order, 0):
                    coefficients[power] = ci.coefficient(power) + mpc(0, 1) * si.coefficient(power)
        return _build(coefficients, Regime.Q_TO_0, order, -(2 * order + 1), provenance, part)

    if part == Part.CI:
        poles = [2 * k for k in range(1, order + 1)]
        kernel = ci_integrand
        remainder = -(2 * order + 1)
    else:
        poles = [2 * k + 1 for k in range(1, order + 1)]
        kernel = si_integrand
        remainder = -(2 * order + 2)

    coefficients: Dict[int, HPComplex] = {}
    if part == Part.SI:
        if provenance == Provenance.CLOSED_FORM:
            coefficients[-1] = si_leading_candidates(z, theta, ctx)["printed_gamma"]
        else:
            coefficients[-1] = mpc(0)
    for pole in poles:
        if provenance == Provenance.CLOSED_FORM:
            coefficients[-pole] = q0_coefficient_candidates(z, theta, pole, ctx)["printed"]
        else:
            term = residue_at(lambda s: kernel(s, z, theta, ctx), pole, ctx)
            with ctx.workdps():
                coefficients[-pole] = -term.value
    return _build(coefficients, Regime.Q_TO_0, order, remainder, provenance, part)


@dataclass(frozen=True)
class ReconciliationRow:
    """Printed combined coefficient against ci + i si at one power."""
    power: int
    combined: HPComplex
    assembled: HPComplex
    difference: HPReal
    matches: bool


def reconcile_combined(
    zparam: Scalar,
    theta: ThetaParam,
    order: int,
    ctx: PrecisionContext
) -> List[ReconciliationRow]:
    """
    Compare the printed combined q -> 0 formula with the printed Ci and Si
    formulas assembled as ci + i si, term by term over powers -1..-2N.
    """
    z = _validate_zparam(zparam, ctx)
    combined = q0_expansion(z, theta, order, Part.COMBINED, Provenance.CLOSED_FORM, ctx)
    ci = q0_expansion(z, theta, order, Part.CI, Provenance.CLOSED_FORM, ctx)
    si = q0_expansion(z, theta, order, Part.SI, Provenance.CLOSED_FORM, ctx)
    rows = []
    with ctx.workdps():
        for power in range(-1, -2 * order - 1, -1):
            printed = combined.coefficient(power)
            assembled = ci.coefficient(power) + mpc(0, 1) * si.coefficient(power)
            difference = abs(printed - assembled)
            scale = max(mpf(1), abs(assembled))
            rows.append(ReconciliationRow(
                power=power,
                combined=printed,
                assembled=assembled,
                difference=difference,
                matches=difference <= ctx.eps(10) * scale
            ))
    mismatched = [row.power for row in rows if not row.matches]
    if mismatched:
        logger.warning(f"Printed combined formula disagrees with ci + i si at powers {mismatched}")
    return rows


# ================================
# EVALUATION AND ORDER CHECKS
# ================================

def eval_expansion(e: AsymptoticExpansion, x: Scalar, ctx: PrecisionContext) -> HPComplex:
    """sum coeff * x^power"""
    x_value = x if isinstance(x, mpf) else to_real(x, ctx)
    if x_value <= 0:
        raise ParameterError("Expansions are evaluated at x > 0")
    with ctx.workdps():
        return mpc(mpmath.fsum(term.coeff * mp.power(x_value, term.power) for term in e.terms))


def empirical_order(
    xs: Sequence[Scalar],
    errs: Sequence[Scalar],
    floor: Optional[Scalar] = None
) -> float:
    """
    Least-squares slope of log(err) against log(x).

    Args:
        xs: Sample points
        errs: Positive errors at those points
        floor: Samples with err below this precision floor are dropped

    Raises:
        UnusableDataError: fewer than three usable samples, or a non-positive value
    """
    if len(xs) != len(errs):
        raise UnusableDataError("xs and errs must have the same length")
    log_x, log_err = [], []
    for x, err in zip(xs, errs):
        x_value, err_value = mpf(x), mpf(err)
        if x_value <= 0 or err_value <= 0:
            raise UnusableDataError("Slope fit needs positive xs and errors")
        if floor is not None and err_value < mpf(floor):
            logger.warning(f"Dropping sample at x = {mpmath.nstr(x_value, 6)}: error below the precision floor")
            continue
        log_x.append(float(mpmath.log(x_value)))
        log_err.append(float(mpmath.log(err_value)))
    if len(log_x) < 3:
        raise UnusableDataError(f"Slope fit needs at least 3 usable samples, got {len(log_x)}")
    if np.ptp(log_x) == 0:
        raise UnusableDataError("Slope fit needs distinct xs")
    slope, _ = np.polyfit(np.array(log_x), np.array(log_err), 1)
    return float(slope)


def optimal_truncation(
    zparam: Scalar,
    theta: ThetaParam,
    x: Scalar,
    regime: Regime,
    ctx: PrecisionContext,
    max_order: int = MAX_TRUNCATION_ORDER
) -> int:
    """
    Order N whose first dropped terms are smallest, N <= max_order.

    q -> 1 scans the closed-form coefficients of x^2 .. x^(max_order+2) and
    scores N by the larger of the next two terms, since at integer zparam
    every other coefficient is nearly zero.
    q -> 0 scans the parity-corrected Ci coefficients; these vanish, so the
    smallest order wins.
    """
    x_value = x if isinstance(x, mpf) else to_real(x, ctx)
    z = _validate_zparam(zparam, ctx)
    regime = Regime(regime)
    magnitudes: List[mpf] = []
    if regime == Regime.Q_TO_1:
        coefficients = _q1_corrected_coefficients(z, theta, max_order + 2, ctx)
        with ctx.workdps():
            for order in range(1, max_order + 1):
                magnitudes.append(max(
                    abs(coefficients[order + 1]) * x_value ** (order + 1),
                    abs(coefficients[order + 2]) * x_value ** (order + 2)
                ))
    else:
        for order in range(1, max_order + 1):
            coeff = _q0_pole_assembly(z, theta, 2 * order + 2, "corrected", ctx)
            with ctx.workdps():
                magnitudes.append(abs(coeff) * x_value ** (-(2 * order + 2)))
    best = min(range(len(magnitudes)), key=lambda i: magnitudes[i])
    return best + 1
