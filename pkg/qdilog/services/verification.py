"""
Verification Service

Identity suites behind the ``verify`` command. Each suite evaluates both
sides of an identity through independent routes and records the residual
against a tolerance. Adjudication cases compare several closed-form
candidates with a reference (usually the residue oracle) and pass when
exactly one candidate matches.
"""

import logging
from typing import Callable, Dict, List, Optional

import mpmath
from mpmath import mp, mpc, mpf

from qdilog.core.exceptions import ParameterError, QDilogError
from qdilog.core.hpnum import PrecisionContext, to_hp
from qdilog.schemas.report import VerificationCase, VerificationReport
from qdilog.services import asymp, mellin, qfun, specfun
from qdilog.services.asymp import Part, Provenance
from qdilog.services.qfun import ExponentialParam, QParam
from qdilog.services.specfun import ThetaParam

logger = logging.getLogger(__name__)

Grid = List[Dict[str, str]]


# ================================
# CASE HELPERS
# ================================

def _case(
    case_id: str,
    inputs: Dict[str, str],
    residual: mpf,
    tolerance: mpf,
    ctx: PrecisionContext,
    variant: Optional[str] = None,
    note: Optional[str] = None
) -> VerificationCase:
    with ctx.workdps():
        passed = bool(residual <= tolerance)
    return VerificationCase(
        case_id=case_id,
        inputs=inputs,
        residual=ctx.format(residual),
        tolerance=ctx.format(tolerance),
        passed=passed,
        variant=variant,
        note=note
    )


def _failed(case_id: str, inputs: Dict[str, str], error: QDilogError, tolerance: mpf, ctx: PrecisionContext) -> VerificationCase:
    logger.warning(f"Case {case_id} raised {type(error).__name__}: {error}")
    return VerificationCase(
        case_id=case_id,
        inputs=inputs,
        residual="inf",
        tolerance=ctx.format(tolerance),
        passed=False,
        note=f"{type(error).__name__}: {error}"
    )


def _point(point: Dict[str, str], *keys: str) -> Dict[str, str]:
    missing = [key for key in keys if key not in point]
    if missing:
        raise ParameterError(f"Grid point {point} is missing {', '.join(missing)}")
    return dict(point)


def _relative(value, reference, ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return abs(value - reference) / max(mpf(1), abs(reference))


def _adjudicate(
    case_id: str,
    inputs: Dict[str, str],
    reference,
    candidates: Dict[str, mpc],
    tolerance: mpf,
    ctx: PrecisionContext
) -> VerificationCase:
    """
    Pass when exactly one candidate matches the reference. Candidates that
    all coincide with each other and the reference are reported as
    indistinguishable.
    """
    with ctx.workdps():
        scale = max(mpf(1), abs(reference))
        residuals = {label: abs(value - reference) / scale for label, value in candidates.items()}
        matches = [label for label, r in residuals.items() if r <= tolerance]
        values = list(candidates.values())
        coincide = all(abs(v - values[0]) / scale <= tolerance for v in values[1:])
        best = min(residuals.values())
    note = ", ".join(f"{label}: {mpmath.nstr(r, 5)}" for label, r in residuals.items())
    if len(matches) == 1:
        return _case(case_id, inputs, best, tolerance, ctx, variant=matches[0], note=note)
    if matches and coincide:
        return _case(case_id, inputs, best, tolerance, ctx, variant="indistinguishable", note=note)
    return VerificationCase(
        case_id=case_id,
        inputs=inputs,
        residual=ctx.format(best),
        tolerance=ctx.format(tolerance),
        passed=False,
        variant=None,
        note=f"{len(matches)} candidates match; {note}"
    )


def _confirmed(cases: List[VerificationCase], groups: Dict[str, str]) -> Optional[str]:
    """Summarise adjudicated variants per case-id prefix, e.g. 'q1=index_corrected'."""
    parts = []
    for prefix, label in groups.items():
        variants = {
            case.variant for case in cases
            if case.case_id.startswith(prefix) and case.variant and case.variant != "indistinguishable"
        }
        if len(variants) == 1:
            parts.append(f"{label}={variants.pop()}")
        elif variants:
            parts.append(f"{label}=mixed({','.join(sorted(variants))})")
    return "; ".join(parts) or None


def _report(
    suite: str,
    cases: List[VerificationCase],
    ctx: PrecisionContext,
    confirmed_variant: Optional[str] = None,
    findings: Optional[List[str]] = None
) -> VerificationReport:
    report = VerificationReport(
        suite=suite,
        digits=ctx.digits,
        cases=sorted(cases, key=lambda case: case.case_id),
        confirmed_variant=confirmed_variant,
        findings=findings or []
    )
    logger.info(f"Suite {suite}: {sum(c.passed for c in cases)}/{len(cases)} cases passed")
    return report


# ================================
# SUITES
# ================================

KIRILLOV_GRID: Grid = [
    {"q": q, "z": z}
    for q in ("0.1", "0.3", "0.5", "0.7", "0.9")
    for z in ("0.1", "0.5", "0.8", "0.3+0.4i", "-0.6")
]


def kirillov_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """sum z^n / (q;q)_n = exp(Li_2(z, q)), relative residual <= 10^(-digits+10)."""
    tolerance = ctx.eps(10)
    cases = []
    for index, point in enumerate(grid or KIRILLOV_GRID):
        point = _point(point, "q", "z")
        case_id = f"kirillov-{index:03d}"
        try:
            q = QParam.of(point["q"], ctx)
            left = qfun.euler_series(point["z"], q, ctx)
            right_log = qfun.q_polylog(2, point["z"], q, ctx)
            with ctx.workdps():
                right = mp.exp(right_log)
            cases.append(_case(case_id, dict(point), _relative(left, right, ctx), tolerance, ctx))
        except QDilogError as e:
            cases.append(_failed(case_id, dict(point), e, tolerance, ctx))
    return _report("kirillov", cases, ctx)


LERCH_GRID: Grid = [{"theta": t, "s": s} for t in ("0.3", "0.5", "0.7") for s in ("2", "2.5", "3")]


def lerch_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """
    Lerch functional equation residual for Re s > 1, plus the even and odd
    decompositions at a few non-integer s.
    """
    tolerance = ctx.eps(8)
    cases = []
    for index, point in enumerate(grid or LERCH_GRID):
        point = _point(point, "theta", "s")
        case_id = f"lerch-{index:03d}"
        try:
            theta = ThetaParam.of(point["theta"], ctx)
            residual = specfun.lerch_residual(theta, point["s"], ctx)
            with ctx.workdps():
                cases.append(_case(case_id, dict(point), abs(residual), tolerance, ctx))
        except QDilogError as e:
            cases.append(_failed(case_id, dict(point), e, tolerance, ctx))
    if grid is None:
        theta = ThetaParam.of("0.3", ctx)
        for s in ("-0.5", "0.5", "1.5", "2.5"):
            even, odd = specfun.lerch_decomposition_residuals(theta, s, ctx)
            inputs = {"theta": "0.3", "s": s}
            with ctx.workdps():
                cases.append(_case(f"lerch-even-s{s}", inputs, abs(even), tolerance, ctx))
                cases.append(_case(f"lerch-odd-s{s}", inputs, abs(odd), tolerance, ctx))
    return _report("lerch", cases, ctx)


def special_values_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """
    Special values: zeta(-n, z) through Bernoulli polynomials, F(theta, -n)
    through Apostol-Bernoulli polynomials (with and without the factor
    lambda), zeta(n+1, z) through polygamma against Euler-Maclaurin
    summation, Bernoulli reflection and the two parity sums.
    """
    if grid is not None:
        raise ParameterError("The special_values suite has a fixed grid")
    tolerance = ctx.eps(8)
    cases = []

    for z in ("0.3", "1", "2.5", "1+1i"):
        for n in range(11):
            inputs = {"n": str(n), "z": z}
            zeta = specfun.hurwitz_zeta(-n, z, ctx)
            bern = specfun.bernoulli_poly(n + 1, z, ctx)
            with ctx.workdps():
                expected = -bern / (n + 1)
            cases.append(_case(f"hurwitz-neg-z{z}-n{n:02d}", inputs, _relative(zeta, expected, ctx), tolerance, ctx))

    for t in ("0.2", "0.5", "0.8"):
        theta = ThetaParam.of(t, ctx)
        lam = theta.lam(ctx)
        apostol = specfun.apostol_bernoulli_all(9, 1, lam, ctx)
        for n in range(9):
            value = specfun.periodic_zeta(theta, -n, ctx)
            with ctx.workdps():
                printed = -apostol[n + 1] / (n + 1)
                candidates = {"lambda_corrected": lam * printed, "printed": printed}
            cases.append(_adjudicate(
                f"apostol-theta{t}-n{n:02d}", {"n": str(n), "theta": t}, value, candidates, tolerance, ctx
            ))

    for z in ("0.7", "2", "1.5+0.5i"):
        z_hp = to_hp(z, ctx)
        for n in range(1, 7):
            inputs = {"n": str(n), "z": z}
            via_polygamma = specfun.polygamma(n, z_hp, ctx)
            with ctx.extended(10).workdps():
                summed = mp.sumem(lambda k: (z_hp + k) ** (-(n + 1)), [0, mp.inf])
            with ctx.workdps():
                zeta = (-1) ** (n + 1) * via_polygamma / mpmath.factorial(n)
            cases.append(_case(f"polygamma-z{z}-n{n}", inputs, _relative(zeta, summed, ctx), tolerance, ctx))

    for t in ("0.1", "0.3", "0.5", "0.7", "0.9"):
        with ctx.workdps():
            reflected = 1 - mpf(t)
        for n in range(13):
            left = specfun.bernoulli_poly(n, reflected, ctx)
            right = specfun.bernoulli_poly(n, t, ctx)
            with ctx.workdps():
                residual = _relative(left, (-1) ** n * right, ctx)
            cases.append(_case(f"reflection-theta{t}-n{n:02d}", {"n": str(n), "theta": t}, residual, tolerance, ctx))

    theta = ThetaParam.of("0.3", ctx)
    for sign, label in ((1, "plus"), (-1, "minus")):
        for n in range(9):
            direct = specfun.hurwitz_parity_sum(n, theta, sign, ctx, variant="direct")
            candidates = {
                "corrected": specfun.hurwitz_parity_sum(n, theta, sign, ctx, variant="corrected"),
                "printed": specfun.hurwitz_parity_sum(n, theta, sign, ctx, variant="printed"),
            }
            cases.append(_adjudicate(
                f"parity-{label}-n{n:02d}", {"n": str(n), "theta": "0.3"}, direct, candidates, tolerance, ctx
            ))

    confirmed = _confirmed(cases, {"apostol": "apostol", "parity": "parity"})
    return _report("special_values", cases, ctx, confirmed_variant=confirmed)


BARNES_Q1_GRID: Grid = [
    {"x": "1", "zparam": "2", "theta": "0.3"},
    {"x": "2", "zparam": "3", "theta": "0.5"},
    {"x": "0.7", "zparam": "1.5", "theta": "0.25"},
]


def _barnes_tolerance(ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return mpf(10) ** (-(ctx.digits // 2))


def _quadrature_target(ctx: PrecisionContext) -> mpf:
    """Barnes integrals stop two digits inside the case tolerance."""
    with ctx.workdps():
        return _barnes_tolerance(ctx) / 100


def barnes_q1_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """Barnes integral of Li_2 against the series, and the leftward contour shift."""
    tolerance = _barnes_tolerance(ctx)
    target = _quadrature_target(ctx)
    cases = []
    for index, point in enumerate(grid or BARNES_Q1_GRID):
        point = _point(point, "x", "zparam", "theta")
        case_id = f"barnes-li2-{index:03d}"
        c = point.get("c", "1.5")
        inputs = {**point, "c": c}
        try:
            p = ExponentialParam.of(point["x"], point["zparam"], point["theta"], ctx)
            integral = mellin.barnes_li2(p, c, ctx, target)
            series = qfun.li2q(p, ctx)
            cases.append(_case(case_id, inputs, _relative(integral.value, series, ctx), tolerance, ctx))
        except QDilogError as e:
            cases.append(_failed(case_id, inputs, e, tolerance, ctx))
    if grid is None:
        p = ExponentialParam.of("0.5", "2", "0.3", ctx)
        inputs = {"x": "0.5", "zparam": "2", "theta": "0.3", "order": "2"}
        shifted = mellin.shifted_li2(p, 2, ctx, target)
        direct = mellin.barnes_li2(p, "1.5", ctx, target)
        cases.append(_case("shift-left-N2", inputs, _relative(shifted.value, direct.value, ctx), tolerance, ctx))
    return _report("barnes_q1", cases, ctx)


BARNES_Q0_GRID: Grid = [
    {"x": "8", "zparam": "2", "theta": "0.3"},
    {"x": "12", "zparam": "2.5", "theta": "0.7"},
]


def barnes_q0_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """Barnes integrals of Ci_2 and Si_2 against the q-Clausen series, and the rightward shift."""
    tolerance = _barnes_tolerance(ctx)
    target = _quadrature_target(ctx)
    cases = []
    points = grid or BARNES_Q0_GRID + [{"x": "8", "zparam": "2", "theta": "0.5"}]
    for index, point in enumerate(points):
        point = _point(point, "x", "zparam", "theta")
        c = point.get("c", "1.5")
        inputs = {**point, "c": c}
        try:
            p = ExponentialParam.of(point["x"], point["zparam"], point["theta"], ctx)
            ci, si = qfun.q_clausen_pair(p, ctx)
            ci_integral = mellin.barnes_ci2(p, c, ctx, target)
            si_integral = mellin.barnes_si2(p, c, ctx, target)
            cases.append(_case(f"barnes-ci2-{index:03d}", inputs, _relative(ci_integral.value, ci, ctx), tolerance, ctx))
            cases.append(_case(f"barnes-si2-{index:03d}", inputs, _relative(si_integral.value, si, ctx), tolerance, ctx))
        except QDilogError as e:
            cases.append(_failed(f"barnes-q0-{index:03d}", inputs, e, tolerance, ctx))
    if grid is None:
        p = ExponentialParam.of("10", "2", "0.3", ctx)
        inputs = {"x": "10", "zparam": "2", "theta": "0.3", "order": "1"}
        shifted = mellin.shifted_ci2(p, 1, ctx, tolerance=target)
        direct = mellin.barnes_ci2(p, "1.5", ctx, target)
        cases.append(_case("shift-right-N1", inputs, _relative(shifted.value, direct.value, ctx), tolerance, ctx))
    return _report("barnes_q0", cases, ctx)


def coefficients_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """
    Residue-oracle adjudication of the expansion coefficients at zparam = 2,
    theta = 0.3: the q -> 1 leading terms against their closed forms, the
    q -> 1 poles s = -1, -2, -3 and the q -> 0 poles s = 2..5 against their
    candidates, the Si residue at s = 1, and the printed combined formula
    against ci + i si.
    """
    if grid is not None:
        raise ParameterError("The coefficients suite has a fixed grid")
    zparam = to_hp("2", ctx)
    theta = ThetaParam.of("0.3", ctx)
    inputs = {"zparam": "2", "theta": "0.3"}
    tolerance = ctx.eps(15)
    cases = []

    oracle = asymp.q1_expansion(zparam, theta, 3, Provenance.RESIDUE_ORACLE, ctx)
    leading, constant = asymp.q1_leading_coefficients(zparam, theta, ctx)
    cases.append(_case("q1-pole+1", {**inputs, "pole": "1"}, _relative(oracle.coefficient(-1), leading, ctx), tolerance, ctx))
    cases.append(_case("q1-pole+0", {**inputs, "pole": "0"}, _relative(oracle.coefficient(0), constant, ctx), tolerance, ctx))
    for n in (1, 2, 3):
        candidates = asymp.q1_coefficient_candidates(zparam, theta, n, ctx)
        cases.append(_adjudicate(
            f"q1-pole-{n}", {**inputs, "pole": str(-n)}, oracle.coefficient(n), candidates, tolerance, ctx
        ))

    for pole in (2, 3, 4, 5):
        kernel = mellin.ci_integrand if pole % 2 == 0 else mellin.si_integrand
        residue = mellin.residue_at(lambda s: kernel(s, zparam, theta, ctx), pole, ctx)
        with ctx.workdps():
            reference = -residue.value
        candidates = asymp.q0_coefficient_candidates(zparam, theta, pole, ctx)
        cases.append(_adjudicate(f"q0-pole+{pole}", {**inputs, "pole": str(pole)}, reference, candidates, tolerance, ctx))

    residue = mellin.residue_at(lambda s: mellin.si_integrand(s, zparam, theta, ctx), 1, ctx)
    candidates = asymp.si_leading_candidates(zparam, theta, ctx)
    cases.append(_adjudicate("si-leading", {**inputs, "pole": "1"}, residue.value, candidates, tolerance, ctx))

    findings = [
        f"printed combined q -> 0 formula differs from ci + i si at x^{row.power} by {mpmath.nstr(row.difference, 8)}"
        for row in asymp.reconcile_combined(zparam, theta, 2, ctx)
        if not row.matches
    ]
    findings.append("si-leading residue at s = 1 lies left of the strip 1 < c < 2; the q -> 0 Si x^-1 coefficient is 0")
    confirmed = _confirmed(cases, {"q1-pole-": "q1", "q0-pole": "q0", "si-leading": "si_leading"})
    return _report("coefficients", cases, ctx, confirmed_variant=confirmed, findings=findings)


def limits_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """
    Limit probes at z = 0.5: (1 - q) Li_2(z, q) approaches Li_2(z) with
    strictly shrinking distance over q = 0.9, 0.99, 0.999, and (1 - q) Li_2(z, q)
    is within 10^-4 of -log(1 - z) at q = 10^-6.
    """
    if grid is not None:
        raise ParameterError("The limits suite has a fixed grid")
    z = "0.5"
    qs = [QParam.of(q, ctx) for q in ("0.9", "0.99", "0.999")]
    target = specfun.polylog(2, z, ctx)
    cases = []
    findings = []

    def distances(scaled: bool) -> List[mpf]:
        values = qfun.limit_probe_q1(z, qs, ctx, scaled_argument=scaled)
        with ctx.workdps():
            return [abs(v - target) for v in values]

    unscaled = distances(False)
    for index in range(1, len(qs)):
        inputs = {"z": z, "q": ctx.format(qs[index].q), "previous_q": ctx.format(qs[index - 1].q)}
        cases.append(_case(f"limit-q1-{index}", inputs, unscaled[index], unscaled[index - 1], ctx))
    scaled = distances(True)
    with ctx.workdps():
        shrinking = all(scaled[i] < scaled[i - 1] for i in range(1, len(scaled)))
    if not shrinking:
        findings.append(
            "(1 - q) Li_2((1 - q) z, q) does not approach Li_2(z): distances "
            + ", ".join(mpmath.nstr(d, 6) for d in scaled)
        )

    q0 = QParam.of("1e-6", ctx)
    probe = qfun.limit_probe_q0(z, q0, ctx)
    with ctx.workdps():
        residual = abs(probe + mp.log(1 - mpf(z)))
        cases.append(_case("limit-q0", {"z": z, "q": "1e-6"}, residual, mpf("1e-4"), ctx))
    return _report("limits", cases, ctx, findings=findings)


def calibration_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """Quadrature calibration: Cahen-Mellin at x = 1, 2 and the psi_n single-term inversion."""
    if grid is not None:
        raise ParameterError("The calibration suite has a fixed grid")
    tolerance = ctx.eps(10)
    cases = []
    for x in ("1", "2"):
        result, exact = mellin.cahen_mellin(x, ctx)
        cases.append(_case(f"cahen-mellin-x{x}", {"x": x, "c": "1.5"}, _relative(result.value, exact, ctx), tolerance, ctx))
    for n in (1, 2):
        result, closed = mellin.psi_n_transform(n, "1", "2", ctx)
        inputs = {"n": str(n), "x": "1", "zparam": "2", "c": "1.5"}
        cases.append(_case(f"psi-n{n}", inputs, _relative(result.value, closed, ctx), tolerance, ctx))
    return _report("calibration", cases, ctx)


Q1_ORDER_XS = ("0.2", "0.1", "0.05", "0.025")
Q0_ORDER_XS = ("10", "20", "40", "80")


def _precision_floor(ctx: PrecisionContext) -> mpf:
    return ctx.eps(12)


def orders_suite(ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """
    Truncation-order laws at zparam = 2, theta = 0.3.

    q -> 1: the error of the order-N expansion has slope N + 1 +- 0.5 in log-log.
    q -> 0: the true remainder decays faster than any power (every residue
    collected by the rightward shift vanishes), so the Ci slope must be at
    most -(2N+1) + 0.5 and the Si slope at most -(2N+2) + 0.5.
    """
    if grid is not None:
        raise ParameterError("The orders suite has a fixed grid")
    zparam = to_hp("2", ctx)
    theta = ThetaParam.of("0.3", ctx)
    floor = _precision_floor(ctx)
    cases = []
    findings = []

    q1 = asymp.q1_expansion(zparam, theta, 4, Provenance.CLOSED_FORM, ctx)
    references = {x: qfun.li2q(ExponentialParam.of(x, zparam, theta, ctx), ctx) for x in Q1_ORDER_XS}
    for order in (2, 3, 4):
        truncated = q1.truncate(order)
        errs = []
        for x in Q1_ORDER_XS:
            value = asymp.eval_expansion(truncated, x, ctx)
            with ctx.workdps():
                errs.append(abs(value - references[x]))
        inputs = {"regime": "q_to_1", "order": str(order), "xs": ",".join(Q1_ORDER_XS)}
        try:
            slope = asymp.empirical_order(Q1_ORDER_XS, errs, floor=floor)
            residual = abs(mpf(slope) - (order + 1))
            cases.append(_case(f"order-q1-N{order}", inputs, residual, mpf("0.5"), ctx, note=f"slope {slope:.3f}"))
        except QDilogError as e:
            cases.append(_failed(f"order-q1-N{order}", inputs, e, mpf("0.5"), ctx))

    clausen = {}
    for x in Q0_ORDER_XS:
        clausen[x] = qfun.q_clausen_pair(ExponentialParam.of(x, zparam, theta, ctx), ctx)
    for part, orders, index in ((Part.CI, (1, 2, 3), 0), (Part.SI, (1, 2), 1)):
        oracle = asymp.q0_expansion(zparam, theta, max(orders), part, Provenance.RESIDUE_ORACLE, ctx)
        printed = asymp.q0_expansion(zparam, theta, max(orders), part, Provenance.CLOSED_FORM, ctx)
        for order in orders:
            truncated = oracle.truncate(order)
            bound = truncated.remainder_exponent + mpf("0.5")
            errs = []
            printed_errs = []
            for x in Q0_ORDER_XS:
                value = asymp.eval_expansion(truncated, x, ctx)
                printed_value = asymp.eval_expansion(printed.truncate(order), x, ctx)
                with ctx.workdps():
                    errs.append(abs(value - clausen[x][index]))
                    printed_errs.append(abs(printed_value - clausen[x][index]))
            inputs = {"regime": "q_to_0", "part": part.value, "order": str(order), "xs": ",".join(Q0_ORDER_XS)}
            case_id = f"order-q0-{part.value}-N{order}"
            try:
                slope = asymp.empirical_order(Q0_ORDER_XS, errs, floor=floor)
                with ctx.workdps():
                    excess = max(mpf(0), mpf(slope) - bound)
                cases.append(_case(case_id, inputs, excess, mpf(0), ctx, note=f"slope {slope:.3f}, bound {float(bound):.1f}"))
            except QDilogError as e:
                cases.append(_failed(case_id, inputs, e, mpf(0), ctx))
            try:
                printed_slope = asymp.empirical_order(Q0_ORDER_XS, printed_errs, floor=floor)
                if printed_slope > bound:
                    findings.append(
                        f"printed {part.value} expansion at order {order}: error slope {printed_slope:.3f}, "
                        f"claimed at most {float(bound):.1f}"
                    )
            except QDilogError:
                pass
    return _report("orders", cases, ctx, findings=findings)


SUITES: Dict[str, Callable[[PrecisionContext, Optional[Grid]], VerificationReport]] = {
    "kirillov": kirillov_suite,
    "lerch": lerch_suite,
    "special_values": special_values_suite,
    "barnes_q1": barnes_q1_suite,
    "barnes_q0": barnes_q0_suite,
    "coefficients": coefficients_suite,
    "limits": limits_suite,
    "calibration": calibration_suite,
    "orders": orders_suite,
}


def run_suite(name: str, ctx: PrecisionContext, grid: Optional[Grid] = None) -> VerificationReport:
    """
    Run a named suite.

    Raises:
        ParameterError: unknown suite
    """
    suite = SUITES.get(name)
    if suite is None:
        raise ParameterError(f"Unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    logger.info(f"Running suite {name} at {ctx.digits} digits")
    return suite(ctx, grid)
