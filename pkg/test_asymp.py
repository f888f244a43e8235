"""
Tests for the asymptotic expansions at q -> 1 and q -> 0.
"""

import sys
from dataclasses import replace
from pathlib import Path

import pytest
from mpmath import mpc, mpf

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from qdilog.core.exceptions import DomainError, ParameterError, UnusableDataError
from qdilog.core.hpnum import with_precision
from qdilog.services import asymp, mellin, qfun
from qdilog.services.asymp import AsymptoticExpansion, ExpansionTerm, Part, Provenance, Regime
from qdilog.services.qfun import ExponentialParam
from qdilog.services.specfun import ThetaParam

ctx = with_precision(30)
theta = ThetaParam.of("0.3", ctx)


def close(a, b, slack=15):
    with ctx.workdps():
        return abs(a - b) <= ctx.eps(slack) * max(1, abs(b))


# ================================
# EXPANSION OBJECTS
# ================================

def test_terms_must_be_sorted_and_unique():
    with pytest.raises(ParameterError):
        AsymptoticExpansion(
            terms=(ExpansionTerm(power=1, coeff=mpc(1)), ExpansionTerm(power=0, coeff=mpc(1))),
            regime=Regime.Q_TO_1,
            order=1,
            remainder_exponent=2,
            provenance=Provenance.CLOSED_FORM
        )


def test_q1_powers():
    assert asymp.q1_expansion(2, theta, 0, Provenance.CLOSED_FORM, ctx).powers == [-1, 0]
    expansion = asymp.q1_expansion(2, theta, 4, Provenance.CLOSED_FORM, ctx)
    assert expansion.powers == [-1, 0, 1, 2, 3, 4]
    assert expansion.remainder_exponent == 5
    assert expansion.truncate(2).powers == [-1, 0, 1, 2]
    with pytest.raises(ParameterError):
        expansion.truncate(5)
    with pytest.raises(DomainError):
        asymp.q1_expansion(1, theta, 2, Provenance.CLOSED_FORM, ctx)


def test_q0_truncation():
    si = asymp.q0_expansion(2, theta, 2, Part.SI, Provenance.CLOSED_FORM, ctx)
    assert si.powers == [-5, -3, -1]
    assert si.remainder_exponent == -6
    cut = si.truncate(1)
    assert cut.powers == [-3, -1]
    assert cut.remainder_exponent == -4
    ci = asymp.q0_expansion(2, theta, 3, Part.CI, Provenance.CLOSED_FORM, ctx)
    assert ci.powers == [-6, -4, -2]


def test_csv_export():
    expansion = asymp.q1_expansion(2, theta, 2, Provenance.CLOSED_FORM, ctx)
    lines = expansion.to_csv(ctx).strip().splitlines()
    assert lines[0] == "power,coeff_re,coeff_im,provenance"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [-1, 0, 1, 2]
    assert all(line.endswith(",closed_form") for line in lines[1:])


# ================================
# COEFFICIENTS
# ================================

def test_q1_closed_forms_match_residue_oracle():
    closed = asymp.q1_expansion(2, theta, 3, Provenance.CLOSED_FORM, ctx)
    oracle = asymp.q1_expansion(2, theta, 3, Provenance.RESIDUE_ORACLE, ctx)
    assert oracle.powers == closed.powers
    for power in closed.powers:
        assert close(oracle.coefficient(power), closed.coefficient(power))


def test_q1_candidates():
    oracle = asymp.q1_expansion(2, theta, 2, Provenance.RESIDUE_ORACLE, ctx)
    for n in (1, 2):
        candidates = asymp.q1_coefficient_candidates(2, theta, n, ctx)
        assert close(candidates["index_corrected"], oracle.coefficient(n))
        assert not close(candidates["printed"], oracle.coefficient(n))
        assert not close(candidates["printed_limit"], oracle.coefficient(n))
    with pytest.raises(ParameterError):
        asymp.q1_coefficient_candidates(2, theta, 0, ctx)


def test_q0_oracle_coefficients_vanish():
    oracle = asymp.q0_expansion(2, theta, 2, Part.CI, Provenance.RESIDUE_ORACLE, ctx)
    with ctx.workdps():
        assert all(abs(term.coeff) <= ctx.eps(15) for term in oracle.terms)
    for pole in (2, 3):
        candidates = asymp.q0_coefficient_candidates(2, theta, pole, ctx)
        with ctx.workdps():
            assert abs(candidates["parity_corrected"]) <= ctx.eps(15)
            assert abs(candidates["printed"]) > mpf("1e-6")


def test_q0_ci_closed_form_vanishes_at_half():
    half = ThetaParam.of("0.5", ctx)
    ci = asymp.q0_expansion(2, half, 3, Part.CI, Provenance.CLOSED_FORM, ctx)
    with ctx.workdps():
        assert all(abs(term.coeff) <= ctx.eps(15) for term in ci.terms)


def test_si_leading_residue_is_the_clausen_sine():
    residue = mellin.residue_at(lambda s: mellin.si_integrand(s, 2, theta, ctx), 1, ctx)
    candidates = asymp.si_leading_candidates(2, theta, ctx)
    assert close(candidates["clausen"], residue.value)
    assert not close(candidates["printed_gamma"], residue.value)


def test_printed_combined_formula_reconciliation():
    rows = asymp.reconcile_combined(2, theta, 2, ctx)
    assert [row.power for row in rows] == [-1, -2, -3, -4]
    assert [row.power for row in rows if not row.matches] == [-1]


# ================================
# EVALUATION AND ORDERS
# ================================

def test_eval_expansion():
    expansion = AsymptoticExpansion(
        terms=(ExpansionTerm(power=-1, coeff=mpc(2)), ExpansionTerm(power=2, coeff=mpc(3))),
        regime=Regime.Q_TO_1,
        order=2,
        remainder_exponent=3,
        provenance=Provenance.CLOSED_FORM
    )
    assert close(asymp.eval_expansion(expansion, "0.5", ctx), mpf("4.75"))
    with pytest.raises(ParameterError):
        asymp.eval_expansion(expansion, 0, ctx)


def test_eval_expansion_is_additive_over_terms():
    expansion = asymp.q1_expansion(2, theta, 6, Provenance.CLOSED_FORM, ctx)
    even = replace(expansion, terms=tuple(t for t in expansion.terms if t.power % 2 == 0))
    odd = replace(expansion, terms=tuple(t for t in expansion.terms if t.power % 2 != 0))
    assert even.terms and odd.terms
    for x in ["0.3", "0.05"]:
        whole = asymp.eval_expansion(expansion, x, ctx)
        parts = asymp.eval_expansion(even, x, ctx), asymp.eval_expansion(odd, x, ctx)
        with ctx.workdps():
            assert close(whole, parts[0] + parts[1])


def test_empirical_order():
    xs = [0.2, 0.1, 0.05, 0.025]
    assert asymp.empirical_order(xs, [x ** 2 for x in xs]) == pytest.approx(2.0)
    with pytest.raises(UnusableDataError):
        asymp.empirical_order(xs[:2], [1, 2])
    with pytest.raises(UnusableDataError):
        asymp.empirical_order(xs, [1, 0, 1, 1])
    with pytest.raises(UnusableDataError):
        asymp.empirical_order(xs, [1e-40, 1e-40, 1, 1], floor=1e-30)


def test_q1_order_law():
    xs = ["0.2", "0.1", "0.05", "0.025"]
    expansion = asymp.q1_expansion(2, theta, 3, Provenance.CLOSED_FORM, ctx)
    errs = []
    for x in xs:
        value = asymp.eval_expansion(expansion, x, ctx)
        reference = qfun.li2q(ExponentialParam.of(x, 2, theta, ctx), ctx)
        with ctx.workdps():
            errs.append(abs(value - reference))
    assert asymp.empirical_order(xs, errs, floor=ctx.eps(12)) == pytest.approx(4, abs=0.3)


def test_optimal_truncation():
    order = asymp.optimal_truncation(2, theta, "0.1", Regime.Q_TO_1, ctx)
    assert 1 <= order <= asymp.MAX_TRUNCATION_ORDER
    assert asymp.optimal_truncation(2, theta, 10, Regime.Q_TO_0, ctx) == 1


def test_smaller_x_allows_a_longer_expansion():
    # near theta = 0.1 the coefficients grow like (n-1)! / 3.95^n
    near_zero = ThetaParam.of("0.1", ctx)
    coarse = asymp.optimal_truncation(2, near_zero, "0.5", Regime.Q_TO_1, ctx)
    medium = asymp.optimal_truncation(2, near_zero, "0.2", Regime.Q_TO_1, ctx)
    fine = asymp.optimal_truncation(2, near_zero, "0.01", Regime.Q_TO_1, ctx)
    assert coarse < medium < asymp.MAX_TRUNCATION_ORDER - 10
    assert fine > medium
    assert fine >= asymp.MAX_TRUNCATION_ORDER - 1
