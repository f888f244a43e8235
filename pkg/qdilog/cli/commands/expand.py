"""
expand: coefficients of an asymptotic expansion as CSV.
"""

from pathlib import Path
from typing import Optional

import typer

from qdilog.cli.common import build_context, emit, out_option, precision_option, reported_errors
from qdilog.core.exceptions import ParameterError
from qdilog.core.hpnum import to_hp
from qdilog.services import asymp
from qdilog.services.asymp import Part, Provenance
from qdilog.services.specfun import ThetaParam

PROVENANCES = {
    "closed": Provenance.CLOSED_FORM,
    "closed_form": Provenance.CLOSED_FORM,
    "oracle": Provenance.RESIDUE_ORACLE,
    "residue_oracle": Provenance.RESIDUE_ORACLE,
}


def _provenance(name: str) -> Provenance:
    try:
        return PROVENANCES[name]
    except KeyError:
        raise ParameterError(f"Unknown provenance {name!r}; expected closed or oracle")


def expand_command(
    regime: str = typer.Argument(..., help="q1 (x -> 0) or q0 (x -> oo)"),
    zparam: str = typer.Option("2", "--zparam", help="z with Re z > 1, e.g. 2 or 2+0.5i"),
    theta: str = typer.Option("0.3", "--theta", help="Angle parameter 0 < theta < 1"),
    order: int = typer.Option(2, "--order", help="Truncation order N"),
    part: str = typer.Option("combined", "--part", help="q0 only: ci, si or combined"),
    provenance: str = typer.Option("closed", "--provenance", help="closed or oracle"),
    prec: int = precision_option(),
    out: Optional[Path] = out_option(),
) -> None:
    """Print power,coeff_re,coeff_im,provenance rows sorted by power."""
    with reported_errors():
        ctx = build_context(prec)
        source = _provenance(provenance)
        z = to_hp(zparam, ctx)
        angle = ThetaParam.of(theta, ctx)
        if regime == "q1":
            expansion = asymp.q1_expansion(z, angle, order, source, ctx)
        elif regime == "q0":
            try:
                component = Part(part)
            except ValueError:
                raise ParameterError(f"Unknown part {part!r}; expected ci, si or combined")
            expansion = asymp.q0_expansion(z, angle, order, component, source, ctx)
        else:
            raise ParameterError(f"Unknown regime {regime!r}; expected q1 or q0")
        text = expansion.to_csv(ctx)
    emit(text, out)
