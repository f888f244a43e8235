"""
CLI router
"""

import typer

from qdilog.cli.commands import crossover, evaluate, expand, integral, verify
from qdilog.core.config import settings

cli_router = typer.Typer(
    name=settings.APP_NAME,
    help="High-precision q-dilogarithm: evaluation, identity verification, expansions and Barnes integrals",
    add_completion=False,
    no_args_is_help=True,
)

# Register command modules
cli_router.command("eval")(evaluate.eval_command)
cli_router.command("verify")(verify.verify_command)
cli_router.command("expand")(expand.expand_command)
cli_router.command("integral")(integral.integral_command)
cli_router.command("crossover")(crossover.crossover_command)
