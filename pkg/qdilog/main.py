"""
Main CLI application
"""

import logging
import sys

import typer

from qdilog.cli.router import cli_router
from qdilog.core.config import settings


def configure_logging(level: str = settings.LOG_LEVEL) -> None:
    """Send log records to stderr so stdout carries only JSON and CSV."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr
    )


def create_application() -> typer.Typer:
    """
    Create and configure the CLI application

    Returns:
        typer.Typer: Configured application with every subcommand registered
    """
    configure_logging()
    return cli_router


# Create the application instance
app = create_application()


if __name__ == "__main__":
    app(prog_name=settings.APP_NAME)
