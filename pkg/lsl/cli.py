# lsl/cli.py
import logging

import click

from lsl.commands import flow, maslov, poset, ring, tunnel, verify
from lsl.config import settings

LOG_FORMAT = "[LSL] %(levelname)s: %(message)s"

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
    logging.getLogger().setLevel(level)


@click.group()
@click.version_option(settings.version, prog_name=settings.app_name)
@click.option("--verbose", is_flag=True, help="Debug logging.")
def cli(verbose: bool):
    """Cells, Morse flow, cohomology ring and spectral flow of U(n)."""
    configure_logging(verbose)
    logger.debug(f"{settings.app_name} {settings.version}, environment {settings.environment}")


for command in (poset, ring, flow, tunnel, maslov, verify):
    cli.add_command(command)


def main() -> None:
    cli()
