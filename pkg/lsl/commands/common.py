# lsl/commands/common.py
"""Options, configuration and the response envelope shared by every subcommand."""
import logging
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click
from pydantic import ValidationError

from lsl.errors import InputValidationError, LSLError
from lsl.exports import to_json
from lsl.schemas import RunConfig, StandardResponse

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 3

DEFAULT_OUT = "lsl_out"


class ConsistencyError(LSLError):
    """A computed result contradicts a structural identity."""


_OPTIONS = [
    click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Matrix size n."),
    click.option("--spec", default=None, help="Flow eigenvalues 'a1,...,an' or 'default'."),
    click.option("--seed", type=int, default=None, help="Seed for every random draw."),
    click.option("--tol-phase", type=float, default=None, help="Eigenphase tolerance."),
    click.option("--tol-rank", type=float, default=None, help="Relative rank tolerance."),
    click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv", "dot"]),
        default=None,
        help="Output format of the stdout result.",
    ),
    click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory."),
    click.option(
        "--config",
        "config_path",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="YAML or JSON file with default values; flags override it.",
    ),
]


def run_options(func: Callable) -> Callable:
    for option in reversed(_OPTIONS):
        func = option(func)
    return func


def build_config(
    config_path: Optional[str] = None,
    fmt: Optional[str] = None,
    **flags: Any,
) -> RunConfig:
    return RunConfig.load(config_path, format=fmt, **flags)


def out_dir(config: RunConfig) -> Path:
    return Path(config.out or DEFAULT_OUT)


def emit(result: Optional[Dict[str, Any]], message: Optional[str] = None, ok: bool = True) -> None:
    outcome = "success" if ok else "error"
    response = StandardResponse(outcome=outcome, result=result, message=message)
    click.echo(to_json(response.model_dump()), nl=False)


def guarded(func: Callable) -> Callable:
    """Map library failures onto the envelope and exit codes 1 and 3."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            code = func(*args, **kwargs)
        except (InputValidationError, ValidationError) as e:
            logger.error(f"Invalid input: {e}")
            emit(None, message=f"Invalid input: {e}", ok=False)
            ctx.exit(EXIT_INVALID)
        except LSLError as e:
            logger.error(f"{ctx.command.name} failed: {e}")
            emit(None, message=str(e), ok=False)
            ctx.exit(EXIT_FAILURE)
        except ValueError as e:
            logger.error(f"Invalid input: {e}")
            emit(None, message=f"Invalid input: {e}", ok=False)
            ctx.exit(EXIT_INVALID)
        ctx.exit(code or EXIT_OK)

    return wrapper
