# fairconf/cli/errors.py
import json
import logging
from pathlib import Path
from typing import List, NoReturn, Optional

import typer
from pydantic import ValidationError

from fairconf.exceptions.datagen_exceptions import DatagenException
from fairconf.exceptions.instance_exceptions import InstanceException
from fairconf.exceptions.metrics_exceptions import MetricsException
from fairconf.exceptions.pipeline_exceptions import (
    EmptyGridError,
    InvalidPlanError,
    SlotsExhaustedError
)
from fairconf.exceptions.solver_exceptions import SolverException

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_SOLVER = 3

VALIDATION_ERRORS = (
    InstanceException,
    DatagenException,
    MetricsException,
    InvalidPlanError,
    EmptyGridError
)
SOLVER_ERRORS = (SolverException, SlotsExhaustedError)


def abort(error: Exception, exit_code: int) -> NoReturn:
    """Write {"code", "message"} to stderr and exit."""
    if isinstance(error, ValidationError):
        code = "ValidationError"
        message = "; ".join(
            f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}" for item in error.errors()
        )
    else:
        code = getattr(error, "code", type(error).__name__)
        message = str(error)
    logger.debug(f"Exiting with {exit_code}: {code}")
    typer.echo(json.dumps({"code": code, "message": message}), err=True)
    raise typer.Exit(exit_code)


def emit(text: str, path: Optional[Path], to_stdout: bool) -> None:
    """Send a command's output to stdout when requested, otherwise to `path`."""
    if to_stdout:
        typer.echo(text, nl=not text.endswith("\n"))
    elif path is not None:
        Path(path).write_text(text)


def require_output(path: Optional[Path], to_stdout: bool, flag: str = "--out") -> None:
    if path is None and not to_stdout:
        raise typer.BadParameter(f"give {flag} or --stdout", param_hint=flag)


def parse_grid(text: str, name: str) -> List[float]:
    """Comma-separated floats; an empty string is an empty grid."""
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise typer.BadParameter(f"not a comma-separated list of numbers: {text!r}", param_hint=name)


def parse_ints(text: str, name: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise typer.BadParameter(f"not a comma-separated list of integers: {text!r}", param_hint=name)
