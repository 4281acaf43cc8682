import functools
import json
import logging

import click
import typer
from pydantic import ValidationError

from momentlab_engine.core import (
    CheckFailure,
    ConfigException,
    DomainError,
    FieldDataException,
    MomentLabException,
)

logger = logging.getLogger(__name__)

EXIT_CHECK_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERIC_FAILURE = 3


def _exit_code(error: Exception) -> int:
    if isinstance(error, CheckFailure):
        return EXIT_CHECK_FAILURE
    if isinstance(error, (DomainError, FieldDataException, ConfigException, ValidationError, click.UsageError)):
        return EXIT_INVALID_INPUT
    return EXIT_NUMERIC_FAILURE


def failure_record(error: Exception, code: int) -> str:
    record = {
        "status": "error",
        "exit_code": code,
        "error_type": type(error).__name__,
        "message": getattr(error, "message", None) or str(error),
    }
    if isinstance(error, CheckFailure):
        record.update(check=error.check, measured=error.measured, threshold=error.threshold)
    return json.dumps(record, default=str)


def guarded(command):
    """
    Maps library exceptions raised by a command onto the CLI exit codes
    (1 check failure, 2 invalid input, 3 numeric failure) with a one-line JSON record on stderr.
    """
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (MomentLabException, ValidationError, click.UsageError) as error:
            code = _exit_code(error)
            logger.error("%s failed: %s", command.__name__, error)
            typer.echo(failure_record(error, code), err=True)
            raise typer.Exit(code) from error
    return wrapper
