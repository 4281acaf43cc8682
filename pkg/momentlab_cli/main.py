import logging
import os
from pathlib import Path
from typing import Optional

import typer
from typing_extensions import Annotated

from momentlab_engine.core import ConfigException, configure_logging, load_app_config
from momentlab_engine.core.config_loader import DEFAULT_CONFIG_PATH

from .commands import (
    characters_cmds,
    config_cmds,
    kernel_cmds,
    moment_cmds,
    norms_cmds,
    poincare_cmds,
    verify_cmds,
    whittaker_cmds,
)
from .utils import EXIT_INVALID_INPUT, CliState

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="momentlab-cli",
    help="MomentLab: numerical verification of GL(2) moment identities over number fields.",
    add_completion=False,
    no_args_is_help=True,
)

app.command("kernel")(kernel_cmds.kernel)
app.command("characters")(characters_cmds.characters)
app.command("whittaker")(whittaker_cmds.whittaker)
app.command("poincare")(poincare_cmds.poincare)
app.command("norms")(norms_cmds.norms)
app.command("moment")(moment_cmds.moment)
app.command("verify")(verify_cmds.verify)
app.add_typer(config_cmds.app, name="config", help="Inspect the MomentLab configuration.")


def _show_version(value: bool) -> None:
    if value:
        from . import __version__
        typer.echo(f"momentlab-cli version: {__version__}")
        raise typer.Exit()


@app.callback()
def main_callback(
    ctx: typer.Context,
    config_file: Annotated[
        Optional[Path],
        typer.Option("--config", help="Path to the MomentLab configuration file.", envvar="MOMENTLAB_CONFIG_PATH", dir_okay=False),
    ] = None,
    workers: Annotated[
        Optional[int],
        typer.Option("--workers", help="Threads for grid evaluations; configuration default when omitted.", min=1, max=256),
    ] = None,
    deterministic: Annotated[
        Optional[bool],
        typer.Option("--deterministic/--no-deterministic", help="Keep row order independent of scheduling."),
    ] = None,
    version: Annotated[
        bool,
        typer.Option("--version", "-v", help="Show the application version and exit.", callback=_show_version, is_eager=True),
    ] = False,
):
    """
    MomentLab CLI main entry point.
    """
    path = os.fspath(config_file) if config_file is not None else DEFAULT_CONFIG_PATH
    try:
        config = load_app_config(path, force_reload=True)
    except ConfigException as error:
        typer.secho(error.message, fg=typer.colors.RED, err=True)
        raise typer.Exit(EXIT_INVALID_INPUT) from error
    configure_logging(config.logging_config_path)
    ctx.obj = CliState(
        workers=workers if workers is not None else config.execution.workers,
        deterministic=deterministic if deterministic is not None else config.execution.deterministic,
    )
    logger.debug("Using %s with %d worker(s)", path, ctx.obj.workers)


if __name__ == "__main__":
    app()
