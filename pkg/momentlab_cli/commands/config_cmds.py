import os
from typing import Optional

import typer
import yaml
from typing_extensions import Annotated

from momentlab_engine.core import ConfigException, load_app_config
from momentlab_engine.core.config_loader import DEFAULT_CONFIG_PATH

app = typer.Typer(help="Inspect the MomentLab configuration.", no_args_is_help=True)


def _config_path() -> str:
    return os.getenv("MOMENTLAB_CONFIG_PATH", DEFAULT_CONFIG_PATH)


@app.command()
def show(
    key: Annotated[Optional[str], typer.Argument(help="Dotted key to show, e.g. 'numerics.rel_tol'.")] = None,
):
    """
    Show the merged configuration (YAML file, .env and MOMENTLAB__ environment overrides).
    """
    try:
        values = load_app_config(_config_path()).model_dump(mode="json")
    except ConfigException as error:
        typer.secho(error.message, fg=typer.colors.RED, err=True)
        raise typer.Exit(2) from error
    if key:
        for part in key.split("."):
            if not isinstance(values, dict) or part not in values:
                typer.secho(f"Unknown configuration key '{key}'.", fg=typer.colors.RED, err=True)
                raise typer.Exit(2)
            values = values[part]
    typer.echo(yaml.safe_dump(values, sort_keys=False).rstrip("\n") if isinstance(values, dict) else str(values))


@app.command()
def locate():
    """
    Show the location of the configuration file in use.
    """
    config_path = _config_path()
    if os.path.exists(config_path):
        typer.echo(f"Current configuration file location: {os.path.abspath(config_path)}")
    else:
        typer.secho(f"Configuration file not found: {os.path.abspath(config_path)}", fg=typer.colors.YELLOW)
        typer.echo("Defaults and MOMENTLAB__ environment variables apply.")
