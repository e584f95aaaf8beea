# fairconf/main.py
from typing import Optional

import typer

from fairconf.cli.router import register_commands
from fairconf.core.logging import configure_logging

app = typer.Typer(
    name="fairconf",
    help="Fair virtual-conference scheduling: generate, solve, evaluate and sweep.",
    add_completion=False,
    no_args_is_help=True
)


@app.callback()
def main(
        log_level: Optional[str] = typer.Option(
            None, "--log-level", envvar="FAIRCONF_LOG", help="error, warning, info or debug"
        ),
        log_format: Optional[str] = typer.Option(None, "--log-format", help="json or text")
) -> None:
    """
    Configure logging before any subcommand runs.
    """
    configure_logging(log_level, log_format)


register_commands(app)


if __name__ == "__main__":
    app()
