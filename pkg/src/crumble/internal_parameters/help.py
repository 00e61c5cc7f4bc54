"""Adds ``-h`` alongside the built-in ``--help`` option; the exit codes go into the root epilog."""
from typing import Union

import click

from crumble.constants import ExitCode

_EXIT_CODE_MEANINGS = {
    ExitCode.OK: "success",
    ExitCode.CHECK_FAILURE: "a cross-check failed",
    ExitCode.USAGE_ERROR: "usage or parse error",
    ExitCode.OPEN_TERM: "free variable met in closed mode",
}


def exit_codes_epilog() -> str:
    return "Exit codes: " + "; ".join(f"{code.value} {meaning}" for code, meaning in _EXIT_CODE_MEANINGS.items())


def _print_help(ctx: click.Context, param: Union[click.Option, click.Parameter], value: bool):
    del param
    if not value or ctx.resilient_parsing:
        return
    click.echo(ctx.get_help())
    ctx.exit()


extended_help_option = click.option(
    "-h",
    "--help",
    is_flag=True,
    expose_value=False,
    is_eager=True,
    callback=_print_help,
    help="Show this message and exit.",
)
