from logging import getLogger
from typing import TextIO

import click

from crumble.constants import STDIN_SOURCE, Mode
from crumble.syntax import Term, parse

_LOG = getLogger(__name__)

source_argument = click.argument("source", type=click.File("r"), default=STDIN_SOURCE)

mode_option = click.option(
    "--mode",
    type=click.Choice([mode.value for mode in Mode]),
    default=Mode.CLOSED.value,
    show_default=True,
    callback=lambda ctx, param, value: Mode(value),
    help="Closed machine (Plotkin's calculus) or open machine (fireball calculus).",
)


def load_term(source: TextIO) -> Term:
    """Parse the whole of ``source``; a ``ParseError`` propagates to the root command."""
    text = source.read()
    _LOG.debug(f"Read {len(text)} characters from '{getattr(source, 'name', STDIN_SOURCE)}'.")
    return parse(text)
