from logging import getLogger
from typing import TextIO

import click

from crumble.crumbling import crumble_size, print_crumble, readback, translate
from crumble.decorators import load_term, pass_app_context, source_argument
from crumble.models import AppContext
from crumble.syntax import free_vars, print_term, term_size
from crumble.utils import recursion_limit

_LOG = getLogger(__name__)


@click.command("translate", help="Crumble a term and print the crumble. Reads stdin when SOURCE is '-'.")
@click.option("--open", "allow_open", is_flag=True, help="Expect free variables, the term is for the open machine.")
@click.option("--readback", "show_readback", is_flag=True, help="Also print the term the crumble reads back to.")
@source_argument
@pass_app_context()
def translate_command(app_context: AppContext, allow_open: bool, show_readback: bool, source: TextIO):
    term = load_term(source)
    free = free_vars(term)
    if free and not allow_open:
        names = ", ".join(sorted(str(var) for var in free))
        _LOG.warning(f"Free variables {names}: the closed machine will not run this term, pass --open if intended.")

    with recursion_limit(app_context.config.recursion_limit):
        crumble = translate(term)
        _LOG.debug(f"Translated a term of size {term_size(term)} into a crumble of size {crumble_size(crumble)}.")
        click.echo(print_crumble(crumble))
        if show_readback:
            click.echo(print_term(readback(crumble)))
