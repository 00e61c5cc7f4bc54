import sys
from logging import getLogger
from typing import Any, List, Optional, TextIO

import click

from crumble.click_utils.set_from_config import SetOptionFromConfigCallback
from crumble.constants import Mode
from crumble.decorators import pass_app_context
from crumble.harness import FAMILIES, bench, loglog_slope, overhead_constant, write_csv
from crumble.models import AppContext

_LOG = getLogger(__name__)


class SizesParamType(click.ParamType):
    """Comma separated positive sizes, e.g. ``8,16,32``; config files may give a list."""

    name = "sizes"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> List[int]:
        if isinstance(value, list):
            return value
        try:
            sizes = [int(part) for part in str(value).split(",") if part.strip()]
        except ValueError:
            self.fail(f"'{value}' is not a comma separated list of integers.", param, ctx)
        if not sizes or min(sizes) < 1:
            self.fail("Sizes must be positive and at least one must be given.", param, ctx)
        return sizes


@click.command("bench", help="Count transitions on a family of terms and fit the log-log slope.")
@click.option("--family", type=click.Choice(sorted(FAMILIES)), callback=SetOptionFromConfigCallback("family"))
@click.option("--sizes", type=SizesParamType(), callback=SetOptionFromConfigCallback("sizes"))
@click.option(
    "--mode",
    type=click.Choice([mode.value for mode in Mode]),
    default=Mode.OPEN.value,
    show_default=True,
    callback=lambda ctx, param, value: Mode(value),
)
@click.option("--fuel", type=click.IntRange(min=0), callback=SetOptionFromConfigCallback("fuel"))
@click.option("--csv", "csv_file", type=click.File("w"), default=None, help="Write the table here instead of stdout.")
@pass_app_context()
def bench_command(
    app_context: AppContext,
    family: str,
    sizes: List[int],
    mode: Mode,
    fuel: int,
    csv_file: Optional[TextIO],
):
    rows = bench(family, sizes, mode, fuel, app_context.config.recursion_limit)
    write_csv(rows, csv_file or sys.stdout)
    if len(rows) > 1:
        summary = f"log-log slope: {loglog_slope(rows):.3f}, transitions <= {overhead_constant(rows):.3f} * (p + |t|)"
        if csv_file is None:
            _LOG.info(summary)
        else:
            click.echo(summary)
