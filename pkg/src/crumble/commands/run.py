from logging import getLogger
from typing import Optional, TextIO

import click

from crumble.click_utils.set_from_config import SetOptionFromConfigCallback
from crumble.constants import Mode
from crumble.crumbling import translate
from crumble.decorators import load_term, mode_option, pass_app_context, source_argument
from crumble.machine import OpenTermError, iota, run, state_readback_term
from crumble.models import AppContext, MetricsReport, TraceEntryReport
from crumble.syntax import free_vars, print_term
from crumble.utils import recursion_limit

_LOG = getLogger(__name__)


@click.command("run", help="Run a term on the closed or open machine, print its result and metrics JSON.")
@mode_option
@click.option(
    "--fuel",
    type=click.IntRange(min=0),
    default=None,
    callback=SetOptionFromConfigCallback("fuel"),
    help="Maximum number of transitions.",
)
@click.option("--trace", "trace_file", type=click.File("w"), default=None, help="Write transitions as JSON lines.")
@click.option("--metrics", "metrics_file", type=click.File("w"), default=None, help="Also write metrics JSON here.")
@click.option("--snapshots", is_flag=True, help="Add the read-back crumble after every transition to the trace.")
@click.option(
    "--merge-sub-var/--no-merge-sub-var",
    default=None,
    callback=SetOptionFromConfigCallback("merge_sub_var"),
    help="Fire the pop after a variable substitution in the same step.",
)
@source_argument
@pass_app_context()
def run_command(
    app_context: AppContext,
    mode: Mode,
    fuel: int,
    trace_file: Optional[TextIO],
    metrics_file: Optional[TextIO],
    snapshots: bool,
    merge_sub_var: bool,
    source: TextIO,
):
    term = load_term(source)
    free = free_vars(term)
    if mode is Mode.CLOSED and free:
        raise OpenTermError(min(free, key=lambda var: var.id), 0)

    with recursion_limit(app_context.config.recursion_limit):
        result = run(iota(translate(term)), mode, fuel, snapshots=snapshots, merge_sub_var=bool(merge_sub_var))
        final = print_term(state_readback_term(result.state))

    if result.exhausted:
        _LOG.warning(f"Fuel of {fuel} transitions exhausted, the result is not a normal form.")

    if trace_file is not None:
        for entry in result.trace.entries:
            trace_file.write(TraceEntryReport.from_entry(entry).json() + "\n")

    metrics = MetricsReport.from_metrics(result.metrics, result.exhausted)
    click.echo(final)
    click.echo(metrics.json())
    if metrics_file is not None:
        metrics_file.write(metrics.json(indent=2) + "\n")
