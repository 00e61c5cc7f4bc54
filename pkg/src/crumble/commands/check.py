import json
from logging import getLogger
from typing import Optional, TextIO

import click
from pydantic.json import pydantic_encoder

from crumble.click_utils.set_from_config import SetOptionFromConfigCallback
from crumble.constants import Mode
from crumble.decorators import mode_option, pass_app_context
from crumble.harness import CheckFailure, check_many
from crumble.models import AppContext
from crumble.terminal_output import print_failures, print_header, print_no_issues_found
from crumble.utils import recursion_limit

_LOG = getLogger(__name__)


@click.command("check", help="Cross-check the machine against the reference evaluator on random terms.")
@mode_option
@click.option("--count", type=click.IntRange(min=1), callback=SetOptionFromConfigCallback("count"))
@click.option("--seed", type=int, callback=SetOptionFromConfigCallback("seed"), help="Seed of the first term.")
@click.option("--max-size", type=click.IntRange(min=1), callback=SetOptionFromConfigCallback("max_size"))
@click.option("--fuel", type=click.IntRange(min=0), callback=SetOptionFromConfigCallback("fuel"))
@click.option("--workers", type=click.IntRange(min=1), callback=SetOptionFromConfigCallback("workers"))
@click.option("--report", "report_file", type=click.File("w"), default=None, help="Write every report as JSON.")
@pass_app_context()
def check_command(
    app_context: AppContext,
    mode: Mode,
    count: int,
    seed: int,
    max_size: int,
    fuel: int,
    workers: int,
    report_file: Optional[TextIO],
):
    print_header(f"Checking {count} {mode.value} terms", level=2)
    with recursion_limit(app_context.config.recursion_limit):
        reports = check_many(mode, count, seed, max_size, fuel, workers, merge_sub_var=app_context.config.merge_sub_var)

    if report_file is not None:
        json.dump([report.dict() for report in reports], report_file, default=pydantic_encoder, indent=2)
        _LOG.debug(f"Wrote {len(reports)} reports to {report_file.name}.")

    failures = [report for report in reports if not report.passed]
    if failures:
        print_failures(failures)
        raise CheckFailure(failures)

    exhausted = sum(report.both_exhausted for report in reports)
    principal = sum(report.principal_count for report in reports)
    click.echo(f"{count} terms, {principal} principal transitions, {exhausted} out of fuel.")
    print_no_issues_found()
