import csv
import time
from logging import getLogger
from typing import Iterable, List, Sequence, TextIO

import numpy as np

from crumble.constants import DEFAULT_FUEL, DEFAULT_RECURSION_LIMIT, Mode
from crumble.crumbling import translate
from crumble.harness.families import FAMILIES
from crumble.machine import iota, run
from crumble.models.reports import BenchRow
from crumble.syntax import Term, term_size
from crumble.utils import recursion_limit

_LOG = getLogger(__name__)


def bench_term(
    term: Term, mode: Mode = Mode.OPEN, fuel: int = DEFAULT_FUEL, *, family: str = "term", n: int = 0
) -> BenchRow:
    """Translate and run one term, timing the whole pipeline."""
    start = time.perf_counter()
    result = run(iota(translate(term)), mode, fuel, debug=False)
    wall_time = time.perf_counter() - start
    if result.exhausted:
        _LOG.warning(f"Fuel of {fuel} transitions exhausted on {family} n={n}.")
    return BenchRow(
        family=family,
        n=n,
        principal=result.metrics.principal_count,
        transitions=result.metrics.total_transitions,
        term_size=term_size(term),
        exhausted=result.exhausted,
        wall_time=wall_time,
    )


def bench(
    family: str,
    sizes: Iterable[int],
    mode: Mode = Mode.OPEN,
    fuel: int = DEFAULT_FUEL,
    limit: int = DEFAULT_RECURSION_LIMIT,
) -> List[BenchRow]:
    try:
        build = FAMILIES[family]
    except KeyError:
        raise ValueError(f"Unknown family '{family}', expected one of {', '.join(sorted(FAMILIES))}.") from None

    rows = []
    with recursion_limit(limit):
        for n in sizes:
            row = bench_term(build(n), mode, fuel, family=family, n=n)
            _LOG.debug(f"{family} n={n}: {row.transitions} transitions in {row.wall_time:.4f}s")
            rows.append(row)
    return rows


def loglog_slope(rows: Sequence[BenchRow]) -> float:
    """Slope of the least-squares line through ``(log n, log transitions)``."""
    if len(rows) < 2:
        raise ValueError("A slope needs at least two sizes.")
    sizes = np.log([row.n for row in rows])
    transitions = np.log([row.transitions for row in rows])
    slope, _ = np.polyfit(sizes, transitions, 1)
    return float(slope)


def overhead_constant(rows: Sequence[BenchRow]) -> float:
    """Smallest ``C`` with ``transitions <= C * (principal + term_size)`` on every row."""
    return max(row.transitions / (row.principal + row.term_size) for row in rows)


def write_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(BenchRow.__fields__))
    writer.writeheader()
    for row in rows:
        writer.writerow(row.dict())
