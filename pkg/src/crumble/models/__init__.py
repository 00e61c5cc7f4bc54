from crumble.models.app_context import AppContext
from crumble.models.pyproject_toml import (
    BenchConfig,
    CheckConfig,
    CrumbleConfig,
    Poetry,
    PyprojectToml,
    RunConfig,
    Tool,
)
from crumble.models.reports import BenchRow, CheckReport, MetricsReport, TraceEntryReport
