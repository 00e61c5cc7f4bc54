from enum import Enum

ENTRY_POINT: str = "crumble"
PYPROJECT_TOML_FILENAME = "pyproject.toml"
DEBUG_ASSERT_ENV_VAR = "CRUMBLE_DEBUG_ASSERT"
DEFAULT_FUEL = 100_000
DEFAULT_RECURSION_LIMIT = 20_000
STDIN_SOURCE = "-"


class Mode(Enum):
    CLOSED = "closed"
    OPEN = "open"


class ExitCode(Enum):
    OK = 0
    CHECK_FAILURE = 1
    USAGE_ERROR = 2
    OPEN_TERM = 3
