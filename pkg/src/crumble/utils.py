import sys
from contextlib import contextmanager
from typing import Iterator


@contextmanager
def recursion_limit(limit: int) -> Iterator[None]:
    """Raise the interpreter recursion limit to at least ``limit`` for the duration of the block.

    Translation, read-back and copying recurse along the nesting of abstraction bodies.
    """
    previous = sys.getrecursionlimit()
    sys.setrecursionlimit(max(previous, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(previous)
