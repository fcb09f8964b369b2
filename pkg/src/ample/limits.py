"""Depth budget guarding against exponential cylinder tables.

Cocycle tables are dense in the number of cylinders, which grows like the
product of the radices.  Every operation that refines to a new depth calls
:func:`require_depth` first; the default budget of 24 radix levels is far
beyond anything the test suites need but keeps runaway refinements from
allocating huge tables.
"""

from .errors import DepthLimitError

DEFAULT_DEPTH_LIMIT = 24

_depth_limit = DEFAULT_DEPTH_LIMIT


def get_depth_limit() -> int:
    return _depth_limit


def set_depth_limit(limit: int) -> None:
    global _depth_limit
    if limit < 0:
        raise ValueError("depth limit must be nonnegative")
    _depth_limit = limit


def require_depth(depth: int) -> None:
    if depth > _depth_limit:
        raise DepthLimitError(
            f"depth {depth} exceeds the configured limit {_depth_limit}"
        )
