"""Task encoding under Renyi-entropy guarantees."""

from ._taskcode import *  # noqa: F401,F403
from ._taskcode import Error, InvalidArgument, NumericFailure, selftest

__all__ = [name for name in dir() if not name.startswith("_")]
