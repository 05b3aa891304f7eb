"""Exact synchronization of permutations over a simulated two-way channel.

The compiled extension carries the full implementation; this package re-exports
its public surface.  Sequences are plain lists of 1-based symbols.
"""

from ._ranksync import *  # noqa: F401,F403
from ._ranksync import __version__  # noqa: F401
