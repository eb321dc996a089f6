"""Python interface to the latgad C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import LatgadError, __doc__  # noqa: F401
