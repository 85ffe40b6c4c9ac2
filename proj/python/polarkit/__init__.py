"""Polar code construction, density evolution, bounds and SC simulation."""

from ._polarkit import *  # noqa: F401,F403
from ._polarkit import __doc__  # noqa: F401
