"""Workbench for linear weak head/applicative reduction and their process encodings."""

from lampi._core import *  # noqa: F401,F403
from lampi._core import __doc__  # noqa: F401
