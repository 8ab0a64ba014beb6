"""Inviscid stratified shear-flow stability laboratory."""

from ._tglab import *  # noqa: F401,F403
from ._tglab import __doc__  # noqa: F401

__version__ = "0.1.0"
