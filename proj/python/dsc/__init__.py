"""Discrete singular convolution kernels, operators and solvers."""

from ._dsc import *  # noqa: F401,F403
from ._dsc import __doc__  # noqa: F401
