"""
Package that contains modules for building the discretized system.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .builder import Builder
from .builder_base import BuilderBase
from .funcprop import SolverProperties
from .validation import BlockSpec
from .validation import RegionSpec
