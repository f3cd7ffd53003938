"""
Package that contains kernel functions and source profiles.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .specfunc import gaussian_kernel
from .specfunc import gaussian_bump
from .specfunc import squared_distances
from .specfunc import sine_profile
from .specfunc import ramp_profile
from .specfunc import step_profile
from .specfunc import TimeProfile
from .specfunc import SpatialProfile
