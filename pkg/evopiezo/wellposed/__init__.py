"""
Package that contains the well-posedness checks: symmetric Gauss steps,
the structural check of the full system and the eigenvalue oracle.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .report import CERTIFIED
from .report import FALSIFIED
from .report import INCONCLUSIVE
from .report import ConditionResult
from .report import WellposednessReport
from .gauss import BlockSymMatrix
from .gauss import gauss_reduce
from .gauss import inertia
from .abstract import NU_CAP
from .abstract import CHECK_TOL
from .abstract import check_abstract
from .abstract import check_range_nullspace
from .abstract import nu_schedule
from .abstract import search_pencil
from .theorem1 import check_theorem1
from .theorem1 import gauss_certificate
from .theorem1 import verdict_crosscheck
