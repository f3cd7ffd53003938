"""Module containing SolverProperties class."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

from ..coefblock import DENSE_CELL_CAP
from ..evolution import SOLVER_TOL
from ..evolution import MAXITER
from ..wellposed import NU_CAP
from ..wellposed import CHECK_TOL

logger = logging.getLogger(__name__)

# Indices into SolverProperties.suppress_wrn
WRN_DENSE_CAP = 0
WRN_UNCERTIFIED = 1
WRN_CROSSCHECK = 2
# Fraction of dense_cap above which the dense fallback is reported
DENSE_WARN_FRACTION = 0.5


class SolverProperties(object):
    """
    Class containing the numerical knobs of the checks and of the time stepping.

    Attributes
    ----------
    tol : float
        Relative residual of each linear solve.
    method : str
        Linear solver, 'direct', 'gmres' or 'bicgstab'.
    maxiter : int
        Iteration limit of the Krylov methods.
    nu_cap : float
        Largest weight of the doubling search of the well-posedness checks.
    check_tol : float
        Strictness tolerance of the well-posedness checks.
    dense_cap : int
        Largest number of cells for which nonlocal or reduced material
        blocks are stored densely.
    suppress_wrn : list of bool
        Warnings which were already shown.
    """

    def __init__(self, tol=SOLVER_TOL, method='direct', maxiter=MAXITER,
                 nu_cap=NU_CAP, check_tol=CHECK_TOL, dense_cap=DENSE_CELL_CAP):
        self.tol = tol
        self.method = method
        self.maxiter = maxiter
        #
        self.nu_cap = nu_cap
        self.check_tol = check_tol
        #
        self.dense_cap = dense_cap
        #
        self.suppress_wrn = [False, False, False]

    def print_warning(self, i, message):
        if not self.suppress_wrn[i]:
            logger.warning(message)
            self.suppress_wrn[i] = True

    def warn_dense(self, nc, what):
        if nc > DENSE_WARN_FRACTION*self.dense_cap:
            self.print_warning(WRN_DENSE_CAP,
                               '{} uses dense storage on {} cells (cap {}). '.format(what, nc, self.dense_cap) +
                               'This warning will not be shown again.')

    def __repr__(self):
        return 'SolverProperties(tol={}, method={!r}, maxiter={}, nu_cap={}, check_tol={}, dense_cap={})'.format(
            self.tol, self.method, self.maxiter, self.nu_cap, self.check_tol, self.dense_cap)
