"""
Module containing the eigenvalue checks of the affine pencil nu*X + Y.

The minimal eigenvalue f(nu) of nu*X + Y is concave in nu. Its right
derivative at nu is the minimal eigenvalue of X compressed to the
eigenspace of f(nu). If f(nu) <= 0 and that derivative is <= 0, then
f stays <= 0 for every larger nu, which is how a pencil is falsified.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

import numpy as np
import scipy.sparse as sp

from ..mytypes import doublenp
from ..errors import InvalidArgumentError
from ..coefblock import SYM_RTOL
from ..coefblock import relative_asymmetry
from .report import ConditionResult
from .report import WellposednessReport
from .report import PASS
from .report import FAIL
from .report import UNDECIDED
from .report import CERTIFIED
from .report import FALSIFIED
from .report import INCONCLUSIVE

logger = logging.getLogger(__name__)

NU_CAP = 2.0**30
CHECK_TOL = 1e-10
# Rounding allowance, in units of machine epsilon times the norm
ROUNDING_FACTOR = 1e3


def nu_schedule(nu_cap=NU_CAP):
    """Doubling weights 1, 2, 4, ... not exceeding nu_cap."""
    if not nu_cap >= 1:
        raise InvalidArgumentError('nu_cap has to be at least 1, got {}.'.format(nu_cap))
    nus = [1.0]
    while nus[-1]*2 <= nu_cap:
        nus.append(nus[-1]*2)
    return nus


def as_stack(a):
    """Dense stack k by n by n from a matrix, sparse matrix or stack."""
    if sp.issparse(a):
        a = a.toarray()
    a = np.asarray(a, dtype=doublenp)
    if a.ndim == 2:
        a = a[None]
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise InvalidArgumentError('Expected square matrices, got shape {}.'.format(a.shape))
    return a


def sym_stack(a):
    return 0.5*(a + np.swapaxes(a, 1, 2))


def fixed_hypothesis(name, stack, tol=CHECK_TOL, local=True):
    """
    Strict positivity of a nu-independent block.

    Returns a passing result if the minimal eigenvalue of the symmetric
    part is >= tol, a failing one if it is <= 0 and an undecided one otherwise.
    """
    vals = np.linalg.eigvalsh(sym_stack(as_stack(stack)))[:, 0]
    cell = int(np.argmin(vals))
    val = vals[cell]
    status = PASS if val >= tol else (FAIL if val <= 0 else UNDECIDED)
    return ConditionResult('{} >> 0'.format(name), status, witness=val, cell=cell if local else None)


def _rounding(nu, x, y):
    return ROUNDING_FACTOR*np.finfo(doublenp).eps*(nu*np.linalg.norm(x) + np.linalg.norm(y))


def _never_positive(nu, x, y):
    """
    True if the minimal eigenvalue of nu*x + y is <= 0 (rounding allowance)
    and does not increase beyond nu.
    """
    vals, vecs = np.linalg.eigh(nu*x + y)
    zeta = _rounding(nu, x, y)
    if vals[0] > zeta:
        return False
    # near-minimal eigenspace
    v = vecs[:, vals <= vals[0] + zeta]
    slope = np.linalg.eigvalsh(v.T.dot(x).dot(v))[0]
    return slope <= _rounding(1.0, x, 0.0)


def search_pencil(name, X, Y, nu_cap=NU_CAP, tol=CHECK_TOL, local=True, nus=None):
    """
    Doubling search for min-eig(nu*X + sym(Y)) >= tol.

    Parameters
    ----------
    name : str
        Condition name used in the result.
    X, Y : array
        Stacks (k, n, n), one matrix per cell, or single matrices.
    nu_cap : float
        Largest tested weight.
    tol : float
        Strictness tolerance.
    local : bool
        If True the stack index is reported as the offending cell.
    nus : list of float or None
        Tested weights, the doubling schedule up to nu_cap by default.

    Returns
    -------
    ConditionResult
        Passing at the first certifying nu if the condition also holds at
        the last tested nu and X has no eigenvalue below -tol; failing if
        X has such an eigenvalue or the pencil is never positive beyond the
        last tested nu; undecided otherwise.
    """
    X = sym_stack(as_stack(X))
    Y = sym_stack(as_stack(Y))
    if X.shape != Y.shape:
        raise InvalidArgumentError('Pencil parts have shapes {} and {}.'.format(X.shape, Y.shape))
    nus = nu_schedule(nu_cap) if nus is None else sorted(float(nu) for nu in nus)
    xmin = np.linalg.eigvalsh(X)[:, 0]
    if np.any(xmin < -tol):
        cell = int(np.argmin(xmin))
        return ConditionResult(name, FAIL, witness=xmin[cell], cell=cell if local else None)
    first = None
    for nu in nus:
        vals = np.linalg.eigvalsh(nu*X + Y)[:, 0]
        if vals.min() >= tol:
            first = nu, vals
            break
    last = nus[-1]
    vals_last = np.linalg.eigvalsh(last*X + Y)[:, 0]
    if first is not None and vals_last.min() >= tol:
        nu, vals = first
        cell = int(np.argmin(vals))
        return ConditionResult(name, PASS, witness=vals[cell], cell=cell if local else None, nu=nu)
    for cell in np.argsort(vals_last):
        if _never_positive(last, X[cell], Y[cell]):
            return ConditionResult(name, FAIL, witness=vals_last[cell], cell=int(cell) if local else None, nu=last)
    cell = int(np.argmin(vals_last))
    logger.info('Condition %s undecided up to nu=%g, min eigenvalue %.3e.', name, last, vals_last[cell])
    return ConditionResult(name, UNDECIDED, witness=vals_last[cell], cell=cell if local else None, nu=last)


def check_symmetric(a, name, rtol=SYM_RTOL):
    """Raises InvalidArgumentError naming the block if a stack is not symmetric."""
    asym = relative_asymmetry(as_stack(a))
    if np.any(asym > rtol):
        raise InvalidArgumentError('{} is not symmetric, relative asymmetry {:.3e}.'.format(name, asym.max()))


def check_abstract(M0, M1, nu_list=None, nu_cap=NU_CAP, tol=CHECK_TOL):
    """
    Brute-force check of the solvability condition on assembled matrices.

    Parameters
    ----------
    M0 : array
        Symmetric matrix, or stack of per-cell matrices.
    M1 : array
        Matrix or stack of the same shape.
    nu_list : list of float or None
        Tested weights, the doubling schedule up to nu_cap by default.
    nu_cap : float
        Largest weight of the default schedule.
    tol : float
        Strictness tolerance.

    Returns
    -------
    WellposednessReport
        c0 and oracle_min_eig are the minimal eigenvalue of
        nu_star*M0 + sym(M1) over the stack.
    """
    M0 = as_stack(M0)
    M1 = as_stack(M1)
    if M0.shape != M1.shape:
        raise InvalidArgumentError('M0 and M1 have shapes {} and {}.'.format(M0.shape, M1.shape))
    check_symmetric(M0, 'M0')
    local = M0.shape[0] > 1
    m0min = np.linalg.eigvalsh(M0)[:, 0]
    if np.any(m0min < -tol):
        cell = int(np.argmin(m0min))
        cond = ConditionResult('M0 >= 0', FAIL, witness=m0min[cell], cell=cell if local else None)
        return WellposednessReport(FALSIFIED, condition_results=[cond], check='abstract')
    cond = search_pencil('nu*M0 + sym(M1) >> 0', M0, M1, nu_cap, tol, local, nu_list)
    if cond.status == PASS:
        return WellposednessReport(CERTIFIED, nu_star=cond.nu, c0=cond.witness, condition_results=[cond],
                                   oracle_min_eig=cond.witness, check='abstract')
    verdict = FALSIFIED if cond.status == FAIL else INCONCLUSIVE
    return WellposednessReport(verdict, condition_results=[cond], check='abstract')


def pencil_min_eig(M0, M1, nu):
    """Minimal eigenvalue of nu*M0 + sym(M1) over a stack."""
    M0 = sym_stack(as_stack(M0))
    M1 = sym_stack(as_stack(M1))
    return float(np.linalg.eigvalsh(nu*M0 + M1)[:, 0].min())


def check_range_nullspace(M0, M1, tol=CHECK_TOL):
    """
    Alternative certificate: M0 strictly positive on its range and sym(M1)
    strictly positive on the null space of M0.

    Eigenvalues of M0 with modulus below tol span the null space. The
    results are informational and never decide a verdict.

    Returns
    -------
    list of ConditionResult
    """
    M0 = sym_stack(as_stack(M0))
    M1 = sym_stack(as_stack(M1))
    local = M0.shape[0] > 1
    range_min, range_cell = np.inf, None
    null_min, null_cell = np.inf, None
    for cell in range(M0.shape[0]):
        vals, vecs = np.linalg.eigh(M0[cell])
        null = np.abs(vals) < tol
        if np.any(~null) and vals[~null].min() < range_min:
            range_min, range_cell = vals[~null].min(), cell
        if np.any(null):
            v = vecs[:, null]
            val = np.linalg.eigvalsh(v.T.dot(M1[cell]).dot(v))[0]
            if val < null_min:
                null_min, null_cell = val, cell
    results = []
    for name, val, cell in (('M0 >> 0 on range(M0)', range_min, range_cell),
                            ('sym(M1) >> 0 on ker(M0)', null_min, null_cell)):
        if cell is None:
            results.append(ConditionResult(name, PASS, informational=True))
            continue
        status = PASS if val >= tol else (FAIL if val <= 0 else UNDECIDED)
        results.append(ConditionResult(name, status, witness=val, cell=cell if local else None, informational=True))
    return results
