"""
Module containing the structural well-posedness check of the full
thermo-piezo-electro-magnetic system and its eigenvalue cross-check.

The middle (T, E, theta_rel) block of M0 is brought to block diagonal
form by two symmetric Gauss steps, first with pivot T, then with pivot
theta_rel. The E block then reads eps - Theta0 p gamma0^-1 p^T Theta0,
and nu*M0 + sym(M1) is congruent to

    D(nu) = diag(nu rho*, nu C^-1, nu(eps - Theta0 p gamma0^-1 p^T Theta0) + sym(sigma),
                 nu mu, nu gamma0, nu kappa1 + sym(kappa0^-1)).

So the system is well-posed iff rho*, mu, C, gamma0 >> 0 and the two
nu-dependent blocks are >> 0 for large nu.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

import numpy as np

from ..mytypes import doublenp
from ..errors import InvalidArgumentError
from ..errors import PivotSingularError
from ..coefblock import DENSE_CELL_CAP
from ..coefblock import check_dense_cap
from ..coefblock import relative_asymmetry
from ..material import assemble_operators
from ..material import invert_constitutive
from .abstract import CHECK_TOL
from .abstract import NU_CAP
from .abstract import check_abstract
from .abstract import fixed_hypothesis
from .abstract import pencil_min_eig
from .abstract import search_pencil
from .abstract import sym_stack
from .gauss import BlockSymMatrix
from .gauss import gauss_reduce
from .report import ConditionResult
from .report import WellposednessReport
from .report import CERTIFIED
from .report import INCONCLUSIVE
from .report import FAIL
from .report import UNDECIDED
from .report import verdict_from

logger = logging.getLogger(__name__)

SYMMETRY_HYPOTHESES = ('rho_star', 'epsilon', 'mu', 'C', 'gamma0')
FIXED_HYPOTHESES = ('rho_star', 'mu', 'C', 'gamma0')
E_CONDITION = 'nu*(epsilon - Theta0 p gamma0^-1 p^T Theta0) + sym(sigma) >> 0'
Q_CONDITION = 'nu*kappa1 + sym(kappa0_inv) >> 0'
# Allowed excess of the certified bound over the oracle eigenvalue
C0_SLACK = 1e-8


def middle_matrix(inverted, nonlocal_=False):
    """
    The (T, E, theta_rel) block of M0 as a BlockSymMatrix stack: one matrix
    per cell, or a single global matrix for nonlocal materials.
    """
    rows = inverted.middle()
    data = np.concatenate([np.concatenate([blk.batch(nonlocal_) for blk in row], axis=2) for row in rows], axis=1)
    sizes = [row[i].rows*(row[i].nc if nonlocal_ else 1) for i, row in enumerate(rows)]
    return BlockSymMatrix(data, sizes)


def middle_reduction(inverted, nonlocal_=False):
    """
    Two Gauss steps on the middle block, pivot T and then pivot theta_rel.

    Returns
    -------
    middle, reduced : BlockSymMatrix
        The middle block before and after the steps.
    L : array
        Stack of congruence transforms, reduced = L middle L^T.
    """
    middle = middle_matrix(inverted, nonlocal_)
    first, l1 = gauss_reduce(middle, 0)
    reduced, l2 = gauss_reduce(first, 2)
    return middle, reduced, np.matmul(l2, l1)


class GaussCertificate(object):
    """
    Lower bound on the minimal eigenvalue of nu*M0 + sym(M1) from the
    block diagonal form D(nu) and the congruence transform T:
    lambda_min >= lambda_min(D)/|T|^2 whenever lambda_min(D) > 0.

    Attributes
    ----------
    nu : float
        Weight.
    c0 : float
        The bound, minimal over cells; lambda_min(D) itself if not positive.
    cell : int
        Cell of c0.
    d_min : array
        lambda_min(D) per cell.
    transform_norm : array
        |T|_2 per cell.
    middle, reduced : BlockSymMatrix
        Middle block before and after the Gauss steps.
    """

    def __init__(self, nu, c0, cell, d_min, transform_norm, middle, reduced):
        self.nu = nu
        self.c0 = c0
        self.cell = cell
        self.d_min = d_min
        self.transform_norm = transform_norm
        self.middle = middle
        self.reduced = reduced


def _composite_transform(beta_stack):
    # (v, H) -> (v, beta^T v + H)
    k, dv, dh = beta_stack.shape
    r = np.broadcast_to(np.eye(dv+dh, dtype=doublenp), (k, dv+dh, dv+dh)).copy()
    r[:, dv:, :dv] = np.swapaxes(beta_stack, 1, 2)
    return r


def gauss_certificate(m, nu, inverted=None):
    """
    Certified lower bound c0 for nu*M0 + sym(M1) of a symmetric material.

    Parameters
    ----------
    m : MaterialConfig
        Material with symmetric hypotheses blocks.
    nu : float
        Weight.
    inverted : InvertedLaw or None
        Precomputed inverted law.

    Returns
    -------
    GaussCertificate
    """
    nonlocal_ = not m.is_local
    inverted = invert_constitutive(m) if inverted is None else inverted
    middle, reduced, L = middle_reduction(inverted, nonlocal_)
    st = lambda blk: blk.batch(nonlocal_)
    parts = [nu*st(m.rho_star),
             nu*reduced.block(0, 0),
             nu*reduced.block(1, 1) + sym_stack(st(m.sigma)),
             nu*st(m.mu),
             nu*reduced.block(2, 2),
             nu*st(m.kappa1) + sym_stack(st(m.kappa0_inv))]
    d_min = np.min(np.stack([np.linalg.eigvalsh(sym_stack(part))[:, 0] for part in parts]), axis=0)
    tnorm = np.linalg.norm(L, 2, axis=(1, 2))
    if m.beta is not None:
        tnorm = np.maximum(tnorm, np.linalg.norm(_composite_transform(st(m.beta)), 2, axis=(1, 2)))
    c0_cells = np.where(d_min > 0, d_min/tnorm**2, d_min)
    cell = int(np.argmin(c0_cells))
    return GaussCertificate(nu, float(c0_cells[cell]), cell, d_min, tnorm, middle, reduced)


def check_theorem1(m, nu_cap=NU_CAP, tol=CHECK_TOL):
    """
    Check the structural hypotheses of well-posedness for a material.

    Parameters
    ----------
    m : MaterialConfig
        Material, local or nonlocal.
    nu_cap : float
        Largest weight of the doubling search.
    tol : float
        Strictness tolerance.

    Returns
    -------
    WellposednessReport
        Conditions in the order: symmetry (only listed when violated),
        rho_star, mu, C, gamma0 >> 0, then the two nu-dependent conditions.
        For a certified material c0 is the Gauss-step bound at nu_star.
    """
    nonlocal_ = not m.is_local
    local = not nonlocal_
    st = lambda blk: blk.batch(nonlocal_)
    conditions = []
    for name in SYMMETRY_HYPOTHESES:
        blk = getattr(m, name)
        if not blk.is_symmetric():
            asym = relative_asymmetry(st(blk))
            cell = int(np.argmax(asym))
            conditions.append(ConditionResult('{} symmetric'.format(name), UNDECIDED, witness=asym[cell],
                                              cell=cell if local else None))
    fixed = {}
    for name in FIXED_HYPOTHESES:
        fixed[name] = fixed_hypothesis(name, st(getattr(m, name)), tol, local)
        conditions.append(fixed[name])
    if fixed['gamma0'].status != FAIL:
        pth = m.p @ m.theta0_block
        xe = m.epsilon - pth @ m.gamma0.inv('gamma0') @ pth.T
        conditions.append(search_pencil(E_CONDITION, st(xe), st(m.sigma), nu_cap, tol, local))
    conditions.append(search_pencil(Q_CONDITION, st(m.kappa1), st(m.kappa0_inv), nu_cap, tol, local))
    verdict = verdict_from(conditions)
    nu_star = c0 = None
    notes = []
    if verdict == CERTIFIED:
        nu_star = max(c.nu for c in conditions if c.nu is not None)
        c0 = gauss_certificate(m, nu_star).c0
        if c0 < tol:
            notes.append('certified bound c0 = {:.6e} below tol at nu = {:g}'.format(c0, nu_star))
            verdict = INCONCLUSIVE
            nu_star = None
    logger.info('Structural check: %s, nu* = %s, c0 = %s.', verdict, nu_star, c0)
    return WellposednessReport(verdict, nu_star, c0, conditions, check='theorem1', notes=notes)


def _sign_class(vals, tol):
    return np.where(vals >= tol, 1, np.where(vals <= -tol, -1, 0))


class CrosscheckResult(object):
    """
    Agreement of the structural check with the eigenvalue oracle.

    Attributes
    ----------
    theorem1 : WellposednessReport
        Structural check; oracle_min_eig is filled in when certified.
    oracle : WellposednessReport
        check_abstract on the assembled per-cell (or global) matrices.
    agree : bool
        Both verdicts coincide.
    c0_ok : bool
        The certified c0 does not exceed the oracle eigenvalue at nu_star.
    congruence_ok : bool or None
        The Gauss steps kept the sign of the minimal eigenvalue of the
        middle block in every cell; None if the steps were not applicable.
    """

    def __init__(self, theorem1, oracle, agree, c0_ok, congruence_ok):
        self.theorem1 = theorem1
        self.oracle = oracle
        self.agree = agree
        self.c0_ok = c0_ok
        self.congruence_ok = congruence_ok

    @property
    def ok(self):
        return self.agree and self.c0_ok and self.congruence_ok is not False

    def __repr__(self):
        return 'CrosscheckResult(agree={}, c0_ok={}, congruence_ok={})'.format(
            self.agree, self.c0_ok, self.congruence_ok)


def verdict_crosscheck(m, grid, nu_cap=NU_CAP, tol=CHECK_TOL, cap=DENSE_CELL_CAP):
    """
    Compare check_theorem1 with check_abstract on the assembled operators.

    Parameters
    ----------
    m : MaterialConfig
        Material on grid.
    grid : Grid
        Grid, at most cap cells.
    nu_cap, tol : float
        Search cap and strictness tolerance of both checks.
    cap : int
        Cell cap of the dense oracle.

    Returns
    -------
    CrosscheckResult
    """
    check_dense_cap(grid.nc, cap)
    ops = assemble_operators(m, grid)
    if ops.M0.is_local and ops.M1.is_local:
        M0, M1 = ops.M0.cell_batch(), ops.M1.cell_batch()
    else:
        M0, M1 = ops.M0.dense()[None], ops.M1.dense()[None]
    structural = check_theorem1(m, nu_cap, tol)
    oracle = check_abstract(M0, M1, nu_cap=nu_cap, tol=tol)
    c0_ok = True
    if structural.certified:
        structural.oracle_min_eig = pencil_min_eig(M0, M1, structural.nu_star)
        c0_ok = structural.c0 <= structural.oracle_min_eig + C0_SLACK
    try:
        middle, reduced, _ = middle_reduction(ops.inverted, not m.is_local)
        congruence_ok = bool(np.array_equal(_sign_class(middle.min_eig(), tol),
                                            _sign_class(reduced.min_eig(), tol)))
    except (PivotSingularError, InvalidArgumentError) as err:
        logger.debug('Gauss steps not applicable: %s', err)
        congruence_ok = None
    agree = structural.verdict == oracle.verdict
    if not agree:
        logger.warning('Structural check is %s but the eigenvalue oracle is %s.', structural.verdict, oracle.verdict)
    return CrosscheckResult(structural, oracle, agree, c0_ok, congruence_ok)
