"""
Module containing the quasi-electrostatic reduction.

With E = -grad0 phi and psi = div D the electric field is eliminated:
phi solves G phi = grad0^T Phi + psi with G = B^T B, B = M grad0 and
M = sqrt(eps + e^T C^-1 e). The reduced system over (v, T, theta_rel, q)
carries the projector P = B G^-1 B^T in its material blocks

    M11 = C^-1 - W P W^T,              W = C^-1 e M^-1,
    M12 = C^-1 lam Theta0 - W P V,     V = M^-1 (p Theta0 + e^T C^-1 lam Theta0),
    M22 = gamma0 + Theta0 lam^T C^-1 lam Theta0 - V^T P V,

and the right-hand side is adjusted by grad0 G^-1 psi_dot.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

import numpy as np
import scipy.sparse as sp
import scipy.linalg as la
import scipy.sparse.linalg as spla

from .mytypes import doublenp
from .errors import ConsistencyError
from .errors import DegenerateGridError
from .errors import InvalidArgumentError
from .errors import NotPositiveDefiniteError
from .coefblock import DENSE_CELL_CAP
from .coefblock import DENSE_NONLOCAL
from .coefblock import CoefficientBlock
from .coefblock import apply_block
from .coefblock import check_dense_cap
from .evolution import DiscreteSystem
from .fields import Field
from .fields import ScalarField
from .fields import StateVector
from .fields import VectorField
from .material import BlockOperator
from .material import invert_constitutive
from .operators import assemble_A_reduced
from .operators import build_grad0
from .wellposed.abstract import CHECK_TOL
from .wellposed.abstract import NU_CAP
from .wellposed.abstract import check_abstract
from .wellposed.abstract import fixed_hypothesis
from .wellposed.abstract import pencil_min_eig
from .wellposed.abstract import search_pencil
from .wellposed.abstract import sym_stack
from .wellposed.gauss import BlockSymMatrix
from .wellposed.gauss import gauss_reduce
from .wellposed.report import ConditionResult
from .wellposed.report import WellposednessReport
from .wellposed.report import CERTIFIED
from .wellposed.report import INCONCLUSIVE
from .wellposed.report import PASS
from .wellposed.report import FAIL
from .wellposed.report import UNDECIDED
from .wellposed.report import verdict_from
from .wellposed.theorem1 import Q_CONDITION

logger = logging.getLogger(__name__)

CROSSCHECK_RTOL = 1e-12
IDENTITY_TOL = 1e-10


def _values(x):
    return x.values if isinstance(x, Field) else np.asarray(x, dtype=doublenp)


def _agree(a, b, rtol, *scales):
    scale = max([np.max(np.abs(a)), np.max(np.abs(b))] + [float(s) for s in scales] + [np.finfo(doublenp).tiny])
    return np.max(np.abs(a - b)) <= rtol*scale


def _spectral_function(blk, name, func, tol=0.0):
    # func applied to the eigenvalues of a symmetric block, per cell or globally
    stack = sym_stack(blk.batch())
    w, v = np.linalg.eigh(stack)
    bad = w[:, 0] <= tol
    if np.any(bad):
        idx = int(np.argmax(bad))
        cell = idx if blk.is_local else None
        raise NotPositiveDefiniteError('{} is not positive definite (eigenvalue {:.6e}{}).'.format(
            name, w[idx, 0], '' if cell is None else ' in cell {}'.format(cell)),
            block=name, cell=cell, eigenvalue=float(w[idx, 0]))
    data = np.matmul(v*func(w)[:, None, :], np.swapaxes(v, 1, 2))
    data = 0.5*(data + np.swapaxes(data, 1, 2))
    if not blk.is_local:
        data = data[0]
    return blk._new(data, symmetric=True)


def build_M(m, tol=CHECK_TOL, inverted=None):
    """
    Principal square root M = sqrt(eps + e^T C^-1 e).

    Parameters
    ----------
    m : MaterialConfig
        Material with symmetric C and epsilon.
    tol : float
        Required lower bound on the eigenvalues of eps + e^T C^-1 e.
    inverted : InvertedLaw or None
        Precomputed inverted law.

    Returns
    -------
    CoefficientBlock
        Symmetric 3 by 3 block, of the kind of the material.
    """
    inverted = invert_constitutive(m) if inverted is None else inverted
    s = inverted.D_E
    if not s.is_symmetric():
        raise InvalidArgumentError('epsilon + e^T C^-1 e has to be symmetric.')
    return _spectral_function(s, 'epsilon + e^T C^-1 e', np.sqrt, tol)


def inverse_sqrt(blk, name):
    """Inverse principal square root of a symmetric positive definite block."""
    return _spectral_function(blk, name, lambda w: 1.0/np.sqrt(w))


class Projector(object):
    """
    Orthogonal projector P = B (B^T B)^-1 B^T onto the range of an
    injective B.

    Parameters
    ----------
    B : scipy.sparse matrix or array
        n by r matrix with trivial null space.
    materialize : bool
        If True P is formed densely, otherwise it is applied through
        solves with the Gram matrix G = B^T B.
    grid : Grid or None
        Grid of the fields P acts on.

    Attributes
    ----------
    B : scipy.sparse.csr_matrix or array
        The range matrix.
    materialized : bool
        Whether dense() is precomputed.
    """

    def __init__(self, B, materialize=True, grid=None):
        self.grid = grid
        if sp.issparse(B):
            self.B = B.tocsr()
        else:
            self.B = np.atleast_2d(np.asarray(B, dtype=doublenp))
        gram = self.B.T.dot(self.B)
        self.materialized = materialize
        self._P = None
        self._lu = None
        self._cho = None
        if materialize or not sp.issparse(gram):
            gram = gram.toarray() if sp.issparse(gram) else gram
            try:
                self._cho = la.cho_factor(gram)
            except la.LinAlgError:
                raise DegenerateGridError('Gram matrix B^T B is singular, B is not injective.')
        else:
            try:
                self._lu = spla.splu(gram.tocsc())
            except RuntimeError:
                raise DegenerateGridError('Gram matrix B^T B is singular, B is not injective.')
        if materialize:
            self._P = self._form()

    @property
    def shape(self):
        n = self.B.shape[0]
        return (n, n)

    @property
    def rank(self):
        return self.B.shape[1]

    def gram_solve(self, y):
        """Solves (B^T B) x = y."""
        y = np.asarray(y, dtype=doublenp)
        if self._cho is not None:
            return la.cho_solve(self._cho, y)
        return self._lu.solve(y)

    def _bdense(self):
        return self.B.toarray() if sp.issparse(self.B) else self.B

    def _form(self):
        bd = self._bdense()
        P = bd.dot(self.gram_solve(bd.T))
        return 0.5*(P + P.T)

    def apply(self, x):
        """P x for a vector or the columns of a matrix."""
        x = np.asarray(x, dtype=doublenp)
        if self._P is not None:
            return self._P.dot(x)
        return self.B.dot(self.gram_solve(self.B.T.dot(x)))

    def dense(self, cap=DENSE_CELL_CAP):
        """Dense P, formed on demand within the cell cap."""
        if self._P is None:
            if self.grid is not None:
                check_dense_cap(self.grid.nc, cap)
            self._P = self._form()
        return self._P

    def range_solve(self, rhs):
        """B (B^T B)^-1 rhs."""
        return self.B.dot(self.gram_solve(rhs))

    def __repr__(self):
        return 'Projector(shape={}, rank={}, materialized={})'.format(self.shape, self.rank, self.materialized)


def projector_from_range(B, materialize=True, grid=None):
    """Projector onto the range of an injective matrix B."""
    return Projector(B, materialize, grid)


def range_matrix(grid, M, grad0=None):
    """B = M grad0, sparse for local M, dense otherwise."""
    grad0 = build_grad0(grid) if grad0 is None else grad0
    if M.is_local:
        return (M.sparse().dot(grad0)).tocsr()
    return M.data.dot(grad0.toarray())


def build_projector(grid, M, cap=DENSE_CELL_CAP, materialize=None, grad0=None):
    """
    Projector onto the range of M grad0.

    Parameters
    ----------
    grid : Grid
        Grid of the fields.
    M : CoefficientBlock
        Symmetric positive definite 3 by 3 block.
    cap : int
        Cell cap of the dense representation.
    materialize : bool or None
        Dense P; by default if grid.nc <= cap.

    Returns
    -------
    Projector
    """
    if materialize is None:
        materialize = grid.nc <= cap
    elif materialize:
        check_dense_cap(grid.nc, cap)
    if not M.is_local:
        check_dense_cap(grid.nc, cap)
    P = Projector(range_matrix(grid, M, grad0), materialize, grid)
    logger.debug('Built %r on %d cells.', P, grid.nc)
    return P


def compute_Phi(m, T, theta_rel, inverted=None, rtol=CROSSCHECK_RTOL):
    """
    Phi = e^T C^-1 T + (p Theta0 + e^T C^-1 lam Theta0) theta_rel.

    The value is cross-checked against e^T C^-1 (T + lam theta) + p theta
    with theta = Theta0 theta_rel.

    Parameters
    ----------
    m : MaterialConfig
        Material.
    T : VoigtField or array
        Stress.
    theta_rel : ScalarField or array
        Scaled temperature Theta0^-1 theta.

    Returns
    -------
    array
        Flat values of the vector field Phi.
    """
    inverted = invert_constitutive(m) if inverted is None else inverted
    T, theta_rel = _values(T), _values(theta_rel)
    t1 = apply_block(inverted.D_T, T)
    t2 = apply_block(inverted.D_theta, theta_rel)
    phi = t1 + t2
    theta = apply_block(m.theta0_block, theta_rel)
    cinv = inverted.strain_T
    alt = apply_block(m.e.T, apply_block(cinv, T + apply_block(m.lam, theta))) + apply_block(m.p, theta)
    if not _agree(phi, alt, rtol, np.max(np.abs(t1), initial=0.0), np.max(np.abs(t2), initial=0.0)):
        raise ConsistencyError('The two forms of Phi disagree by {:.3e}.'.format(np.max(np.abs(phi - alt))))
    return phi


def reconstruct_E(grid, M, P, Phi, psi, grad0=None):
    """
    Electric field of the quasi-static state.

    Solves div(M^2 E + Phi) = psi with E = -grad0 phi and div = -grad0^T,
    i.e. E = -M^-1 P M^-1 Phi - M^-1 B (B^T B)^-1 psi.

    Parameters
    ----------
    grid : Grid
        Grid.
    M : CoefficientBlock
        Square root block.
    P : Projector
        Projector onto the range of B = M grad0.
    Phi : VectorField or array
        Coupling source of the electric displacement.
    psi : ScalarField or array
        Charge density div D.

    Returns
    -------
    E : VectorField
        Electric field.
    phi : ScalarField
        Potential with E = -grad0 phi.
    """
    grad0 = build_grad0(grid) if grad0 is None else grad0
    Phi, psi = _values(Phi), _values(psi)
    if Phi.shape != (3*grid.nc,) or psi.shape != (grid.nc,):
        raise InvalidArgumentError('Phi and psi do not match the grid.')
    phi = P.gram_solve(grad0.T.dot(Phi) + psi)
    E = -grad0.dot(phi)
    return VectorField(grid, E, name='E'), ScalarField(grid, phi, name='phi')


def _dense_block(data, dims, nc, symmetric=None, cap=DENSE_CELL_CAP):
    return CoefficientBlock(DENSE_NONLOCAL, dims, data, nc, symmetric, cap)


def reduced_blocks(inverted, Minv, Pblk):
    """
    Material blocks of the reduced system.

    Parameters
    ----------
    inverted : InvertedLaw
        Inverted law of the material.
    Minv : CoefficientBlock
        Inverse of M.
    Pblk : CoefficientBlock
        Projector as a nonlocal block.

    Returns
    -------
    M11, M12, M22 : CoefficientBlock
        With M12 from C^-1 lam Theta0 - W P V, checked against
        M11 lam Theta0 - C^-1 e M^-1 P M^-1 p Theta0.
    """
    W = inverted.strain_E @ Minv
    V = Minv @ inverted.D_theta
    WP = W @ Pblk
    M11 = inverted.strain_T - WP @ W.T
    if inverted.strain_T.is_symmetric():
        M11 = M11.sym()
    M12 = inverted.strain_theta - WP @ V
    M22 = inverted.eta_theta - V.T @ Pblk @ V
    M22 = M22.sym()
    return M11, M12, M22


def check_M12_forms(m, inverted, Minv, Pblk, M11, M12, rtol=CROSSCHECK_RTOL):
    """Raises ConsistencyError if the two forms of M12 disagree beyond rtol."""
    lam_th0 = m.lam @ m.theta0_block
    p_th0 = m.p @ m.theta0_block
    alt = M11 @ lam_th0 - inverted.strain_E @ Minv @ Pblk @ Minv @ p_th0
    a, b = M12.dense(), alt.dense()
    if not _agree(a, b, rtol, np.max(np.abs(inverted.strain_theta.dense()))):
        raise ConsistencyError('The two forms of M12 disagree by {:.3e}.'.format(np.max(np.abs(a - b))))
    return float(np.max(np.abs(a - b)))


class ReducedSystem(object):
    """
    Quasi-static system over (v, T, theta_rel, q).

    Attributes
    ----------
    M0_red : BlockOperator
        Symmetric weight [[rho*, 0, 0, 0], [0, M11, M12, 0], [0, M12^T, M22, 0], [0, 0, 0, kappa1]].
    M1_red : BlockOperator
        diag(0, 0, 0, kappa0^-1).
    A_red : SpatialBlock
        Skew operator from -Div, -Grad0, div0, grad.
    P : Projector
        Projector onto the range of M grad0.
    M, Minv : CoefficientBlock
        Square root block and its inverse.
    M11, M12, M22 : CoefficientBlock
        Material blocks of the reduced system.
    grid : Grid
    material : MaterialConfig
    inverted : InvertedLaw
    """

    def __init__(self, M0_red, M1_red, A_red, P, M, Minv, M11, M12, M22, grid, material, inverted):
        self.M0_red = M0_red
        self.M1_red = M1_red
        self.A_red = A_red
        self.P = P
        self.M = M
        self.Minv = Minv
        self.M11 = M11
        self.M12 = M12
        self.M22 = M22
        self.grid = grid
        self.material = material
        self.inverted = inverted
        self._Q = None

    @property
    def Q(self):
        """Q = P M^-1 e^T C^-1/2, dense."""
        if self._Q is None:
            self._Q = build_Q(self.material, self.Minv, self.P)
        return self._Q

    def reconstruct(self, state, psi):
        """
        Electric field and potential of a reduced state.

        Parameters
        ----------
        state : StateVector
            Reduced state.
        psi : ScalarField or array
            Charge density at the time of the state.

        Returns
        -------
        E : VectorField
        phi : ScalarField
        """
        Phi = compute_Phi(self.material, state.T, state.theta_rel, self.inverted)
        return reconstruct_E(self.grid, self.M, self.P, Phi, psi, self.A_red.grad0)

    def rhs(self, F0, F1, F4, F5, psi_dot):
        return adjust_rhs(F0, F1, F4, F5, psi_dot, self.material, self.Minv, self.P, self.inverted)

    def discrete_system(self):
        return DiscreteSystem(self.M0_red, self.M1_red, self.A_red, self.grid)

    def __repr__(self):
        return 'ReducedSystem(grid={!r})'.format(self.grid)


def assemble_reduced(m, P=None, grid=None, M=None, cap=DENSE_CELL_CAP):
    """
    Assemble the quasi-static system.

    Parameters
    ----------
    m : MaterialConfig
        Material with sigma = 0.
    P : Projector or None
        Projector onto the range of M grad0, built if None.
    grid : Grid or None
        Grid, taken from P if None.
    M : CoefficientBlock or None
        Square root block, built if None.
    cap : int
        Cell cap; the reduced material blocks are dense.

    Returns
    -------
    ReducedSystem
    """
    if not m.sigma.is_zero():
        raise InvalidArgumentError('sigma has to vanish in the quasi-static reduction.')
    grid = P.grid if grid is None and P is not None else grid
    if grid is None:
        raise InvalidArgumentError('The quasi-static reduction needs a grid.')
    if grid.nc != m.nc:
        raise InvalidArgumentError('Material has {} cells, grid has {}.'.format(m.nc, grid.nc))
    check_dense_cap(grid.nc, cap)
    inverted = invert_constitutive(m)
    M = build_M(m, inverted=inverted) if M is None else M
    A_red = assemble_A_reduced(grid)
    P = build_projector(grid, M, cap, grad0=A_red.grad0) if P is None else P
    Minv = M.inv('M')
    Pblk = _dense_block(P.dense(cap), (3, 3), grid.nc, symmetric=True, cap=cap)
    M11, M12, M22 = reduced_blocks(inverted, Minv, Pblk)
    check_M12_forms(m, inverted, Minv, Pblk, M11, M12)
    M0_red = BlockOperator([[m.rho_star, None, None, None],
                            [None, M11, M12, None],
                            [None, M12.T, M22, None],
                            [None, None, None, m.kappa1]], [3, 6, 1, 3], grid.nc)
    M1_red = BlockOperator([[None]*4, [None]*4, [None]*4, [None, None, None, m.kappa0_inv]],
                           [3, 6, 1, 3], grid.nc)
    logger.info('Assembled the quasi-static system on %d cells.', grid.nc)
    return ReducedSystem(M0_red, M1_red, A_red, P, M, Minv, M11, M12, M22, grid, m, inverted)


def adjust_rhs(F0, F1, F4, F5, psi_dot, m, Minv, P, inverted=None):
    """
    Right-hand side of the reduced system.

    G = (F0, F1 + C^-1 e y, F4 + (Theta0 p^T + Theta0 lam^T C^-1 e) y, F5)
    with y = M^-1 B (B^T B)^-1 psi_dot.

    Parameters
    ----------
    F0, F1, F4, F5 : Field or array
        Sources of the velocity, stress, heat and heat flux rows.
    psi_dot : ScalarField or array
        Time derivative of the charge density.
    m : MaterialConfig
        Material.
    Minv : CoefficientBlock
        Inverse of M.
    P : Projector
        Projector onto the range of B.

    Returns
    -------
    StateVector
        Reduced right-hand side.
    """
    inverted = invert_constitutive(m) if inverted is None else inverted
    y = apply_block(Minv, P.range_solve(_values(psi_dot)))
    grid = P.grid
    g1 = _values(F1) + apply_block(inverted.strain_E, y)
    g4 = _values(F4) + apply_block(inverted.eta_E, y)
    return StateVector(grid, reduced=True, v=_values(F0), T=g1, theta_rel=g4, q=_values(F5))


def build_Q(m, Minv, P):
    """Q = P M^-1 e^T C^-1/2 as a dense 3*Nc by 6*Nc matrix."""
    cm12 = inverse_sqrt(m.C, 'C')
    right = (Minv @ m.e.T @ cm12).dense()
    return P.apply(right)


def _search_reduced(name, value, tol):
    vals = np.linalg.eigvalsh(0.5*(value + value.T))
    val = vals[0]
    status = PASS if val >= tol else (FAIL if val <= 0 else UNDECIDED)
    return ConditionResult(name, status, witness=val)


def check_theorem2(m, P=None, nu_cap=NU_CAP, tol=CHECK_TOL, grid=None, reduced=None):
    """
    Check the well-posedness hypotheses of the quasi-static system.

    Parameters
    ----------
    m : MaterialConfig
        Material with sigma = 0 and symmetric C, epsilon, rho_star, kappa1.
    P : Projector or None
        Projector onto the range of M grad0, built if None.
    nu_cap, tol : float
        Search cap and strictness tolerance.
    grid : Grid or None
        Grid, taken from P if None.
    reduced : ReducedSystem or None
        Assembled system, built if None.

    Returns
    -------
    WellposednessReport
        Conditions C, rho_star, M >> 0, the nu search for the heat flux,
        1 - Q^T Q >> 0 and gamma0 - Theta0 p^T M^-1 P (1 - Q Q^T)^-1 P M^-1 p Theta0 >> 0;
        informational lines carry the residuals of the algebraic identities.
        The eigenvalue oracle on the assembled reduced operators is attached.
    """
    if not m.sigma.is_zero():
        raise InvalidArgumentError('sigma has to vanish in the quasi-static reduction.')
    for name in ('C', 'rho_star', 'kappa1', 'epsilon'):
        if not getattr(m, name).is_symmetric():
            raise InvalidArgumentError('{} has to be symmetric.'.format(name))
    local = m.is_local
    st = lambda blk: blk.batch(not local)
    conditions = [fixed_hypothesis('C', st(m.C), tol, local),
                  fixed_hypothesis('rho_star', st(m.rho_star), tol, local)]
    inverted = invert_constitutive(m)
    if not inverted.D_E.is_symmetric():
        raise InvalidArgumentError('M has to be symmetric.')
    try:
        M = build_M(m, tol=0.0, inverted=inverted) if reduced is None else reduced.M
        conditions.append(fixed_hypothesis('M', st(M), tol, local))
    except NotPositiveDefiniteError as err:
        M = None
        conditions.append(ConditionResult('M >> 0', FAIL, witness=err.eigenvalue, cell=err.cell))
    kappa = search_pencil(Q_CONDITION, st(m.kappa1), st(m.kappa0_inv), nu_cap, tol, local)
    conditions.append(kappa)
    notes = []
    if any(c.status == FAIL for c in conditions) or M is None:
        return WellposednessReport(verdict_from(conditions), condition_results=conditions, check='theorem2')
    if reduced is None:
        reduced = assemble_reduced(m, P, grid, M)
    P, Minv = reduced.P, reduced.Minv
    Pd = P.dense()
    Q = reduced.Q
    nt, ne = Q.shape[1], Q.shape[0]
    iq = np.eye(nt) - Q.T.dot(Q)
    cond_q = _search_reduced('1 - Q^T Q >> 0', iq, tol)
    conditions.append(cond_q)
    if cond_q.status == PASS:
        iqq = np.eye(ne) - Q.dot(Q.T)
        u = Pd.dot((Minv @ m.p @ m.theta0_block).dense())
        R = m.gamma0.dense() - u.T.dot(np.linalg.solve(iqq, u))
        R = 0.5*(R + R.T)
        conditions.append(_search_reduced(
            'gamma0 - Theta0 p^T M^-1 P (1 - Q Q^T)^-1 P M^-1 p Theta0 >> 0', R, tol))
        lhs = Q.dot(np.linalg.solve(iq, Q.T))
        rhs = -Pd + Pd.dot(np.linalg.solve(iqq, Pd))
        ident = np.max(np.abs(lhs - rhs))/max(1.0, np.max(np.abs(rhs)))
        conditions.append(ConditionResult('Q (1 - Q^T Q)^-1 Q^T = -P + P (1 - Q Q^T)^-1 P',
                                          PASS if ident <= IDENTITY_TOL else FAIL, witness=ident,
                                          informational=True))
        mid = BlockSymMatrix(np.block([[reduced.M11.dense(), reduced.M12.dense()],
                                       [reduced.M12.T.dense(), reduced.M22.dense()]]),
                             [reduced.M11.shape[0], reduced.M22.shape[0]])
        schur = gauss_reduce(mid, 0)[0].block(1, 1)[0]
        sres = np.max(np.abs(schur - R))/max(1.0, np.max(np.abs(R)))
        conditions.append(ConditionResult('M22 - M12^T M11^-1 M12 = gamma0 - Theta0 p^T M^-1 P (1 - Q Q^T)^-1 P M^-1 p Theta0',
                                          PASS if sres <= IDENTITY_TOL else FAIL, witness=sres,
                                          informational=True))
    verdict = verdict_from(conditions)
    M0d, M1d = reduced.M0_red.dense(), reduced.M1_red.dense()
    oracle = check_abstract(M0d, M1d, nu_cap=nu_cap, tol=tol)
    notes.append('eigenvalue oracle: {}'.format(oracle.verdict))
    nu_star = c0 = oracle_min = None
    if verdict == CERTIFIED:
        nu_star = kappa.nu
        c0 = reduced_certificate(reduced, nu_star)
        oracle_min = pencil_min_eig(M0d, M1d, nu_star)
        if c0 < tol:
            notes.append('certified bound c0 = {:.6e} below tol at nu = {:g}'.format(c0, nu_star))
            verdict = INCONCLUSIVE
            nu_star = None
    if oracle.verdict != verdict:
        logger.warning('Quasi-static check is %s but the eigenvalue oracle is %s.', verdict, oracle.verdict)
    logger.info('Quasi-static check: %s, nu* = %s, c0 = %s.', verdict, nu_star, c0)
    return WellposednessReport(verdict, nu_star, c0, conditions, oracle_min, check='theorem2', notes=notes)


def reduced_certificate(reduced, nu):
    """
    Lower bound on the minimal eigenvalue of nu*M0_red + sym(M1_red) from
    one Gauss step on the (T, theta_rel) block.
    """
    m = reduced.material
    mid = BlockSymMatrix(np.block([[reduced.M11.dense(), reduced.M12.dense()],
                                   [reduced.M12.T.dense(), reduced.M22.dense()]]),
                         [reduced.M11.shape[0], reduced.M22.shape[0]])
    red, L = gauss_reduce(mid, 0)
    parts = [nu*m.rho_star.dense(), nu*red.block(0, 0)[0], nu*red.block(1, 1)[0],
             nu*m.kappa1.dense() + 0.5*(m.kappa0_inv.dense() + m.kappa0_inv.dense().T)]
    d_min = min(np.linalg.eigvalsh(0.5*(part + part.T))[0] for part in parts)
    if d_min <= 0:
        return float(d_min)
    return float(d_min/np.linalg.norm(L, 2)**2)
