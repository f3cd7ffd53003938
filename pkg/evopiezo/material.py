"""
Module containing the material law: coefficient set, inverted constitutive
relations and the assembly of the operators M0 and M1.

The constitutive relations are

    T = C*strain - e*E - lam*theta
    D = e^T*strain + epsilon*E + p*theta
    Theta0*eta = Theta0*lam^T*strain + Theta0*p^T*E + gamma0*Theta0^{-1}*theta

with gamma0 = Theta0*alpha, and B = mu*H. Solving for the strain gives the
rows of M0 acting on (T, E, Theta0^{-1}*theta).
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
from collections import OrderedDict

import numpy as np

from .mytypes import doublenp
from .errors import InvalidArgumentError
from .coefblock import DENSE_CELL_CAP
from .coefblock import CoefficientBlock
from .coefblock import apply_block
from .coefblock import check_dense_cap
from .coefblock import constant_block
from .coefblock import scalar_field_block
from .fields import Field
from .fields import STATE_LAYOUT
from .operators import assemble_blocks

logger = logging.getLogger(__name__)

# Per-cell dims of the blocks for the 19-component state
STANDARD_DIMS = OrderedDict([
    ('rho_star', (3, 3)), ('C', (6, 6)), ('e', (6, 3)), ('lam', (6, 1)),
    ('p', (3, 1)), ('epsilon', (3, 3)), ('mu', (3, 3)), ('alpha', (1, 1)),
    ('sigma', (3, 3)), ('kappa0_inv', (3, 3)), ('kappa1', (3, 3)), ('beta', (3, 3))])
# Every block 1 by 1, used for hand-checkable material algebra
SCALAR_DIMS = OrderedDict((name, (1, 1)) for name in STANDARD_DIMS)

# Decoupled identity material
DEFAULT_VALUES = dict(rho_star=1.0, C=1.0, e=0.0, lam=0.0, p=0.0, epsilon=1.0, mu=1.0,
                      alpha=1.0, sigma=0.0, kappa0_inv=1.0, kappa1=1.0)
SYMMETRIC_BLOCKS = ('rho_star', 'C', 'epsilon', 'mu', 'kappa1')


class MaterialConfig(object):
    """
    Constitutive coefficients of the thermo-piezo-electro-magnetic material.

    Attributes
    ----------
    rho_star : CoefficientBlock
        Mass density, 3 by 3.
    C : CoefficientBlock
        Elasticity tensor in weighted Voigt form, 6 by 6.
    e : CoefficientBlock
        Piezo-electric coupling, 6 by 3.
    lam : CoefficientBlock
        Thermo-mechanic coupling, 6 by 1.
    p : CoefficientBlock
        Pyro-electric coupling, 3 by 1.
    epsilon : CoefficientBlock
        Permittivity, 3 by 3.
    mu : CoefficientBlock
        Permeability, 3 by 3.
    alpha : CoefficientBlock
        Density times specific heat, 1 by 1.
    theta0 : array
        Reference temperature per cell, positive.
    theta0_block : CoefficientBlock
        Multiplication by theta0, 1 by 1.
    gamma0 : CoefficientBlock
        Theta0*alpha, 1 by 1.
    sigma : CoefficientBlock
        Conductivity term of the Maxwell block, 3 by 3.
    kappa0_inv : CoefficientBlock
        Inverse heat conductivity, 3 by 3.
    kappa1 : CoefficientBlock
        Relaxation coefficient of the heat flux, 3 by 3.
    beta : CoefficientBlock or None
        Piezo-magnetic coupling, 3 by 3.
    nc : int
        Number of cells.
    """

    def __init__(self, rho_star, C, e, lam, p, epsilon, mu, alpha, theta0,
                 sigma, kappa0_inv, kappa1, beta=None):
        self.rho_star = rho_star
        self.C = C
        self.e = e
        self.lam = lam
        self.p = p
        self.epsilon = epsilon
        self.mu = mu
        self.alpha = alpha
        self.sigma = sigma
        self.kappa0_inv = kappa0_inv
        self.kappa1 = kappa1
        self.beta = beta
        self.nc = C.nc
        self._init_theta0(theta0)
        self._init_validate()
        self.gamma0 = self.theta0_block @ self.alpha

    def _init_theta0(self, theta0):
        if isinstance(theta0, CoefficientBlock):
            if not theta0.is_local or theta0.dims != (1, 1):
                raise InvalidArgumentError('theta0 has to be a per-cell scalar.')
            values = theta0.data.ravel()
        elif isinstance(theta0, Field):
            values = theta0.values
        else:
            values = np.asarray(theta0, dtype=doublenp).ravel()
            if values.size == 1:
                values = np.full(self.nc, values[0], dtype=doublenp)
        if values.size != self.nc:
            raise InvalidArgumentError('theta0 needs {} values, got {}.'.format(self.nc, values.size))
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise InvalidArgumentError('theta0 has to be positive and finite in every cell.')
        self.theta0 = np.array(values, dtype=doublenp)
        self.theta0_block = scalar_field_block(self.theta0)

    def _init_validate(self):
        for name, blk in self.blocks().items():
            if not isinstance(blk, CoefficientBlock):
                raise InvalidArgumentError('{} has to be a CoefficientBlock.'.format(name))
            if blk.nc != self.nc:
                raise InvalidArgumentError('{} lives on {} cells, expected {}.'.format(name, blk.nc, self.nc))
        dv, k = self.rho_star.rows, self.C.rows
        m, dh, dq = self.epsilon.rows, self.mu.rows, self.kappa1.rows
        expected = dict(rho_star=(dv, dv), C=(k, k), e=(k, m), lam=(k, 1), p=(m, 1),
                        epsilon=(m, m), mu=(dh, dh), alpha=(1, 1), sigma=(m, m),
                        kappa0_inv=(dq, dq), kappa1=(dq, dq), beta=(dv, dh))
        for name, blk in self.blocks().items():
            if blk.dims != expected[name]:
                raise InvalidArgumentError('{} has dims {}, expected {}.'.format(name, blk.dims, expected[name]))
        if not self.is_local:
            check_dense_cap(self.nc, max(blk.cap for blk in self.blocks().values()))

    def blocks(self):
        """Ordered dictionary of the coefficient blocks, beta only if present."""
        out = OrderedDict()
        for name in STANDARD_DIMS:
            blk = getattr(self, name)
            if blk is not None:
                out[name] = blk
        return out

    @property
    def is_local(self):
        return all(blk.is_local for blk in self.blocks().values())

    @property
    def sizes(self):
        """Per-cell sizes of the unknowns (v, T, E, H, theta_rel, q)."""
        return [self.rho_star.rows, self.C.rows, self.epsilon.rows, self.mu.rows, 1, self.kappa1.rows]

    @property
    def is_standard(self):
        return self.sizes == [ncomp for _, ncomp in STATE_LAYOUT]

    @classmethod
    def uniform(cls, nc, layout='standard', theta0=1.0, cap=DENSE_CELL_CAP, **values):
        """
        Material with the same coefficients in every cell.

        Parameters
        ----------
        nc : int
            Number of cells.
        layout : str
            'standard' for the 19-component dims, 'scalar' for 1 by 1 blocks.
        theta0 : float
            Reference temperature.
        values : dict
            Block name -> scalar or matrix. Missing blocks take the decoupled
            identity material; 'lambda' is accepted for lam and beta is only
            set if given.

        Returns
        -------
        MaterialConfig
        """
        if 'lambda' in values:
            values['lam'] = values.pop('lambda')
        dims = STANDARD_DIMS if layout == 'standard' else SCALAR_DIMS
        unknown = set(values) - set(dims)
        if unknown:
            raise InvalidArgumentError('Unknown material blocks {}.'.format(sorted(unknown)))
        blocks = {}
        for name, bdims in dims.items():
            if name == 'beta' and values.get('beta') is None:
                blocks['beta'] = None
                continue
            val = values.get(name, DEFAULT_VALUES.get(name))
            if isinstance(val, CoefficientBlock):
                blocks[name] = val
            else:
                blocks[name] = constant_block(nc, val, bdims, cap=cap)
        return cls(theta0=theta0, **blocks)

    def replace(self, **blocks):
        """Copy with some blocks replaced."""
        kwargs = dict((name, getattr(self, name)) for name in STANDARD_DIMS)
        kwargs['theta0'] = self.theta0
        kwargs.update(blocks)
        return MaterialConfig(**kwargs)

    def __repr__(self):
        return 'MaterialConfig(nc={}, local={}, beta={})'.format(self.nc, self.is_local, self.beta is not None)


class InvertedLaw(object):
    """
    Constitutive relations solved for the strain.

    (strain, D, Theta0*eta) are expressed through (T, E, Theta0^{-1}*theta)
    by the 3 by 3 block matrix

        [[C^-1,              C^-1 e,                C^-1 lam Theta0],
         [e^T C^-1,          eps + e^T C^-1 e,      p Theta0 + e^T C^-1 lam Theta0],
         [Theta0 lam^T C^-1, Theta0 p^T + Theta0 lam^T C^-1 e,
                             gamma0 + Theta0 lam^T C^-1 lam Theta0]]

    and B = mu H.
    """

    def __init__(self, strain_T, strain_E, strain_theta, D_T, D_E, D_theta,
                 B_H, eta_T, eta_E, eta_theta):
        self.strain_T = strain_T
        self.strain_E = strain_E
        self.strain_theta = strain_theta
        self.D_T = D_T
        self.D_E = D_E
        self.D_theta = D_theta
        self.B_H = B_H
        self.eta_T = eta_T
        self.eta_E = eta_E
        self.eta_theta = eta_theta

    def middle(self):
        """The 3 by 3 grid of blocks acting on (T, E, theta_rel)."""
        return [[self.strain_T, self.strain_E, self.strain_theta],
                [self.D_T, self.D_E, self.D_theta],
                [self.eta_T, self.eta_E, self.eta_theta]]

    def apply(self, T, E, H, theta_rel):
        """
        Recover (strain, D, B, Theta0*eta) from state components.

        Parameters
        ----------
        T, E, H, theta_rel : Field or array
            Stress, electric field, magnetic field and scaled temperature.

        Returns
        -------
        tuple of arrays
            Flat value arrays of strain, D, B and Theta0*eta.
        """
        T, E, H, theta_rel = [x.values if isinstance(x, Field) else np.asarray(x, dtype=doublenp)
                              for x in (T, E, H, theta_rel)]
        strain = (apply_block(self.strain_T, T) + apply_block(self.strain_E, E)
                  + apply_block(self.strain_theta, theta_rel))
        D = (apply_block(self.D_T, T) + apply_block(self.D_E, E)
             + apply_block(self.D_theta, theta_rel))
        B = apply_block(self.B_H, H)
        eta = (apply_block(self.eta_T, T) + apply_block(self.eta_E, E)
               + apply_block(self.eta_theta, theta_rel))
        return strain, D, B, eta


def invert_constitutive(m):
    """
    Solve the constitutive relations for the strain.

    Parameters
    ----------
    m : MaterialConfig
        Material with invertible C.

    Returns
    -------
    InvertedLaw
        Blocks of the inverted law. For symmetric C the lower blocks are
        the literal transposes of the upper ones, and the diagonal blocks
        are symmetrized when their inputs are symmetric.
    """
    cinv = m.C.inv('C')
    c_sym = m.C.is_symmetric()
    if c_sym:
        cinv = cinv.sym()
    th0 = m.theta0_block
    lam_th0 = m.lam @ th0
    strain_T = cinv
    strain_E = cinv @ m.e
    strain_theta = cinv @ lam_th0
    D_E = m.epsilon + m.e.T @ strain_E
    D_theta = m.p @ th0 + m.e.T @ strain_theta
    eta_theta = m.gamma0 + lam_th0.T @ strain_theta
    if c_sym:
        D_T = strain_E.T
        eta_T = strain_theta.T
        eta_E = D_theta.T
        if m.epsilon.is_symmetric():
            D_E = D_E.sym()
        if m.gamma0.is_symmetric():
            eta_theta = eta_theta.sym()
    else:
        D_T = m.e.T @ cinv
        eta_T = th0 @ m.lam.T @ cinv
        eta_E = th0 @ m.p.T + th0 @ m.lam.T @ strain_E
    return InvertedLaw(strain_T, strain_E, strain_theta, D_T, D_E, D_theta,
                       m.mu, eta_T, eta_E, eta_theta)


def forward_constitutive(m, strain, E, theta_rel):
    """
    Evaluate the un-inverted constitutive relations.

    Parameters
    ----------
    m : MaterialConfig
        Material.
    strain, E, theta_rel : array
        Strain (weighted Voigt), electric field and Theta0^{-1}*theta.

    Returns
    -------
    tuple of arrays
        (T, D, Theta0*eta).
    """
    theta = apply_block(m.theta0_block, theta_rel)
    T = apply_block(m.C, strain) - apply_block(m.e, E) - apply_block(m.lam, theta)
    D = apply_block(m.e.T, strain) + apply_block(m.epsilon, E) + apply_block(m.p, theta)
    eta = apply_block(m.theta0_block, apply_block(m.lam.T, strain) + apply_block(m.p.T, E))
    eta = eta + apply_block(m.gamma0, theta_rel)
    return T, D, eta


class BlockOperator(object):
    """
    Square block operator over a state layout, made of coefficient blocks.

    Attributes
    ----------
    blocks : list of lists
        CoefficientBlock or None (zero) for each block position.
    sizes : list of int
        Per-cell sizes of the block rows (and columns).
    nc : int
        Number of cells.
    """

    def __init__(self, blocks, sizes, nc):
        nb = len(sizes)
        if len(blocks) != nb or any(len(row) != nb for row in blocks):
            raise InvalidArgumentError('Block operator needs a {0} by {0} grid of blocks.'.format(nb))
        for i, row in enumerate(blocks):
            for j, blk in enumerate(row):
                if blk is not None and (blk.dims != (sizes[i], sizes[j]) or blk.nc != nc):
                    raise InvalidArgumentError('Block ({}, {}) has dims {}, expected {}.'.format(
                        i, j, blk.dims, (sizes[i], sizes[j])))
        self.blocks = blocks
        self.sizes = list(sizes)
        self.nc = nc

    def block(self, i, j):
        return self.blocks[i][j]

    def nonzero_blocks(self):
        return [(i, j, blk) for i, row in enumerate(self.blocks) for j, blk in enumerate(row) if blk is not None]

    @property
    def is_local(self):
        return all(blk.is_local for _, _, blk in self.nonzero_blocks())

    @property
    def dim(self):
        return sum(self.sizes)*self.nc

    def matrix(self):
        """Sparse csr matrix if all blocks are local, dense array otherwise."""
        dense = not self.is_local
        ops = [[None if blk is None else (blk.dense() if dense else blk.sparse()) for blk in row]
               for row in self.blocks]
        return assemble_blocks(ops, self.sizes, self.sizes, self.nc, dense=dense)

    def dense(self):
        mat = self.matrix()
        return mat if isinstance(mat, np.ndarray) else mat.toarray()

    def cell_batch(self):
        """
        Per-cell matrices, nc by D by D with D = sum(sizes), for local
        operators; the global dense matrix as a stack of one otherwise.
        """
        if not self.is_local:
            return self.dense()[None]
        offs = np.concatenate([[0], np.cumsum(self.sizes)])
        out = np.zeros((self.nc, offs[-1], offs[-1]), dtype=doublenp)
        for i, j, blk in self.nonzero_blocks():
            out[:, offs[i]:offs[i+1], offs[j]:offs[j+1]] = blk.data
        return out

    def is_symmetric(self):
        """Exact symmetry: every block equals the transpose of its mirror."""
        for i, row in enumerate(self.blocks):
            for j, blk in enumerate(row):
                mirror = self.blocks[j][i]
                if blk is None and mirror is None:
                    continue
                if blk is None or mirror is None:
                    other = blk if mirror is None else mirror
                    if not other.is_zero():
                        return False
                    continue
                if not np.array_equal(blk.batch(not (blk.is_local and mirror.is_local)),
                                      np.swapaxes(mirror.batch(not (blk.is_local and mirror.is_local)), 1, 2)):
                    return False
        return True

    def __repr__(self):
        return 'BlockOperator(sizes={}, nc={}, local={})'.format(self.sizes, self.nc, self.is_local)


def assemble_M0(m, inverted=None):
    """
    Assemble M0 over (v, T, E, H, theta_rel, q).

    Diagonal blocks are rho_star, C^-1, eps + e^T C^-1 e, mu,
    gamma0 + Theta0 lam^T C^-1 lam Theta0 and kappa1, with the couplings
    of the inverted law between T, E and theta_rel.

    Parameters
    ----------
    m : MaterialConfig
        Material.
    inverted : InvertedLaw or None
        Precomputed inverted law.

    Returns
    -------
    BlockOperator
    """
    inv = invert_constitutive(m) if inverted is None else inverted
    mid = inv.middle()
    blocks = [[m.rho_star, None, None, None, None, None],
              [None, mid[0][0], mid[0][1], None, mid[0][2], None],
              [None, mid[1][0], mid[1][1], None, mid[1][2], None],
              [None, None, None, inv.B_H, None, None],
              [None, mid[2][0], mid[2][1], None, mid[2][2], None],
              [None, None, None, None, None, m.kappa1]]
    return BlockOperator(blocks, m.sizes, m.nc)


def assemble_M1(m):
    """
    Assemble M1, zero except sigma in the E block and kappa0^-1 in the q block.
    """
    blocks = [[None]*6 for _ in range(6)]
    blocks[2][2] = m.sigma
    blocks[5][5] = m.kappa0_inv
    return BlockOperator(blocks, m.sizes, m.nc)


def assemble_M0_piezomagnetic(m, inverted=None):
    """
    Assemble M0 with piezo-magnetic coupling beta.

    The v block becomes rho_star + beta mu beta^T and v couples to H through
    -beta mu and -mu beta^T; all other blocks are those of assemble_M0.
    The quadratic form equals the uncoupled one after replacing the
    magnetic unknown by the composite field beta^T v + H.
    """
    if m.beta is None:
        raise InvalidArgumentError('Piezo-magnetic assembly needs beta.')
    if not m.mu.is_symmetric():
        raise InvalidArgumentError('Piezo-magnetic assembly needs symmetric mu.')
    base = assemble_M0(m, inverted)
    beta_mu = m.beta @ m.mu
    vv = m.rho_star + beta_mu @ m.beta.T
    if m.rho_star.is_symmetric():
        vv = vv.sym()
    vh = -beta_mu
    blocks = [list(row) for row in base.blocks]
    blocks[0][0] = vv
    blocks[0][3] = vh
    blocks[3][0] = vh.T
    return BlockOperator(blocks, m.sizes, m.nc)


def composite_magnetic_field(beta, v, H):
    """Composite magnetic field beta^T v + H."""
    v = v.values if isinstance(v, Field) else np.asarray(v, dtype=doublenp)
    H = H.values if isinstance(H, Field) else np.asarray(H, dtype=doublenp)
    return apply_block(beta.T, v) + H


class AssembledOperators(object):
    """
    Material operators of the full system.

    Attributes
    ----------
    M0 : BlockOperator
        Symmetric time-derivative weight.
    M1 : BlockOperator
        Zeroth order part, sigma and kappa0^-1 only.
    grid : Grid
        Grid of the material.
    inverted : InvertedLaw
        Inverted constitutive relations used for M0.
    """

    def __init__(self, M0, M1, grid, inverted):
        self.M0 = M0
        self.M1 = M1
        self.grid = grid
        self.inverted = inverted


def assemble_operators(m, grid, piezomagnetic=None):
    """
    Assemble M0 and M1 of the full system.

    Parameters
    ----------
    m : MaterialConfig
        Material on grid.
    grid : Grid
        Grid with grid.nc == m.nc.
    piezomagnetic : bool or None
        Use the piezo-magnetic M0; None means: if beta is present.
    """
    if grid.nc != m.nc:
        raise InvalidArgumentError('Material has {} cells, grid has {}.'.format(m.nc, grid.nc))
    inv = invert_constitutive(m)
    if piezomagnetic is None:
        piezomagnetic = m.beta is not None
    M0 = assemble_M0_piezomagnetic(m, inv) if piezomagnetic else assemble_M0(m, inv)
    if not M0.is_local:
        logger.info('Nonlocal material blocks, M0 is assembled densely on %d cells.', m.nc)
    return AssembledOperators(M0, assemble_M1(m), grid, inv)
