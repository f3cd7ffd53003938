"""
Module containing the boundary-conditioned difference operators on the
box grid and the skew block operator A.

The primal operators grad0, div0, curl0, Grad0 carry the homogeneous
boundary conditions through zero ghost values. Their partners are never
discretized separately, they are the literal transposes

    grad = -div0^T,  div = -grad0^T,  curl = curl0^T,  Div = -Grad0^T.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np
import scipy.sparse as sp

from .mytypes import doublenp
from .mytypes import intnp
from .fields import STATE_LAYOUT
from .fields import REDUCED_LAYOUT

HALF_SQRT2 = np.sqrt(0.5)


def difference_1d(n, h, forward=True):
    """
    One-dimensional difference matrix with a zero ghost value.

    Parameters
    ----------
    n : int
        Number of cells.
    h : float
        Cell size.
    forward : bool
        If True (phi[i+1] - phi[i])/h with phi[n] = 0,
        otherwise (phi[i] - phi[i-1])/h with phi[-1] = 0.

    Returns
    -------
    scipy.sparse.csr_matrix
        n by n matrix.
    """
    idx = np.arange(n, dtype=intnp)
    if forward:
        rows = np.concatenate([idx, idx[:-1]])
        cols = np.concatenate([idx, idx[1:]])
        vals = np.concatenate([-np.ones(n), np.ones(n-1)])
    else:
        rows = np.concatenate([idx, idx[1:]])
        cols = np.concatenate([idx, idx[:-1]])
        vals = np.concatenate([np.ones(n), -np.ones(n-1)])
    return sp.coo_matrix((vals/h, (rows, cols)), shape=(n, n), dtype=doublenp).tocsr()


def axis_operator(grid, axis, forward=True):
    """Difference along one axis acting on row-major cell arrays."""
    mats = [sp.identity(ni, dtype=doublenp, format='csr') for ni in grid.n]
    mats[axis] = difference_1d(grid.n[axis], grid.h[axis], forward)
    return sp.kron(sp.kron(mats[0], mats[1]), mats[2], format='csr')


def cell_major_permutation(ncomp, nc):
    """
    Permutation taking component-blocked ordering (a*nc + c) to the
    component-major within cell ordering (c*ncomp + a).
    """
    return (np.arange(ncomp, dtype=intnp)[None, :]*nc + np.arange(nc, dtype=intnp)[:, None]).ravel()


def interleave(blocks, nc):
    """
    Assemble a matrix from a grid of nc by nc blocks indexed by
    (output component, input component) and reorder rows and columns
    to component-major within cell.
    """
    nrow, ncol = len(blocks), len(blocks[0])
    full = sp.bmat(blocks, format='csr')
    prow = cell_major_permutation(nrow, nc)
    pcol = cell_major_permutation(ncol, nc)
    return full[prow, :][:, pcol].tocsr()


def build_grad0(grid):
    """
    Gradient with homogeneous Dirichlet condition, Nc -> 3*Nc.

    Forward differences (phi[i+1] - phi[i])/h per axis with ghost value 0
    outside the domain.
    """
    nc = grid.nc
    return interleave([[axis_operator(grid, a)] for a in range(3)], nc)


def build_div0(grid):
    """
    Divergence with homogeneous normal condition, 3*Nc -> Nc.

    Backward differences per axis with the normal component treated
    as 0 outside the domain.
    """
    nc = grid.nc
    return interleave([[axis_operator(grid, a, forward=False) for a in range(3)]], nc)


def build_curl0(grid):
    """
    Curl with homogeneous tangential condition, 3*Nc -> 3*Nc.

    Forward differences composing the antisymmetric derivative matrix,
    tangential ghost values 0.
    """
    nc = grid.nc
    d1, d2, d3 = [axis_operator(grid, a) for a in range(3)]
    return interleave([[None, -d3, d2],
                       [d3, None, -d1],
                       [-d2, d1, None]], nc)


def build_Grad0(grid):
    """
    Symmetrized gradient with homogeneous Dirichlet condition, 3*Nc -> 6*Nc.

    Rows are emitted in the weighted Voigt order
    (11, 22, 33, sqrt2*23, sqrt2*13, sqrt2*12), so that -Grad0^T is the
    adjoint under plain Euclidean inner products.
    """
    nc = grid.nc
    d1, d2, d3 = [axis_operator(grid, a) for a in range(3)]
    s = HALF_SQRT2
    return interleave([[d1, None, None],
                       [None, d2, None],
                       [None, None, d3],
                       [None, s*d3, s*d2],
                       [s*d3, None, s*d1],
                       [s*d2, s*d1, None]], nc)


def assemble_blocks(blocks, row_sizes, col_sizes, nc, dense=False):
    """
    Assemble a block operator from a grid of blocks; None means zero.

    Parameters
    ----------
    blocks : list of lists
        Sparse matrices, dense arrays or None.
    row_sizes, col_sizes : list of int
        Per-cell sizes of the block rows and columns.
    nc : int
        Number of cells.
    dense : bool
        If True the result is a dense array, else a csr matrix.
    """
    filled = []
    for i, row in enumerate(blocks):
        frow = []
        for j, blk in enumerate(row):
            shape = (row_sizes[i]*nc, col_sizes[j]*nc)
            if blk is None:
                blk = np.zeros(shape) if dense else sp.csr_matrix(shape, dtype=doublenp)
            elif dense and sp.issparse(blk):
                blk = blk.toarray()
            elif not dense and not sp.issparse(blk):
                blk = sp.csr_matrix(blk)
            if blk.shape != shape:
                raise ValueError('Block ({}, {}) has shape {}, expected {}.'.format(i, j, blk.shape, shape))
            frow.append(blk)
        filled.append(frow)
    if dense:
        return np.block(filled)
    return sp.bmat(filled, format='csr')


class SpatialBlock(object):
    """
    Skew block operator A together with the difference operators it is made of.

    Attributes
    ----------
    grid : Grid
        Grid of the operators.
    reduced : bool
        True for the 13-component quasi-static layout (v, T, theta_rel, q).
    grad0, div0, curl0, Grad0 : scipy.sparse.csr_matrix
        Primal operators carrying the boundary conditions.
    grad, div, curl, Div : scipy.sparse.csr_matrix
        Literal transposes of the primal operators.
    A : scipy.sparse.csr_matrix
        The skew block operator, A + A^T = 0 entry-wise.
    """

    def __init__(self, grid, reduced=False):
        self.grid = grid
        self.reduced = reduced
        self.grad0 = build_grad0(grid)
        self.div0 = build_div0(grid)
        self.curl0 = build_curl0(grid)
        self.Grad0 = build_Grad0(grid)
        self.grad = -self.div0.T.tocsr()
        self.div = -self.grad0.T.tocsr()
        self.curl = self.curl0.T.tocsr()
        self.Div = -self.Grad0.T.tocsr()
        self.A = self._assemble()

    @property
    def layout(self):
        return REDUCED_LAYOUT if self.reduced else STATE_LAYOUT

    @property
    def sizes(self):
        return [ncomp for _, ncomp in self.layout]

    def _assemble(self):
        sizes = self.sizes
        if self.reduced:
            # (v, T, theta_rel, q)
            blocks = [[None, -self.Div, None, None],
                      [-self.Grad0, None, None, None],
                      [None, None, None, self.div0],
                      [None, None, self.grad, None]]
        else:
            # (v, T, E, H, theta_rel, q)
            blocks = [[None, -self.Div, None, None, None, None],
                      [-self.Grad0, None, None, None, None, None],
                      [None, None, None, -self.curl, None, None],
                      [None, None, self.curl0, None, None, None],
                      [None, None, None, None, None, self.div0],
                      [None, None, None, None, self.grad, None]]
        return assemble_blocks(blocks, sizes, sizes, self.grid.nc)

    def __repr__(self):
        return 'SpatialBlock(grid={!r}, reduced={})'.format(self.grid, self.reduced)


def assemble_A(grid):
    """
    Skew block operator of the full system acting on (v, T, E, H, theta_rel, q).

    Returns
    -------
    SpatialBlock
        Block with A = [[0, -Div, 0, 0, 0, 0], [-Grad0, 0, ...],
        [..., 0, -curl, ...], [..., curl0, 0, ...], [..., div0], [..., grad, 0]].
    """
    return SpatialBlock(grid, reduced=False)


def assemble_A_reduced(grid):
    """Skew block operator of the quasi-static system acting on (v, T, theta_rel, q)."""
    return SpatialBlock(grid, reduced=True)
