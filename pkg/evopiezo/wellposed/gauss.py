"""
Module containing symmetric block matrices and symmetric Gauss steps.

A Gauss step with pivot p is the congruence A -> L A L^T with L the
identity plus the blocks -A_ip A_pp^-1 in column p. It eliminates the
couplings of block p and leaves Schur complements on the other diagonal
blocks, preserving the inertia of A.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

from ..mytypes import doublenp
from ..errors import InvalidArgumentError
from ..errors import PivotSingularError
from ..coefblock import SINGULAR_RTOL
from ..coefblock import SYM_RTOL
from ..coefblock import relative_asymmetry

INERTIA_TOL = 1e-10


class BlockSymMatrix(object):
    """
    Symmetric matrix, or stack of symmetric matrices, with a square block
    partitioning.

    Parameters
    ----------
    data : array
        n by n matrix or k by n by n stack.
    sizes : list of int
        Block sizes, summing to n.
    rtol : float
        Accepted relative asymmetry.
    """

    def __init__(self, data, sizes, rtol=SYM_RTOL):
        data = np.array(data, dtype=doublenp)
        self.stacked = data.ndim == 3
        if not self.stacked:
            data = data[None]
        if data.ndim != 3 or data.shape[1] != data.shape[2]:
            raise InvalidArgumentError('BlockSymMatrix needs square matrices, got shape {}.'.format(data.shape))
        sizes = [int(s) for s in sizes]
        if any(s < 1 for s in sizes) or sum(sizes) != data.shape[1]:
            raise InvalidArgumentError('Block sizes {} do not partition dimension {}.'.format(sizes, data.shape[1]))
        asym = relative_asymmetry(data)
        if np.any(asym > rtol):
            raise InvalidArgumentError('BlockSymMatrix data is not symmetric, relative asymmetry {:.3e}.'.format(
                asym.max()))
        self.data = data
        self.sizes = sizes
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)

    @property
    def nblocks(self):
        return len(self.sizes)

    @property
    def dim(self):
        return self.offsets[-1]

    def _slice(self, i):
        return slice(self.offsets[i], self.offsets[i+1])

    def block(self, i, j):
        """Stack of the (i, j) blocks."""
        return self.data[:, self._slice(i), self._slice(j)]

    def matrix(self):
        """The data as given: one matrix, or the stack."""
        return self.data if self.stacked else self.data[0]

    def eigvalsh(self):
        return np.linalg.eigvalsh(self.data)

    def min_eig(self):
        return self.eigvalsh()[:, 0]

    def inertia(self, tol=INERTIA_TOL):
        """Counts (positive, zero, negative) of eigenvalues, per matrix of the stack."""
        return inertia(self.eigvalsh(), tol)

    def is_block_diagonal(self):
        for i in range(self.nblocks):
            for j in range(self.nblocks):
                if i != j and np.any(self.block(i, j)):
                    return False
        return True

    def _with(self, data):
        out = BlockSymMatrix.__new__(BlockSymMatrix)
        out.data = data
        out.sizes = list(self.sizes)
        out.offsets = self.offsets.copy()
        out.stacked = self.stacked
        return out

    def __repr__(self):
        return 'BlockSymMatrix(sizes={}, stack={})'.format(self.sizes, self.data.shape[0])


def inertia(eigs, tol=INERTIA_TOL):
    """
    Sign counts of eigenvalues.

    Parameters
    ----------
    eigs : array
        Eigenvalues, last axis per matrix.
    tol : float
        Eigenvalues with modulus not larger than tol count as zero.

    Returns
    -------
    array
        (..., 3) counts of positive, zero and negative eigenvalues.
    """
    eigs = np.asarray(eigs)
    pos = np.sum(eigs > tol, axis=-1)
    neg = np.sum(eigs < -tol, axis=-1)
    zero = eigs.shape[-1] - pos - neg
    return np.stack([pos, zero, neg], axis=-1)


def gauss_reduce(a, pivot, rtol=SINGULAR_RTOL):
    """
    Symmetric Gauss step eliminating the couplings of one block.

    Parameters
    ----------
    a : BlockSymMatrix
        Matrix (or stack) to reduce.
    pivot : int
        Index of the pivot block.
    rtol : float
        The pivot is singular if its minimal singular value is not larger
        than rtol times its largest one.

    Returns
    -------
    reduced : BlockSymMatrix
        L a L^T. Pivot row and column are zero off the diagonal, the other
        blocks are A_ij - A_ip A_pp^-1 A_pj.
    L : array
        Congruence transform, same stacking as a.
    """
    if not 0 <= pivot < a.nblocks:
        raise InvalidArgumentError('Pivot {} out of range for {} blocks.'.format(pivot, a.nblocks))
    app = a.block(pivot, pivot)
    svals = np.linalg.svd(app, compute_uv=False)
    bad = svals[:, -1] <= rtol*svals[:, 0]
    if np.any(bad):
        cell = int(np.argmax(bad))
        raise PivotSingularError('Pivot block {} is singular in matrix {} of the stack.'.format(pivot, cell),
                                 pivot=pivot, cell=cell)
    sp_ = a._slice(pivot)
    # rows of the pivot block column, A_ip A_pp^-1 = (A_pp^-1 A_pi)^T
    coupling = a.data[:, :, sp_]
    factor = np.swapaxes(np.linalg.solve(app, np.swapaxes(coupling, 1, 2)), 1, 2)
    factor[:, sp_, :] = 0.0
    n = a.dim
    L = np.broadcast_to(np.eye(n, dtype=doublenp), a.data.shape).copy()
    L[:, :, sp_] -= factor
    reduced = a.data - np.matmul(factor, a.data[:, sp_, :])
    reduced[:, sp_, :] = 0.0
    reduced[:, :, sp_] = 0.0
    reduced[:, sp_, sp_] = app
    reduced = 0.5*(reduced + np.swapaxes(reduced, 1, 2))
    if not a.stacked:
        L = L[0]
    return a._with(reduced), L
