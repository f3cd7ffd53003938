"""Module containing coefficient blocks: local multiplication and nonlocal convolution operators."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numbers

import numpy as np
import scipy.sparse as sp

from .mytypes import doublenp
from .mytypes import intnp
from .errors import CapacityError
from .errors import InvalidArgumentError
from .errors import SingularCoefficientError
from .fields import Field
from .fields import make_field
from .specfunc import gaussian_kernel
from .specfunc import squared_distances

DIAGONAL_PER_CELL = 'DiagonalPerCell'
DENSE_NONLOCAL = 'DenseNonlocal'
DENSE_CELL_CAP = 4096
SYM_RTOL = 1e-12
SINGULAR_RTOL = 1e-12


def check_dense_cap(nc, cap=DENSE_CELL_CAP):
    if nc > cap:
        raise CapacityError('Dense representation of {} cells exceeds the cap of {} cells.'.format(nc, cap),
                            ncells=nc, cap=cap)


def relative_asymmetry(a):
    """Returns max|a - a^T|/max|a| for each matrix of a stack (k, n, n)."""
    a = np.asarray(a)
    diff = np.abs(a - np.swapaxes(a, -1, -2)).reshape(a.shape[0], -1).max(axis=1)
    scale = np.abs(a).reshape(a.shape[0], -1).max(axis=1)
    return np.where(scale > 0, diff/np.where(scale > 0, scale, 1.0), 0.0)


class CoefficientBlock(object):
    """
    Linear operator between component fields on a grid.

    A DiagonalPerCell block acts as a multiplication operator and stores
    one rows by cols matrix per cell. A DenseNonlocal block stores one
    (rows*nc) by (cols*nc) matrix, indexed component-major within a cell.

    Attributes
    ----------
    kind : str
        DiagonalPerCell or DenseNonlocal.
    dims : tuple of int
        (rows, cols) per cell.
    data : array
        nc by rows by cols array, or (rows*nc) by (cols*nc) array.
    nc : int
        Number of cells.
    symmetric : bool or None
        If True the data has been verified to be symmetric.
    cap : int
        Cell cap for the dense representation.
    """

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, kind, dims, data, nc, symmetric=None, cap=DENSE_CELL_CAP):
        if kind not in {DIAGONAL_PER_CELL, DENSE_NONLOCAL}:
            raise InvalidArgumentError('Unknown coefficient block kind {!r}.'.format(kind))
        rows, cols = int(dims[0]), int(dims[1])
        if rows < 1 or cols < 1:
            raise InvalidArgumentError('Block dimensions have to be positive, got {}.'.format(dims))
        data = np.array(data, dtype=doublenp)
        if kind == DIAGONAL_PER_CELL:
            shape = (nc, rows, cols)
        else:
            check_dense_cap(nc, cap)
            shape = (rows*nc, cols*nc)
        if data.shape != shape:
            raise InvalidArgumentError('{} block data needs shape {}, got {}.'.format(kind, shape, data.shape))
        if not np.all(np.isfinite(data)):
            raise InvalidArgumentError('Coefficient block has non-finite entries.')
        self.kind = kind
        self.dims = (rows, cols)
        self.data = data
        self.nc = int(nc)
        self.cap = cap
        self.symmetric = None
        if symmetric:
            if not self.is_symmetric():
                raise InvalidArgumentError('Block flagged symmetric has asymmetric data.')
            self.symmetric = True

    @property
    def is_local(self):
        return self.kind == DIAGONAL_PER_CELL

    @property
    def rows(self):
        return self.dims[0]

    @property
    def cols(self):
        return self.dims[1]

    @property
    def shape(self):
        return (self.dims[0]*self.nc, self.dims[1]*self.nc)

    def batch(self, nonlocal_=False):
        """
        Stack of matrices the per-cell algebra runs on: nc by rows by cols
        for local blocks, 1 by (rows*nc) by (cols*nc) otherwise.
        """
        if self.is_local and not nonlocal_:
            return self.data
        return self.dense()[None]

    def sparse(self):
        if self.is_local:
            rows, cols = self.dims
            indices = np.arange(self.nc, dtype=intnp)
            indptr = np.arange(self.nc+1, dtype=intnp)
            return sp.bsr_matrix((self.data, indices, indptr), shape=self.shape).tocsr()
        return sp.csr_matrix(self.data)

    def dense(self):
        if self.is_local:
            return self.sparse().toarray()
        return self.data.copy()

    def operator(self):
        """Sparse matrix for local blocks, dense array for nonlocal ones."""
        return self.sparse() if self.is_local else self.data

    def to_nonlocal(self):
        if not self.is_local:
            return self
        return CoefficientBlock(DENSE_NONLOCAL, self.dims, self.dense(), self.nc, self.symmetric, self.cap)

    def _new(self, data, dims=None, symmetric=None):
        dims = self.dims if dims is None else dims
        if symmetric:
            # flag is inherited from the operands, the data is symmetric by construction
            blk = CoefficientBlock(self.kind, dims, data, self.nc, None, self.cap)
            blk.symmetric = True
            return blk
        return CoefficientBlock(self.kind, dims, data, self.nc, None, self.cap)

    @property
    def T(self):
        return self.transpose()

    def transpose(self):
        if self.is_local:
            data = np.swapaxes(self.data, 1, 2).copy()
        else:
            data = self.data.T.copy()
        return self._new(data, (self.dims[1], self.dims[0]), self.symmetric)

    def _pair(self, other):
        if not isinstance(other, CoefficientBlock):
            raise InvalidArgumentError('Expected a CoefficientBlock, got {}.'.format(type(other).__name__))
        if other.nc != self.nc:
            raise InvalidArgumentError('Blocks live on different numbers of cells.')
        if self.is_local and other.is_local:
            return self, other
        return self.to_nonlocal(), other.to_nonlocal()

    def __matmul__(self, other):
        a, b = self._pair(other)
        if a.dims[1] != b.dims[0]:
            raise InvalidArgumentError('Cannot compose blocks with dims {} and {}.'.format(a.dims, b.dims))
        return a._new(np.matmul(a.data, b.data), (a.dims[0], b.dims[1]))

    def __add__(self, other):
        a, b = self._pair(other)
        if a.dims != b.dims:
            raise InvalidArgumentError('Cannot add blocks with dims {} and {}.'.format(a.dims, b.dims))
        return a._new(a.data + b.data, symmetric=(a.symmetric and b.symmetric))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a.dims != b.dims:
            raise InvalidArgumentError('Cannot subtract blocks with dims {} and {}.'.format(a.dims, b.dims))
        return a._new(a.data - b.data, symmetric=(a.symmetric and b.symmetric))

    def __neg__(self):
        return self._new(-self.data, symmetric=self.symmetric)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Real):
            return NotImplemented
        return self._new(scalar*self.data, symmetric=self.symmetric)

    __rmul__ = __mul__

    def sym(self):
        """Symmetric part (X + X^T)/2, exactly symmetric."""
        self._require_square('sym')
        if self.is_local:
            data = 0.5*(self.data + np.swapaxes(self.data, 1, 2))
        else:
            data = 0.5*(self.data + self.data.T)
        return self._new(data, symmetric=True)

    def _require_square(self, what):
        if self.dims[0] != self.dims[1]:
            raise InvalidArgumentError('{} needs a square block, got dims {}.'.format(what, self.dims))

    def is_symmetric(self, rtol=SYM_RTOL):
        if self.dims[0] != self.dims[1]:
            return False
        if self.symmetric:
            return True
        return bool(np.all(relative_asymmetry(self.batch()) <= rtol))

    def is_zero(self):
        return not np.any(self.data)

    def inv(self, name='block', rtol=SINGULAR_RTOL):
        """
        Inverse of a square block.

        Parameters
        ----------
        name : str
            Block name used in the error message.
        rtol : float
            A cell is singular if its minimal singular value is not larger
            than rtol times its largest singular value.

        Returns
        -------
        CoefficientBlock
            Inverse block, of the same kind.
        """
        self._require_square('Inversion of ' + name)
        mats = self.batch()
        svals = np.linalg.svd(mats, compute_uv=False)
        bad = svals[:, -1] <= rtol*svals[:, 0]
        if np.any(bad):
            cell = int(np.argmax(bad)) if self.is_local else None
            where = 'cell {}'.format(cell) if self.is_local else 'the nonlocal operator'
            raise SingularCoefficientError('{} is singular in {}.'.format(name, where), block=name, cell=cell)
        inv = np.linalg.inv(mats)
        if not self.is_local:
            inv = inv[0]
        return self._new(inv)

    def min_eig(self):
        """Minimal eigenvalue of the symmetric part, per cell (or one global value)."""
        self._require_square('min_eig')
        mats = self.batch()
        return np.linalg.eigvalsh(0.5*(mats + np.swapaxes(mats, 1, 2)))[:, 0]

    def __repr__(self):
        return 'CoefficientBlock({}, dims={}, nc={})'.format(self.kind, self.dims, self.nc)


def constant_block(nc, value, dims, symmetric=None, cap=DENSE_CELL_CAP):
    """
    DiagonalPerCell block with the same matrix in every cell.

    Parameters
    ----------
    nc : int
        Number of cells.
    value : float or array
        Scalar (meaning scalar times identity for square dims, only 0 for
        non-square dims) or rows by cols matrix; a flat list is accepted
        for a single column.
    dims : tuple of int
        (rows, cols) per cell.
    """
    rows, cols = dims
    arr = np.asarray(value, dtype=doublenp)
    if arr.ndim == 0:
        if rows == cols:
            mat = float(arr)*np.eye(rows, dtype=doublenp)
        elif float(arr) == 0.0:
            mat = np.zeros((rows, cols), dtype=doublenp)
        else:
            raise InvalidArgumentError('Scalar value for a {}x{} block has to be 0.'.format(rows, cols))
    elif arr.ndim == 1 and cols == 1 and arr.size == rows:
        mat = arr.reshape(rows, 1)
    elif arr.shape == (rows, cols):
        mat = arr
    else:
        raise InvalidArgumentError('Value of shape {} does not fit a {}x{} block.'.format(arr.shape, rows, cols))
    data = np.broadcast_to(mat, (nc, rows, cols)).copy()
    return CoefficientBlock(DIAGONAL_PER_CELL, dims, data, nc, symmetric, cap)


def identity_block(nc, d):
    return constant_block(nc, 1.0, (d, d), symmetric=True)


def zero_block(nc, rows, cols):
    return constant_block(nc, 0.0, (rows, cols), symmetric=(rows == cols) or None)


def scalar_field_block(values):
    """1 by 1 multiplication block from per-cell values."""
    values = np.asarray(values, dtype=doublenp).ravel()
    return CoefficientBlock(DIAGONAL_PER_CELL, (1, 1), values.reshape(-1, 1, 1), values.size, True)


def apply_block(coef, x):
    """
    Apply a coefficient block to a field.

    Parameters
    ----------
    coef : CoefficientBlock
        Block with dims (rows, cols).
    x : Field or array
        Field with cols components per cell, or its flat value array.

    Returns
    -------
    Field or array
        Same kind as x, with rows components per cell.
    """
    rows, cols = coef.dims
    values = x.values if isinstance(x, Field) else np.asarray(x, dtype=doublenp)
    if values.shape != (cols*coef.nc,):
        raise InvalidArgumentError('Field of shape {} does not match block dims {} on {} cells.'.format(
            values.shape, coef.dims, coef.nc))
    if isinstance(x, Field) and (x.ncomp != cols or x.grid.nc != coef.nc):
        raise InvalidArgumentError('Field layout does not match block dims {}.'.format(coef.dims))
    if coef.is_local:
        out = np.einsum('nij,nj->ni', coef.data, values.reshape(coef.nc, cols)).ravel()
    else:
        out = coef.data.dot(values)
    if isinstance(x, Field):
        return make_field(x.grid, rows, out)
    return out


def gaussian_convolution_block(grid, width, amplitude, diagonal_shift, dims=(1, 1), cap=DENSE_CELL_CAP):
    """
    Nonlocal convolution block with a Gaussian kernel.

    K[i][j] = amplitude*exp(-|x_i - x_j|^2/(2*width^2))*h1*h2*h3 plus
    diagonal_shift on the diagonal; for dims (d, d) the kernel acts as K
    times the d by d identity on each component.

    Parameters
    ----------
    grid : Grid
        Grid with cell centers x_i.
    width : float
        Positive kernel width.
    amplitude : float
        Kernel amplitude.
    diagonal_shift : float
        Nonnegative shift added to the diagonal.
    dims : tuple of int
        Square per-cell dims.
    cap : int
        Maximal number of cells.

    Returns
    -------
    CoefficientBlock
        Symmetric DenseNonlocal block.
    """
    if not width > 0:
        raise InvalidArgumentError('Kernel width has to be positive, got {}.'.format(width))
    if not diagonal_shift >= 0:
        raise InvalidArgumentError('Diagonal shift has to be nonnegative, got {}.'.format(diagonal_shift))
    if dims[0] != dims[1]:
        raise InvalidArgumentError('Convolution blocks have to be square, got dims {}.'.format(dims))
    check_dense_cap(grid.nc, cap)
    kern = gaussian_kernel(squared_distances(grid.centers()), width, amplitude)*grid.volume
    kern = kern + diagonal_shift*np.eye(grid.nc, dtype=doublenp)
    if dims[0] > 1:
        kern = np.kron(kern, np.eye(dims[0], dtype=doublenp))
    return CoefficientBlock(DENSE_NONLOCAL, dims, kern, grid.nc, True, cap)
