"""Module containing the box grid, grid fields, Voigt encoding and the state vector."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numbers
from collections import OrderedDict

import numpy as np

from .mytypes import doublenp
from .mytypes import intnp
from .errors import InvalidArgumentError

SQRT2 = np.sqrt(2.0)
VOIGT_INDEX = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))
VOIGT_WEIGHT = np.array([1.0, 1.0, 1.0, SQRT2, SQRT2, SQRT2], dtype=doublenp)


class Grid(object):
    """
    Axis-aligned box divided into uniform Cartesian cells.

    Cells are numbered row-major, i.e., the cell (i, j, k) has index
    (i*n2 + j)*n3 + k.

    Attributes
    ----------
    n : tuple of int
        Number of cells along each axis.
    length : tuple of float
        Extent of the box along each axis.
    h : tuple of float
        Cell size along each axis, length/n.
    nc : int
        Number of cells n1*n2*n3.
    """

    def __init__(self, n, length):
        n = tuple(n)
        length = tuple(length)
        if len(n) != 3 or len(length) != 3:
            raise InvalidArgumentError('Grid needs three cell counts and three lengths.')
        for ni in n:
            if isinstance(ni, bool) or not isinstance(ni, numbers.Integral) or ni < 1:
                raise InvalidArgumentError('Cell counts have to be positive integers, got {}.'.format(n))
        for li in length:
            if not np.isfinite(li) or li <= 0:
                raise InvalidArgumentError('Lengths have to be positive and finite, got {}.'.format(length))
        self._n = tuple(int(ni) for ni in n)
        self._length = tuple(float(li) for li in length)
        self._h = tuple(li/ni for li, ni in zip(self._length, self._n))

    @property
    def n(self):
        return self._n

    @property
    def length(self):
        return self._length

    @property
    def h(self):
        return self._h

    @property
    def nc(self):
        return self._n[0]*self._n[1]*self._n[2]

    @property
    def volume(self):
        """Volume of one cell."""
        return self._h[0]*self._h[1]*self._h[2]

    def cell_index(self, i, j, k):
        return int(np.ravel_multi_index((i, j, k), self._n))

    def centers(self):
        """Returns nc by 3 array of cell centers."""
        axes = [(np.arange(ni, dtype=doublenp)+0.5)*hi for ni, hi in zip(self._n, self._h)]
        xx, yy, zz = np.meshgrid(*axes, indexing='ij')
        return np.stack([xx.ravel(), yy.ravel(), zz.ravel()], axis=1)

    def __eq__(self, other):
        return isinstance(other, Grid) and self._n == other._n and self._length == other._length

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self._n, self._length))

    def __repr__(self):
        return 'Grid(n={}, length={})'.format(self._n, self._length)


def make_grid(n, length):
    """
    Make a box grid.

    Parameters
    ----------
    n : tuple of int
        Cells per axis, each at least 1.
    length : tuple of float
        Positive extents of the box.

    Returns
    -------
    Grid
        Grid with h = length/n.
    """
    return Grid(n, length)


def voigt_encode(a, rtol=1e-12):
    """
    Encode symmetric 3 by 3 matrices as weighted 6-vectors.

    The encoding (a11, a22, a33, sqrt2*a23, sqrt2*a13, sqrt2*a12) makes
    the Euclidean inner product equal to the Frobenius inner product.

    Parameters
    ----------
    a : array
        Array of shape (..., 3, 3).
    rtol : float
        Allowed relative asymmetry.

    Returns
    -------
    array
        Array of shape (..., 6).
    """
    a = np.asarray(a, dtype=doublenp)
    if a.shape[-2:] != (3, 3):
        raise InvalidArgumentError('Expected 3 by 3 matrices, got shape {}.'.format(a.shape))
    scale = np.abs(a).max() if a.size else 0.0
    asym = np.abs(a - np.swapaxes(a, -1, -2)).max() if a.size else 0.0
    if asym > rtol*scale:
        raise InvalidArgumentError('Matrix is not symmetric (asymmetry {:.3e}).'.format(asym))
    out = np.empty(a.shape[:-2]+(6,), dtype=doublenp)
    for comp, (i, j) in enumerate(VOIGT_INDEX):
        out[..., comp] = a[..., i, j]*VOIGT_WEIGHT[comp]
    return out


def voigt_decode(x):
    """
    Inverse of voigt_encode.

    Parameters
    ----------
    x : array
        Array of shape (..., 6).

    Returns
    -------
    array
        Symmetric matrices of shape (..., 3, 3).
    """
    x = np.asarray(x, dtype=doublenp)
    if x.shape[-1] != 6:
        raise InvalidArgumentError('Expected 6-vectors, got shape {}.'.format(x.shape))
    out = np.empty(x.shape[:-1]+(3, 3), dtype=doublenp)
    for comp, (i, j) in enumerate(VOIGT_INDEX):
        val = x[..., comp]/VOIGT_WEIGHT[comp]
        out[..., i, j] = val
        out[..., j, i] = val
    return out


class Field(object):
    """
    Grid field with ncomp values per cell.

    Values are stored row-major over cells and component-major within
    a cell, i.e., component a of cell c sits at index c*ncomp + a.

    Attributes
    ----------
    grid : Grid
        Grid the field lives on.
    ncomp : int
        Number of components per cell.
    values : array
        Flat array of length ncomp*nc.
    name : str
        Name used in snapshots.
    """

    ncomp = None

    def __init__(self, grid, values=None, name='', ncomp=None):
        ncomp = self.ncomp if ncomp is None else ncomp
        if ncomp is None or ncomp < 1:
            raise InvalidArgumentError('Field needs a positive number of components.')
        self.grid = grid
        self.ncomp = int(ncomp)
        self.name = name
        size = self.ncomp*grid.nc
        if values is None:
            self.values = np.zeros(size, dtype=doublenp)
        else:
            values = np.array(values, dtype=doublenp).ravel()
            if values.size != size:
                raise InvalidArgumentError('Field {} needs {} values, got {}.'.format(name, size, values.size))
            if not np.all(np.isfinite(values)):
                raise InvalidArgumentError('Field {} has non-finite values.'.format(name))
            self.values = values

    @property
    def by_cell(self):
        """View of the values with shape (nc, ncomp)."""
        return self.values.reshape(self.grid.nc, self.ncomp)

    def copy(self):
        return type(self)(self.grid, self.values.copy(), self.name, ncomp=self.ncomp)

    def norm(self):
        return float(np.linalg.norm(self.values))

    def __repr__(self):
        return '{}(name={!r}, grid={!r})'.format(type(self).__name__, self.name, self.grid)


class ScalarField(Field):
    ncomp = 1


class VectorField(Field):
    ncomp = 3


class VoigtField(Field):
    ncomp = 6


FIELD_CLASSES = {1: ScalarField, 3: VectorField, 6: VoigtField}


def make_field(grid, ncomp, values=None, name=''):
    """Make a field of the class matching ncomp."""
    cls = FIELD_CLASSES.get(ncomp)
    if cls is None:
        return Field(grid, values, name, ncomp=ncomp)
    return cls(grid, values, name)


# Ordering of the unknowns of the full and the reduced systems
STATE_LAYOUT = (('v', 3), ('T', 6), ('E', 3), ('H', 3), ('theta_rel', 1), ('q', 3))
REDUCED_LAYOUT = (('v', 3), ('T', 6), ('theta_rel', 1), ('q', 3))


def layout_offsets(layout, nc):
    """
    Returns ordered dictionary name -> (offset, ncomp) of the component
    fields inside the flat state array.
    """
    offsets = OrderedDict()
    pos = 0
    for name, ncomp in layout:
        offsets[name] = (pos, ncomp)
        pos += ncomp*nc
    return offsets


class StateVector(object):
    """
    State U = (v, T, E, H, theta_rel, q) of the full system or
    U = (v, T, theta_rel, q) of the quasi-static reduction.

    theta_rel stands for the scaled temperature Theta0^{-1}*theta.

    Attributes
    ----------
    grid : Grid
        Grid shared by all components.
    reduced : bool
        True for the 13-component reduced state.
    fields : OrderedDict
        Component name -> Field.
    """

    def __init__(self, grid, reduced=False, **fields):
        self.grid = grid
        self.reduced = reduced
        self.fields = OrderedDict()
        for name, ncomp in self.layout:
            fld = fields.pop(name, None)
            if fld is None:
                fld = make_field(grid, ncomp, name=name)
            elif not isinstance(fld, Field):
                fld = make_field(grid, ncomp, fld, name=name)
            if fld.grid != grid or fld.ncomp != ncomp:
                raise InvalidArgumentError('Component {} does not match the state layout.'.format(name))
            fld.name = name
            self.fields[name] = fld
        if fields:
            raise InvalidArgumentError('Unknown state components: {}.'.format(sorted(fields)))

    @property
    def layout(self):
        return REDUCED_LAYOUT if self.reduced else STATE_LAYOUT

    @property
    def dim(self):
        return sum(ncomp for _, ncomp in self.layout)*self.grid.nc

    def __getattr__(self, item):
        fields = self.__dict__.get('fields')
        if fields is not None and item in fields:
            return fields[item]
        raise AttributeError(item)

    def __getitem__(self, item):
        return self.fields[item]

    def to_array(self):
        return np.concatenate([fld.values for fld in self.fields.values()])

    @classmethod
    def from_array(cls, grid, arr, reduced=False):
        layout = REDUCED_LAYOUT if reduced else STATE_LAYOUT
        arr = np.asarray(arr, dtype=doublenp)
        offsets = layout_offsets(layout, grid.nc)
        size = sum(ncomp for _, ncomp in layout)*grid.nc
        if arr.shape != (size,):
            raise InvalidArgumentError('State array needs shape ({},), got {}.'.format(size, arr.shape))
        fields = {}
        for name, (pos, ncomp) in offsets.items():
            fields[name] = make_field(grid, ncomp, arr[pos:pos+ncomp*grid.nc], name=name)
        return cls(grid, reduced, **fields)

    def copy(self):
        return StateVector.from_array(self.grid, self.to_array().copy(), self.reduced)

    def norm(self):
        return float(np.linalg.norm(self.to_array()))


def cell_component_indices(sizes, nc, cell):
    """
    Indices of the per-cell unknowns of one cell inside a flat array
    built from blocks of the given per-cell sizes.
    """
    idx = []
    pos = 0
    for size in sizes:
        idx.append(pos + cell*size + np.arange(size, dtype=intnp))
        pos += size*nc
    return np.concatenate(idx)
