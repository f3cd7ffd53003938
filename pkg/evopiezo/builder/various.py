"""Module containing various functions."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

from ..mytypes import doublenp
from ..coefblock import DENSE_CELL_CAP
from ..coefblock import CoefficientBlock
from ..coefblock import DIAGONAL_PER_CELL
from ..coefblock import constant_block
from ..coefblock import gaussian_convolution_block
from ..fields import VOIGT_WEIGHT
from ..fields import StateVector
from ..fields import make_field
from ..material import MaterialConfig
from ..material import STANDARD_DIMS
from .validation import BLOCK_DEFAULTS
from .validation import BLOCK_DIMS

# Engineering (unweighted Voigt) blocks: name -> (left weight, right weight)
ENGINEERING_WEIGHTS = {'C': (True, True), 'e': (True, False), 'lam': (True, False)}


def _per_cell_matrix(value, dims):
    rows, cols = dims
    arr = np.asarray(value, dtype=doublenp)
    if arr.ndim == 0:
        return float(arr)*np.eye(rows, cols, dtype=doublenp)
    return arr.reshape(rows, cols)


def build_block(spec, grid, notation='weighted', cap=DENSE_CELL_CAP):
    """
    Build a coefficient block from a validated BlockSpec.

    Parameters
    ----------
    spec : BlockSpec or CoefficientBlock
        Block description; blocks are returned unchanged.
    grid : Grid
        Grid of the material.
    notation : str
        'weighted' or 'engineering'. Engineering values of C, e and lam
        are converted to W C W, W e and W lam with W = diag(1,1,1,sqrt2,sqrt2,sqrt2).
    cap : int
        Cell cap of nonlocal blocks.

    Returns
    -------
    CoefficientBlock
    """
    if isinstance(spec, CoefficientBlock):
        return spec
    dims = BLOCK_DIMS[spec.name]
    if spec.kind == 'gaussian':
        g = spec.gaussian
        blk = gaussian_convolution_block(grid, g['width'], g['amplitude'], g['shift'], dims, cap)
    elif spec.kind == 'constant':
        blk = constant_block(grid.nc, spec.value, dims, cap=cap)
    else:
        data = np.broadcast_to(_per_cell_matrix(spec.value, dims), (grid.nc,)+dims).copy()
        centers = grid.centers()
        for region in spec.regions:
            data[region.contains(centers)] = _per_cell_matrix(region.value, dims)
        blk = CoefficientBlock(DIAGONAL_PER_CELL, dims, data, grid.nc, cap=cap)
    if notation == 'engineering' and spec.name in ENGINEERING_WEIGHTS:
        blk = to_weighted(spec.name, blk)
    return blk


def to_weighted(name, blk):
    """Convert an engineering-notation C, e or lam block to the weighted Voigt form."""
    left, right = ENGINEERING_WEIGHTS[name]
    symmetric = blk.is_symmetric()
    w = constant_block(blk.nc, np.diag(VOIGT_WEIGHT), (6, 6), symmetric=True, cap=blk.cap)
    if left:
        blk = w @ blk
    if right:
        blk = blk @ w
        if symmetric:
            blk = blk.sym()
    return blk


def build_material(blocks, grid, notation='weighted', cap=DENSE_CELL_CAP):
    """
    Build the MaterialConfig of a grid.

    Parameters
    ----------
    blocks : dict
        Block name -> BlockSpec or CoefficientBlock, as returned by
        validate_material. Missing blocks take the decoupled identity
        material, beta stays absent.

    Returns
    -------
    MaterialConfig
    """
    kwargs = {}
    for name in list(STANDARD_DIMS) + ['theta0']:
        spec = blocks.get(name)
        if spec is None:
            if name == 'beta':
                kwargs[name] = None
                continue
            value = BLOCK_DEFAULTS[name]
            kwargs[name] = constant_block(grid.nc, value, BLOCK_DIMS[name], cap=cap)
            continue
        kwargs[name] = build_block(spec, grid, notation, cap)
    return MaterialConfig(**kwargs)


def build_initial_state(initial, grid, reduced=False):
    """
    Initial StateVector from component -> SpatialProfile (or flat array);
    absent components are zero.
    """
    layout = dict(StateVector(grid, reduced).layout)
    fields = {}
    for comp, profile in initial.items():
        values = profile if isinstance(profile, np.ndarray) else profile.evaluate(grid, layout[comp])
        fields[comp] = make_field(grid, layout[comp], values, name=comp)
    return StateVector(grid, reduced, **fields)


def get_snapshot_fields(self, state, t, names):
    """
    Fields written to the snapshots of a state.

    Parameters
    ----------
    self : Builder
        The system given as Builder object.
    state : StateVector
        Full or reduced state.
    t : float
        Time of the state; the charge density psi(t) enters E and phi.
    names : list of str
        State components or derived fields: strain, D, B in full mode,
        E and phi in quasistatic mode.

    Returns
    -------
    list of Field
    """
    grid = state.grid
    derived = {}
    if state.reduced:
        if 'E' in names or 'phi' in names:
            E, phi = self.reduced.reconstruct(state, self.sources.channel('psi', t))
            derived['E'], derived['phi'] = E, phi
    elif set(names) & {'strain', 'D', 'B'}:
        strain, D, B, _ = self.operators.inverted.apply(state.T, state.E, state.H, state.theta_rel)
        derived['strain'] = make_field(grid, 6, strain)
        derived['D'] = make_field(grid, 3, D)
        derived['B'] = make_field(grid, 3, B)
    out = []
    for name in names:
        fld = derived[name] if name in derived else state[name]
        fld.name = name
        out.append(fld)
    return out
