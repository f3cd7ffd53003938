"""Module containing methods for validation of input parameters."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
import numbers
from collections import OrderedDict

import numpy as np

from ..mytypes import doublenp
from ..errors import ConfigValidationError
from ..errors import InvalidArgumentError
from ..coefblock import CoefficientBlock
from ..evolution import METHODS
from ..evolution import FULL_CHANNELS
from ..evolution import REDUCED_CHANNELS
from ..evolution import POTENTIAL_CHANNELS
from ..fields import STATE_LAYOUT
from ..fields import REDUCED_LAYOUT
from ..material import STANDARD_DIMS
from ..material import DEFAULT_VALUES
from ..specfunc import SpatialProfile
from ..specfunc import TimeProfile

logger = logging.getLogger(__name__)

MODES = ('full', 'quasistatic')
NOTATIONS = ('weighted', 'engineering')
BOUNDARY = OrderedDict([('velocity', 'dirichlet'), ('electric', 'tangential'), ('heat_flux', 'normal')])

# Config key -> MaterialConfig block
BLOCK_NAMES = OrderedDict([
    ('rho_star', 'rho_star'), ('C', 'C'), ('e', 'e'), ('lambda', 'lam'), ('p', 'p'),
    ('epsilon', 'epsilon'), ('mu', 'mu'), ('alpha', 'alpha'), ('theta0', 'theta0'),
    ('sigma', 'sigma'), ('kappa0_inv', 'kappa0_inv'), ('kappa1', 'kappa1'), ('beta', 'beta')])
BLOCK_DIMS = dict(STANDARD_DIMS, theta0=(1, 1))
BLOCK_DEFAULTS = dict(DEFAULT_VALUES, theta0=1.0)
BLOCK_KEYS = ('value', 'regions', 'gaussian')
REGION_KEYS = ('lower', 'upper', 'value')
GAUSSIAN_KEYS = ('width', 'amplitude', 'shift')

FULL_FIELDS = tuple(name for name, _ in STATE_LAYOUT) + ('strain', 'D', 'B')
REDUCED_FIELDS = tuple(name for name, _ in REDUCED_LAYOUT) + ('E', 'phi')
PROFILE_KEYS = ('spatial', 'time')


def _require(cond, key, constraint):
    if not cond:
        raise ConfigValidationError(key, constraint)


def _is_real(x):
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def _is_int(x):
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def _real_triple(value, key, positive=False):
    _require(isinstance(value, (list, tuple)) and len(value) == 3 and all(_is_real(x) for x in value),
             key, 'three numbers expected')
    if positive:
        _require(all(np.isfinite(x) and x > 0 for x in value), key, 'values have to be positive')
    return tuple(float(x) for x in value)


def validate_mode(mode):
    _require(mode in MODES, 'mode', 'one of {}'.format(', '.join(MODES)))
    return mode


def validate_method(method):
    if method not in METHODS:
        logger.warning('Allowed solver methods are: %s. Using default method=\'direct\'.', ', '.join(METHODS))
        method = 'direct'
    return method


def validate_notation(notation):
    _require(notation in NOTATIONS, 'material.notation', 'one of {}'.format(', '.join(NOTATIONS)))
    return notation


def validate_grid(n, length):
    _require(isinstance(n, (list, tuple)) and len(n) == 3 and all(_is_int(x) and x >= 1 for x in n),
             'grid.n', 'three positive integers expected')
    return tuple(int(x) for x in n), _real_triple(length, 'grid.length', positive=True)


def validate_boundary(boundary):
    boundary = dict(boundary or {})
    out = OrderedDict()
    for key, allowed in BOUNDARY.items():
        value = boundary.pop(key, allowed)
        _require(value == allowed, 'boundary.'+key, 'only {!r} is supported'.format(allowed))
        out[key] = value
    for key in boundary:
        raise ConfigValidationError('boundary.'+key, 'unknown key')
    return out


def validate_schedule(dt, steps, theta):
    _require(_is_real(dt) and np.isfinite(dt) and dt > 0, 'schedule.dt', 'dt has to be positive')
    _require(_is_int(steps) and steps >= 1, 'schedule.steps', 'steps has to be an integer >= 1')
    _require(_is_real(theta) and 0.5 <= theta <= 1, 'schedule.theta', 'theta out of [0.5,1]')
    return float(dt), int(steps), float(theta)


def validate_solver(tol, maxiter, nu_cap, check_tol, dense_cap):
    _require(_is_real(tol) and 0 < tol < 1, 'solver.tol', 'tol has to be in (0,1)')
    _require(_is_int(maxiter) and maxiter >= 1, 'solver.maxiter', 'maxiter has to be an integer >= 1')
    _require(_is_real(nu_cap) and nu_cap >= 1, 'solver.nu_cap', 'nu_cap has to be >= 1')
    _require(_is_real(check_tol) and check_tol > 0, 'solver.check_tol', 'check_tol has to be positive')
    _require(_is_int(dense_cap) and dense_cap >= 1, 'solver.dense_cap', 'dense_cap has to be an integer >= 1')
    return float(tol), int(maxiter), float(nu_cap), float(check_tol), int(dense_cap)


class RegionSpec(object):
    """
    Value of a coefficient block on the cells whose centers lie in a closed box.

    Attributes
    ----------
    lower, upper : tuple of float
        Corners of the box.
    value : float or array
        Scalar or per-cell matrix.
    """

    def __init__(self, lower, upper, value):
        self.lower = lower
        self.upper = upper
        self.value = value

    def contains(self, points):
        """Boolean mask of the points inside the box."""
        lower = np.asarray(self.lower, dtype=doublenp)
        upper = np.asarray(self.upper, dtype=doublenp)
        return np.all((points >= lower) & (points <= upper), axis=1)

    def __repr__(self):
        return 'RegionSpec(lower={}, upper={})'.format(self.lower, self.upper)


class BlockSpec(object):
    """
    Validated description of one material block.

    Attributes
    ----------
    name : str
        MaterialConfig block name.
    value : float or array
        Scalar (times identity) or per-cell matrix.
    regions : list of RegionSpec
        Overrides of value, later regions win.
    gaussian : dict or None
        width, amplitude and shift of a nonlocal convolution block.
    """

    def __init__(self, name, value=None, regions=(), gaussian=None):
        self.name = name
        self.value = value
        self.regions = list(regions)
        self.gaussian = gaussian

    @property
    def kind(self):
        if self.gaussian is not None:
            return 'gaussian'
        return 'regions' if self.regions else 'constant'

    def is_zero(self):
        if self.gaussian is not None:
            return False
        return not np.any(self.value) and not any(np.any(r.value) for r in self.regions)

    def __repr__(self):
        return 'BlockSpec({!r}, kind={!r})'.format(self.name, self.kind)


def validate_block_value(key, value, dims):
    """
    Check a constant block value against per-cell dims.

    Returns
    -------
    float or array
    """
    rows, cols = dims
    if _is_real(value):
        _require(np.isfinite(value), key, 'value has to be finite')
        _require(rows == cols or value == 0, key, 'scalar value of a non-square block has to be 0')
        return float(value)
    _require(isinstance(value, (list, tuple, np.ndarray)), key, 'number or matrix expected')
    try:
        arr = np.asarray(value, dtype=doublenp)
    except (TypeError, ValueError):
        raise ConfigValidationError(key, 'matrix has to be a rectangular list of numbers')
    if arr.ndim == 1 and cols == 1 and arr.size == rows:
        arr = arr.reshape(rows, 1)
    _require(arr.shape == (rows, cols), key, 'matrix of shape {}x{} expected'.format(rows, cols))
    _require(np.all(np.isfinite(arr)), key, 'entries have to be finite')
    return arr


def _validate_regions(key, regions, dims):
    _require(isinstance(regions, (list, tuple)), key, 'array of tables expected')
    out = []
    for i, region in enumerate(regions):
        rkey = '{}[{}]'.format(key, i)
        if isinstance(region, RegionSpec):
            out.append(region)
            continue
        _require(isinstance(region, dict), rkey, 'table expected')
        for k in region:
            _require(k in REGION_KEYS, rkey+'.'+k, 'unknown key')
        for k in REGION_KEYS:
            _require(k in region, rkey+'.'+k, 'required key missing')
        lower = _real_triple(region['lower'], rkey+'.lower')
        upper = _real_triple(region['upper'], rkey+'.upper')
        _require(all(lo <= up for lo, up in zip(lower, upper)), rkey, 'lower has to be <= upper')
        out.append(RegionSpec(lower, upper, validate_block_value(rkey+'.value', region['value'], dims)))
    return out


def _validate_gaussian(key, gaussian, dims):
    _require(isinstance(gaussian, dict), key, 'table expected')
    for k in gaussian:
        _require(k in GAUSSIAN_KEYS, key+'.'+k, 'unknown key')
    _require(dims[0] == dims[1], key, 'convolution kernels need a square block')
    out = {}
    for k, default in (('width', None), ('amplitude', 1.0), ('shift', 0.0)):
        value = gaussian.get(k, default)
        _require(value is not None, key+'.'+k, 'required key missing')
        _require(_is_real(value) and np.isfinite(value), key+'.'+k, 'number expected')
        out[k] = float(value)
    _require(out['width'] > 0, key+'.width', 'width has to be positive')
    _require(out['shift'] >= 0, key+'.shift', 'shift has to be nonnegative')
    return out


def validate_block(cfg_name, entry):
    """
    Validate one [material] entry.

    Parameters
    ----------
    cfg_name : str
        Config key of the block ('lambda' for the thermo-mechanic coupling).
    entry : float, list, dict, BlockSpec or CoefficientBlock
        Raw entry.

    Returns
    -------
    BlockSpec or CoefficientBlock
    """
    key = 'material.'+cfg_name
    _require(cfg_name in BLOCK_NAMES, key, 'unknown material block')
    name = BLOCK_NAMES[cfg_name]
    dims = BLOCK_DIMS[name]
    if isinstance(entry, (BlockSpec, CoefficientBlock)):
        return entry
    if not isinstance(entry, dict):
        return BlockSpec(name, validate_block_value(key, entry, dims))
    for k in entry:
        _require(k in BLOCK_KEYS, key+'.'+k, 'unknown key')
    if 'gaussian' in entry:
        _require('value' not in entry and 'regions' not in entry, key,
                 'gaussian excludes value and regions')
        _require(name != 'theta0', key+'.gaussian', 'theta0 has to be local')
        return BlockSpec(name, gaussian=_validate_gaussian(key+'.gaussian', entry['gaussian'], dims))
    default = BLOCK_DEFAULTS.get(name, 0.0)
    value = validate_block_value(key+'.value', entry.get('value', default), dims)
    regions = _validate_regions(key+'.regions', entry.get('regions', []), dims)
    return BlockSpec(name, value, regions)


def validate_material(material):
    """
    Validate the [material] table without its notation key.

    Returns
    -------
    OrderedDict
        MaterialConfig block name -> BlockSpec or CoefficientBlock; blocks
        not given are absent and take the decoupled identity material.
    """
    out = OrderedDict()
    for cfg_name, entry in (material or {}).items():
        blk = validate_block(cfg_name, entry)
        out[BLOCK_NAMES[cfg_name]] = blk
    return out


def validate_quasistatic(material):
    sigma = material.get('sigma')
    if sigma is None:
        return
    _require(sigma.is_zero(), 'material.sigma', 'sigma has to be 0 in quasistatic mode (no conductivity term)')


def _validate_profile(key, table, cls):
    if isinstance(table, cls):
        return table
    _require(isinstance(table, dict), key, 'table expected')
    table = dict(table)
    _require('kind' in table, key+'.kind', 'required key missing')
    kind = table.pop('kind')
    for k, v in table.items():
        _require(_is_real(v) or isinstance(v, (list, tuple)) and all(_is_real(x) for x in v),
                 key+'.'+k, 'number or list of numbers expected')
    try:
        return cls(kind, **table)
    except (InvalidArgumentError, TypeError) as err:
        raise ConfigValidationError(key, str(err))


def validate_spatial(key, table):
    return _validate_profile(key, table, SpatialProfile)


def validate_time(key, table):
    return _validate_profile(key, table, TimeProfile)


def _mode_channels(mode):
    if mode == 'quasistatic':
        return tuple(REDUCED_CHANNELS) + POTENTIAL_CHANNELS
    return tuple(FULL_CHANNELS)


def validate_sources(sources, mode):
    """
    Validate the [sources] table.

    Returns
    -------
    dict
        Channel -> (SpatialProfile or array, TimeProfile or None).
    """
    allowed = _mode_channels(mode)
    out = {}
    for channel, entry in (sources or {}).items():
        key = 'sources.'+channel
        _require(channel in allowed, key, 'channel not available in {} mode, allowed are {}'.format(
            mode, ', '.join(sorted(allowed))))
        if isinstance(entry, tuple):
            out[channel] = entry
            continue
        _require(isinstance(entry, dict), key, 'table expected')
        for k in entry:
            _require(k in PROFILE_KEYS, key+'.'+k, 'unknown key')
        _require('spatial' in entry, key+'.spatial', 'required key missing')
        spatial = validate_spatial(key+'.spatial', entry['spatial'])
        profile = validate_time(key+'.time', entry['time']) if 'time' in entry else None
        out[channel] = (spatial, profile)
    return out


def validate_initial(initial, mode):
    """
    Validate the [initial] table: component -> SpatialProfile.
    """
    layout = REDUCED_LAYOUT if mode == 'quasistatic' else STATE_LAYOUT
    allowed = [name for name, _ in layout]
    out = {}
    for comp, entry in (initial or {}).items():
        key = 'initial.'+comp
        _require(comp in allowed, key, 'component not in the {} state, allowed are {}'.format(
            mode, ', '.join(allowed)))
        if isinstance(entry, dict) and 'spatial' in entry:
            for k in entry:
                _require(k == 'spatial', key+'.'+k, 'unknown key')
            entry = entry['spatial']
        out[comp] = entry if isinstance(entry, np.ndarray) else validate_spatial(key, entry)
    return out


def validate_output(energy_log, report, snapshot_stride, snapshot_fields, mode):
    for key, path in (('output.energy_log', energy_log), ('output.report', report)):
        _require(path is None or isinstance(path, str) and path, key, 'non-empty path expected')
    _require(_is_int(snapshot_stride) and snapshot_stride >= 0, 'output.snapshot_stride',
             'snapshot_stride has to be an integer >= 0')
    allowed = REDUCED_FIELDS if mode == 'quasistatic' else FULL_FIELDS
    if snapshot_fields is None:
        snapshot_fields = [name for name in allowed if name not in ('strain', 'D', 'B', 'phi')]
    _require(isinstance(snapshot_fields, (list, tuple)), 'output.snapshot_fields', 'list of field names expected')
    for name in snapshot_fields:
        _require(name in allowed, 'output.snapshot_fields', '{!r} not available in {} mode, allowed are {}'.format(
            name, mode, ', '.join(allowed)))
    return energy_log, report, int(snapshot_stride), list(snapshot_fields)
