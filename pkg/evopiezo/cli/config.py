"""
Module containing the run configuration: a TOML document parsed into a
validated SimulationSpec.

Tables: mode, [grid], [boundary], [material], [sources.<channel>],
[initial.<component>], [schedule], [solver], [output]. Every unknown key
is an error. The full grammar is in docs/source/config.rst.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import io
import logging
import re

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from ..errors import ConfigParseError
from ..errors import ConfigValidationError
from ..evolution import Schedule
from ..builder.funcprop import SolverProperties
from ..builder.validation import validate_mode
from ..builder.validation import validate_method
from ..builder.validation import validate_notation
from ..builder.validation import validate_grid
from ..builder.validation import validate_boundary
from ..builder.validation import validate_material
from ..builder.validation import validate_quasistatic
from ..builder.validation import validate_sources
from ..builder.validation import validate_initial
from ..builder.validation import validate_schedule
from ..builder.validation import validate_solver
from ..builder.validation import validate_output

logger = logging.getLogger(__name__)

TOP_KEYS = ('mode', 'grid', 'boundary', 'material', 'sources', 'initial', 'schedule', 'solver', 'output')
TABLE_KEYS = {
    'grid': ('n', 'length'),
    'schedule': ('dt', 'steps', 'theta'),
    'solver': ('tol', 'method', 'maxiter', 'nu_cap', 'check_tol', 'dense_cap'),
    'output': ('energy_log', 'report', 'snapshot_stride', 'snapshot_fields'),
    }
DEFAULTS = dict(
    mode='full', length=[1.0, 1.0, 1.0], notation='weighted',
    dt=0.01, steps=100, theta=0.5,
    tol=1e-12, method='direct', maxiter=1000, nu_cap=2.0**30, check_tol=1e-10, dense_cap=4096,
    energy_log=None, report=None, snapshot_stride=0, snapshot_fields=None)

_POSITION = re.compile(r'at line (\d+), column (\d+)')


class SimulationSpec(object):
    """
    Validated run configuration with all defaults applied.

    Attributes
    ----------
    mode : str
        'full' or 'quasistatic'.
    n, length : tuple
        Grid cells per axis and box extents.
    boundary : OrderedDict
        Boundary flags.
    notation : str
        Notation of the C, e and lambda values.
    material : OrderedDict
        Block name -> BlockSpec, only the given blocks.
    sources : dict
        Channel -> (SpatialProfile, TimeProfile or None).
    initial : dict
        State component -> SpatialProfile.
    dt, steps, theta : float, int, float
        Schedule.
    tol, method, maxiter, nu_cap, check_tol, dense_cap
        Solver knobs.
    energy_log, report : str or None
        Output paths.
    snapshot_stride : int
        Snapshot stride, 0 for none.
    snapshot_fields : list of str
        Snapshot fields.
    """

    fields = ('n', 'length', 'mode', 'material', 'notation', 'boundary', 'sources', 'initial',
              'dt', 'steps', 'theta', 'tol', 'method', 'maxiter', 'nu_cap', 'check_tol', 'dense_cap',
              'energy_log', 'report', 'snapshot_stride', 'snapshot_fields')

    def __init__(self, **kwargs):
        for name in self.fields:
            setattr(self, name, kwargs.pop(name))
        if kwargs:
            raise TypeError('Unknown SimulationSpec fields {}.'.format(sorted(kwargs)))

    @property
    def schedule(self):
        return Schedule(self.dt, self.steps, self.theta)

    @property
    def solver(self):
        return SolverProperties(tol=self.tol, method=self.method, maxiter=self.maxiter,
                                nu_cap=self.nu_cap, check_tol=self.check_tol, dense_cap=self.dense_cap)

    def as_kwargs(self):
        """Keyword arguments of Builder."""
        return dict((name, getattr(self, name)) for name in self.fields)

    def __repr__(self):
        return 'SimulationSpec(mode={!r}, n={}, steps={}, dt={})'.format(self.mode, self.n, self.steps, self.dt)


def _decode_error(err, text):
    line = getattr(err, 'lineno', None)
    column = getattr(err, 'colno', None)
    if line is None:
        match = _POSITION.search(str(err))
        if match:
            line, column = int(match.group(1)), int(match.group(2))
        else:
            lines = text.split('\n')
            line, column = len(lines), len(lines[-1]) + 1
    msg = getattr(err, 'msg', None) or _POSITION.sub('', str(err)).rstrip(' ()')
    return ConfigParseError(msg, line, column)


def _table(doc, key):
    value = doc.get(key, {})
    if not isinstance(value, dict):
        raise ConfigValidationError(key, 'table expected')
    return value


def _check_keys(table, prefix):
    allowed = TABLE_KEYS[prefix]
    for key in table:
        if key not in allowed:
            raise ConfigValidationError('{}.{}'.format(prefix, key), 'unknown key')


def _get(table, key):
    return table.get(key, DEFAULTS[key])


def parse_config(text):
    """
    Parse a TOML run configuration.

    Parameters
    ----------
    text : str
        Document text.

    Returns
    -------
    SimulationSpec

    Raises
    ------
    ConfigParseError
        Malformed document, with line and column.
    ConfigValidationError
        Well-formed document violating a constraint, naming the key.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as err:
        raise _decode_error(err, text)
    for key in doc:
        if key not in TOP_KEYS:
            raise ConfigValidationError(key, 'unknown key')
    mode = validate_mode(doc.get('mode', DEFAULTS['mode']))
    grid = _table(doc, 'grid')
    _check_keys(grid, 'grid')
    if 'n' not in grid:
        raise ConfigValidationError('grid.n', 'required key missing')
    n, length = validate_grid(grid['n'], _get(grid, 'length'))
    boundary = validate_boundary(_table(doc, 'boundary'))
    material = dict(_table(doc, 'material'))
    notation = validate_notation(material.pop('notation', DEFAULTS['notation']))
    blocks = validate_material(material)
    if mode == 'quasistatic':
        validate_quasistatic(blocks)
    sources = validate_sources(_table(doc, 'sources'), mode)
    initial = validate_initial(_table(doc, 'initial'), mode)
    schedule = _table(doc, 'schedule')
    _check_keys(schedule, 'schedule')
    dt, steps, theta = validate_schedule(_get(schedule, 'dt'), _get(schedule, 'steps'), _get(schedule, 'theta'))
    solver = _table(doc, 'solver')
    _check_keys(solver, 'solver')
    tol, maxiter, nu_cap, check_tol, dense_cap = validate_solver(
        _get(solver, 'tol'), _get(solver, 'maxiter'), _get(solver, 'nu_cap'),
        _get(solver, 'check_tol'), _get(solver, 'dense_cap'))
    method = validate_method(_get(solver, 'method'))
    output = _table(doc, 'output')
    _check_keys(output, 'output')
    energy_log, report, stride, snapshot_fields = validate_output(
        _get(output, 'energy_log'), _get(output, 'report'), _get(output, 'snapshot_stride'),
        _get(output, 'snapshot_fields'), mode)
    logger.debug('Parsed %s configuration on %s cells.', mode, n)
    return SimulationSpec(n=n, length=length, mode=mode, material=blocks, notation=notation, boundary=boundary,
                          sources=sources, initial=initial, dt=dt, steps=steps, theta=theta,
                          tol=tol, method=method, maxiter=maxiter, nu_cap=nu_cap, check_tol=check_tol,
                          dense_cap=dense_cap, energy_log=energy_log, report=report,
                          snapshot_stride=stride, snapshot_fields=snapshot_fields)


def load_config(path):
    """Read and parse a configuration file."""
    with io.open(path, 'r', encoding='utf-8') as f:
        return parse_config(f.read())
