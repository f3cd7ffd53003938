"""Module containing BuilderBase class."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import copy
import logging

from ..errors import InvalidArgumentError
from ..errors import SingularCoefficientError
from ..fields import make_grid
from ..material import assemble_operators
from ..operators import assemble_A
from ..evolution import Schedule
from ..evolution import DiscreteSystem
from ..evolution import SourceTerm
from ..evolution import simulate
from ..quasistatic import assemble_reduced
from ..quasistatic import check_theorem2
from ..wellposed import check_theorem1
from ..wellposed import check_range_nullspace
from ..wellposed import verdict_crosscheck
from .funcprop import SolverProperties
from .funcprop import WRN_CROSSCHECK
from .funcprop import WRN_UNCERTIFIED

from .various import build_material
from .various import build_initial_state
from .various import get_snapshot_fields

from .validation import validate_mode
from .validation import validate_method
from .validation import validate_notation
from .validation import validate_grid
from .validation import validate_boundary
from .validation import validate_material
from .validation import validate_quasistatic
from .validation import validate_sources
from .validation import validate_initial
from .validation import validate_schedule
from .validation import validate_solver
from .validation import validate_output

logger = logging.getLogger(__name__)

attribute_map = dict(
    # Grid
    nc='grid', h='grid', volume='grid',
    # Schedule
    dt='schedule', steps='schedule', theta='schedule', final_time='schedule',
    # SolverProperties
    tol='funcp', method='funcp', maxiter='funcp', nu_cap='funcp',
    check_tol='funcp', dense_cap='funcp',
    )

# derived from n, length, dt and steps
read_only_attributes = frozenset(['nc', 'h', 'volume', 'final_time'])


class ModelParameters(object):

    def __init__(self, params):
        for i in params:
            if i not in {'self'}:
                setattr(self, i, copy.deepcopy(params[i]))


class BuilderBase(object):
    """
    Class for building the discretized system of a simulation.

    For descriptions of all attributes use help(Builder).
    """

    def __init__(self,
                 n=(1, 1, 1), length=(1.0, 1.0, 1.0), mode='full',
                 material=None, notation='weighted', boundary=None,
                 sources=None, initial=None,
                 dt=0.01, steps=100, theta=0.5,
                 tol=1e-12, method='direct', maxiter=1000,
                 nu_cap=2.0**30, check_tol=1e-10, dense_cap=4096,
                 energy_log=None, report=None, snapshot_stride=0, snapshot_fields=None):

        self._init_copy_data(locals())
        self._init_validate_data()
        self._init_create_setup()
        self._init_create_material()

    def _init_copy_data(self, data):
        self.data = ModelParameters(data)

    def _init_validate_data(self):
        data = self.data
        data.mode = validate_mode(data.mode)
        data.method = validate_method(data.method)
        data.notation = validate_notation(data.notation)
        data.n, data.length = validate_grid(data.n, data.length)
        data.boundary = validate_boundary(data.boundary)
        data.material = validate_material(data.material)
        if data.mode == 'quasistatic':
            validate_quasistatic(data.material)
        data.sources = validate_sources(data.sources, data.mode)
        data.initial = validate_initial(data.initial, data.mode)
        data.dt, data.steps, data.theta = validate_schedule(data.dt, data.steps, data.theta)
        (data.tol, data.maxiter, data.nu_cap,
         data.check_tol, data.dense_cap) = validate_solver(data.tol, data.maxiter, data.nu_cap,
                                                           data.check_tol, data.dense_cap)
        (data.energy_log, data.report,
         data.snapshot_stride, data.snapshot_fields) = validate_output(data.energy_log, data.report,
                                                                       data.snapshot_stride, data.snapshot_fields,
                                                                       data.mode)

    def _init_create_setup(self):
        data = self.data
        self.funcp = SolverProperties(tol=data.tol, method=data.method, maxiter=data.maxiter,
                                      nu_cap=data.nu_cap, check_tol=data.check_tol, dense_cap=data.dense_cap)
        self.schedule = Schedule(data.dt, data.steps, data.theta)
        self.grid = make_grid(data.n, data.length)
        self._operators = None
        self._reduced = None
        self._system = None
        self._sources = None

    def _init_create_material(self):
        self.material = build_material(self.data.material, self.grid, self.data.notation, self.data.dense_cap)
        if not self.material.is_local:
            self.funcp.warn_dense(self.grid.nc, 'Nonlocal material')

    def __getattr__(self, item):
        sub_class_str = attribute_map.get(item)
        if sub_class_str is None:
            return super(BuilderBase, self).__getattribute__(item)
        else:
            sub_class = getattr(self, attribute_map[item])
            return getattr(sub_class, item)

    def __setattr__(self, item, value):
        if item in read_only_attributes:
            raise InvalidArgumentError('{} is derived and cannot be set, construct a new system instead.'.format(item))
        sub_class_str = attribute_map.get(item)
        if sub_class_str is None:
            super(BuilderBase, self).__setattr__(item, value)
        else:
            sub_class = getattr(self, attribute_map[item])
            setattr(sub_class, item, value)

    # mode
    def get_mode(self):
        return self.data.mode

    def set_mode(self, value):
        if value != self.data.mode:
            logger.warning('Cannot change mode from %r to %r. Consider constructing a new system using mode=%r.',
                           self.data.mode, value, value)
    mode = property(get_mode, set_mode)

    @property
    def quasistatic(self):
        return self.data.mode == 'quasistatic'

    # operators
    def get_operators(self):
        """M0 and M1 of the full system, assembled on first use."""
        if self._operators is None:
            self._operators = assemble_operators(self.material, self.grid)
        return self._operators
    operators = property(get_operators)

    # reduced
    def get_reduced(self):
        """Quasi-static ReducedSystem, assembled on first use."""
        if self._reduced is None:
            self.funcp.warn_dense(self.grid.nc, 'Quasi-static reduction')
            self._reduced = assemble_reduced(self.material, grid=self.grid, cap=self.funcp.dense_cap)
        return self._reduced
    reduced = property(get_reduced)

    # system
    def get_system(self):
        """DiscreteSystem of the selected mode."""
        if self._system is None:
            if self.quasistatic:
                self._system = self.reduced.discrete_system()
            else:
                ops = self.operators
                self._system = DiscreteSystem(ops.M0, ops.M1, assemble_A(self.grid), self.grid)
        return self._system
    system = property(get_system)

    # sources
    def get_sources(self):
        if self._sources is None:
            adjust = self.reduced.rhs if self.quasistatic else None
            self._sources = SourceTerm(self.grid, self.data.sources, reduced=self.quasistatic, adjust=adjust)
        return self._sources
    sources = property(get_sources)

    def change(self, **blocks):
        """
        Replace material blocks and drop the assembled operators.

        Parameters
        ----------
        blocks : dict
            Block name -> CoefficientBlock.
        """
        self.material = self.material.replace(**blocks)
        self._operators = self._reduced = self._system = self._sources = None

    def check(self, crosscheck=True):
        """
        Run the well-posedness check of the selected mode.

        Parameters
        ----------
        crosscheck : bool
            In full mode also compare with the eigenvalue oracle on the
            assembled per-cell matrices, if the grid is within dense_cap.

        Returns
        -------
        WellposednessReport
        """
        funcp = self.funcp
        if self.quasistatic:
            return check_theorem2(self.material, nu_cap=funcp.nu_cap, tol=funcp.check_tol,
                                  grid=self.grid, reduced=self._reduced)
        if crosscheck and self.grid.nc <= funcp.dense_cap:
            try:
                cross = verdict_crosscheck(self.material, self.grid, funcp.nu_cap, funcp.check_tol, funcp.dense_cap)
            except (InvalidArgumentError, SingularCoefficientError) as err:
                logger.info('Eigenvalue oracle not applicable: %s', err)
                report = check_theorem1(self.material, funcp.nu_cap, funcp.check_tol)
                report.notes.append('eigenvalue oracle: not applicable')
                return report
            report = cross.theorem1
            report.notes.append('eigenvalue oracle: {}'.format(cross.oracle.verdict))
            if not cross.ok:
                funcp.print_warning(WRN_CROSSCHECK, 'Structural check and eigenvalue oracle disagree: {!r}.'.format(cross))
                report.notes.append('crosscheck: agree={}, c0_ok={}, congruence_ok={}'.format(
                    cross.agree, cross.c0_ok, cross.congruence_ok))
            ops = self.operators
            if ops.M0.is_local and ops.M1.is_local:
                report.condition_results.extend(check_range_nullspace(ops.M0.cell_batch(), ops.M1.cell_batch(),
                                                                      funcp.check_tol))
            return report
        return check_theorem1(self.material, funcp.nu_cap, funcp.check_tol)

    def initial_state(self):
        return build_initial_state(self.data.initial, self.grid, self.quasistatic)

    def solve(self, uncertified=False, stride=None):
        """
        Run the theta-method from the initial state.

        Parameters
        ----------
        uncertified : bool
            Watermark the energy log, for runs without a certified check.
        stride : int or None
            Snapshot stride, the configured one if None.

        Returns
        -------
        trajectory : Trajectory
        log : EnergyLog
        """
        if uncertified:
            self.funcp.print_warning(WRN_UNCERTIFIED, 'Simulating without a certified well-posedness check.')
        funcp = self.funcp
        stride = self.data.snapshot_stride if stride is None else stride
        sources = None if self.sources.is_zero() else self.sources
        return simulate(self.system, self.initial_state(), sources, self.schedule,
                        tol=funcp.tol, method=funcp.method, maxiter=funcp.maxiter,
                        stride=stride, uncertified=uncertified)

    def snapshot_fields(self, state, t, names=None):
        """
        Fields of a state written to snapshots, the configured ones if names is None.
        """
        names = self.data.snapshot_fields if names is None else names
        return get_snapshot_fields(self, state, t, names)
