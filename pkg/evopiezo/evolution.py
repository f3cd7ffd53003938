"""
Module containing the implicit theta-method for (d/dt M0 + M1 + A) U = F
with per-step energy accounting.

One step solves

    (M0/dt + theta (M1 + A)) U1 = (M0/dt - (1 - theta)(M1 + A)) U0 + F(t0 + theta dt).

For theta = 0.5 and U_mid = (U0 + U1)/2 the energy E(U) = <M0 U, U>/2 obeys

    (E(U1) - E(U0))/dt + <sym(M1) U_mid, U_mid> - <F, U_mid> = <r, U_mid>,

where r is the residual of the linear solve; the right-hand side is the
logged balance residual.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging
import numbers

import numpy as np
import scipy.sparse as sp
import scipy.linalg as la
import scipy.sparse.linalg as spla

from .mytypes import doublenp
from .errors import InvalidArgumentError
from .errors import SolverFailure
from .coefblock import SYM_RTOL
from .fields import Field
from .fields import StateVector
from .fields import STATE_LAYOUT
from .fields import REDUCED_LAYOUT
from .specfunc import SpatialProfile
from .specfunc import TimeProfile
from .material import BlockOperator
from .operators import SpatialBlock

logger = logging.getLogger(__name__)

METHODS = ('direct', 'gmres', 'bicgstab')
SOLVER_TOL = 1e-12
MAXITER = 1000
LOG_COLUMNS = ('step', 'time', 'energy', 'dissipation', 'source_work', 'balance_residual', 'solve_residual')

FULL_CHANNELS = {'F0': 'v', 'F1': 'T', 'F2': 'E', 'F3': 'H', 'F4': 'theta_rel', 'F5': 'q'}
REDUCED_CHANNELS = {'F0': 'v', 'F1': 'T', 'F4': 'theta_rel', 'F5': 'q'}
POTENTIAL_CHANNELS = ('psi', 'psi_dot')


class Schedule(object):
    """
    Time stepping schedule.

    Parameters
    ----------
    dt : float
        Positive step size.
    steps : int
        Number of steps, at least 1.
    theta : float
        Implicitness in [0.5, 1].
    """

    def __init__(self, dt=0.01, steps=100, theta=0.5):
        if isinstance(dt, bool) or not isinstance(dt, numbers.Real) or not np.isfinite(dt) or dt <= 0:
            raise InvalidArgumentError('dt has to be positive, got {}.'.format(dt))
        if isinstance(steps, bool) or not isinstance(steps, numbers.Integral) or steps < 1:
            raise InvalidArgumentError('steps has to be an integer >= 1, got {}.'.format(steps))
        if isinstance(theta, bool) or not isinstance(theta, numbers.Real) or not 0.5 <= theta <= 1:
            raise InvalidArgumentError('theta out of [0.5,1], got {}.'.format(theta))
        self.dt = float(dt)
        self.steps = int(steps)
        self.theta = float(theta)

    def time(self, n):
        return n*self.dt

    @property
    def final_time(self):
        return self.steps*self.dt

    def __repr__(self):
        return 'Schedule(dt={}, steps={}, theta={})'.format(self.dt, self.steps, self.theta)


def _as_operator(op):
    if isinstance(op, BlockOperator):
        op = op.matrix()
    elif isinstance(op, SpatialBlock):
        op = op.A
    if sp.issparse(op):
        return op.tocsr()
    return np.atleast_2d(np.asarray(op, dtype=doublenp))


def _asymmetry(op):
    diff = abs(op - op.T).max()
    scale = abs(op).max()
    return diff/scale if scale > 0 else 0.0


def _combine(terms):
    """Sum of scaled operators; dense if any term is dense."""
    dense = any(not sp.issparse(op) for _, op in terms)
    out = None
    for scale, op in terms:
        if dense and sp.issparse(op):
            op = op.toarray()
        out = scale*op if out is None else out + scale*op
    return out if dense else out.tocsc()


class DiscreteSystem(object):
    """
    Assembled operators (M0, M1, A) of a semi-discrete evolution equation.

    Parameters
    ----------
    M0 : BlockOperator, sparse matrix or array
        Symmetric weight of the time derivative.
    M1 : BlockOperator, sparse matrix or array
        Zeroth order part.
    A : SpatialBlock, sparse matrix or array
        Skew part.
    grid : Grid or None
        Grid of the state; None for plain vector systems.
    """

    def __init__(self, M0, M1, A, grid=None):
        self.M0 = _as_operator(M0)
        self.M1 = _as_operator(M1)
        self.A = _as_operator(A)
        self.grid = grid
        n = self.M0.shape[0]
        for name, op in (('M0', self.M0), ('M1', self.M1), ('A', self.A)):
            if op.shape != (n, n):
                raise InvalidArgumentError('{} has shape {}, expected {}.'.format(name, op.shape, (n, n)))
        if _asymmetry(self.M0) > SYM_RTOL:
            raise InvalidArgumentError('M0 has to be symmetric.')
        self.sym_M1 = 0.5*(self.M1 + self.M1.T)
        self.reduced = grid is not None and n == sum(c for _, c in REDUCED_LAYOUT)*grid.nc
        if grid is not None and not self.reduced and n != sum(c for _, c in STATE_LAYOUT)*grid.nc:
            raise InvalidArgumentError('Operators of dimension {} do not fit a state on {} cells.'.format(n, grid.nc))

    @property
    def dim(self):
        return self.M0.shape[0]

    @property
    def layout(self):
        return REDUCED_LAYOUT if self.reduced else STATE_LAYOUT

    def energy(self, u):
        """E(U) = <M0 U, U>/2."""
        u = _array(u)
        return 0.5*float(u.dot(self.M0.dot(u)))

    def dissipation_rate(self, u):
        u = _array(u)
        return float(u.dot(self.sym_M1.dot(u)))

    def zero_state(self):
        if self.grid is None:
            return np.zeros(self.dim, dtype=doublenp)
        return StateVector(self.grid, reduced=self.reduced)

    def __repr__(self):
        return 'DiscreteSystem(dim={}, reduced={})'.format(self.dim, self.reduced)


def _array(u):
    if isinstance(u, StateVector):
        return u.to_array()
    return np.asarray(u, dtype=doublenp).ravel()


def _like(template, arr):
    if isinstance(template, StateVector):
        return StateVector.from_array(template.grid, arr, template.reduced)
    return arr


class LinearSolver(object):
    """
    Linear solver with a relative residual contract, factorizing once.

    Parameters
    ----------
    op : sparse matrix or array
        Square system matrix.
    method : str
        'direct' (sparse or dense LU), 'gmres' or 'bicgstab' (with an
        incomplete LU preconditioner for sparse matrices).
    tol : float
        Required relative residual |op x - rhs|/|rhs|.
    maxiter : int
        Iteration cap of the Krylov methods.

    Attributes
    ----------
    last_residual : float or None
        Relative residual of the last solve.
    """

    def __init__(self, op, method='direct', tol=SOLVER_TOL, maxiter=MAXITER):
        if method not in METHODS:
            raise InvalidArgumentError('Unknown solver method {!r}, allowed are {}.'.format(method, METHODS))
        self.op = op.tocsc() if sp.issparse(op) else np.asarray(op, dtype=doublenp)
        if self.op.ndim != 2 or self.op.shape[0] != self.op.shape[1]:
            raise InvalidArgumentError('Linear solver needs a square operator, got shape {}.'.format(self.op.shape))
        self.method = method
        self.tol = tol
        self.maxiter = maxiter
        self.last_residual = None
        self._lu = None
        self._precond = None
        if method == 'direct':
            self._factor()
        elif sp.issparse(self.op):
            try:
                ilu = spla.spilu(self.op)
                self._precond = spla.LinearOperator(self.op.shape, ilu.solve)
            except RuntimeError as err:
                logger.warning('Incomplete LU failed (%s), iterating without preconditioner.', err)

    def _factor(self):
        try:
            if sp.issparse(self.op):
                self._lu = spla.splu(self.op)
            else:
                self._lu = la.lu_factor(self.op, check_finite=True)
                if np.any(np.diag(self._lu[0]) == 0):
                    raise RuntimeError('Factor is exactly singular')
        except RuntimeError as err:
            raise SolverFailure('Direct factorization failed: {}.'.format(err), residual=np.inf)

    def _direct(self, rhs):
        if sp.issparse(self.op):
            return self._lu.solve(rhs)
        return la.lu_solve(self._lu, rhs)

    def residual(self, x, rhs):
        return float(np.linalg.norm(self.op.dot(x) - rhs)/np.linalg.norm(rhs))

    def solve(self, rhs):
        """Solution x with |op x - rhs| <= tol |rhs|; raises SolverFailure otherwise."""
        rhs = np.asarray(rhs, dtype=doublenp)
        if not np.any(rhs):
            self.last_residual = 0.0
            return np.zeros_like(rhs)
        if self.method == 'direct':
            x = self._direct(rhs)
            res = self.residual(x, rhs)
            if res > self.tol:
                # one step of iterative refinement
                x = x + self._direct(rhs - self.op.dot(x))
                res = self.residual(x, rhs)
        else:
            krylov = spla.gmres if self.method == 'gmres' else spla.bicgstab
            x, info = krylov(self.op, rhs, rtol=self.tol, atol=0.0, maxiter=self.maxiter, M=self._precond)
            res = self.residual(x, rhs)
            if info != 0:
                logger.debug('%s returned info=%d, residual %.3e.', self.method, info, res)
        self.last_residual = res
        if not res <= self.tol:
            raise SolverFailure('Linear solve reached relative residual {:.3e} > {:.3e}.'.format(res, self.tol),
                                residual=res)
        return x


def solve_linear(op, rhs, tol=SOLVER_TOL, method='direct', maxiter=MAXITER):
    """One-shot solve of op x = rhs to relative residual tol."""
    return LinearSolver(_as_operator(op), method, tol, maxiter).solve(rhs)


class ThetaStepper(object):
    """
    Factorized theta-method step operators for a fixed dt.

    Attributes
    ----------
    lhs, rhs_op : sparse matrix or array
        M0/dt + theta (M1 + A) and M0/dt - (1 - theta)(M1 + A).
    solver : LinearSolver
        Solver of lhs.
    """

    def __init__(self, sys, dt, theta=0.5, tol=SOLVER_TOL, method='direct', maxiter=MAXITER):
        if not dt > 0:
            raise InvalidArgumentError('dt has to be positive, got {}.'.format(dt))
        if not 0.5 <= theta <= 1:
            raise InvalidArgumentError('theta out of [0.5,1], got {}.'.format(theta))
        self.sys = sys
        self.dt = dt
        self.theta = theta
        self.lhs = _combine([(1.0/dt, sys.M0), (theta, sys.M1), (theta, sys.A)])
        self.rhs_op = _combine([(1.0/dt, sys.M0), (theta - 1.0, sys.M1), (theta - 1.0, sys.A)])
        self.solver = LinearSolver(self.lhs, method, tol, maxiter)

    def advance(self, u0, f):
        """Returns the next state as a flat array."""
        rhs = self.rhs_op.dot(u0)
        if f is not None:
            rhs = rhs + f
        return self.solver.solve(rhs)


def step(sys, u, f_mid, dt, theta=0.5, tol=SOLVER_TOL, method='direct'):
    """
    One theta-method step.

    Parameters
    ----------
    sys : DiscreteSystem
        Assembled system.
    u : StateVector or array
        Current state.
    f_mid : Field, StateVector, array or None
        Source at t + theta*dt.
    dt : float
        Step size.
    theta : float
        Implicitness in [0.5, 1].

    Returns
    -------
    StateVector or array
        Next state, of the type of u.
    """
    f = None if f_mid is None else _array(f_mid.values if isinstance(f_mid, Field) else f_mid)
    stepper = ThetaStepper(sys, dt, theta, tol, method)
    return _like(u, stepper.advance(_array(u), f))


class SourceChannel(object):
    """Spatial profile times time profile."""

    def __init__(self, values, profile=None):
        self.values = np.asarray(values, dtype=doublenp)
        self.profile = TimeProfile('constant') if profile is None else profile

    def __call__(self, t):
        return self.profile(t)*self.values


class SourceTerm(object):
    """
    Right-hand side F(t) assembled from per-channel sources.

    Parameters
    ----------
    grid : Grid
        Grid of the state.
    channels : dict
        Channel name -> (SpatialProfile or flat array, TimeProfile or None).
        Full systems use F0..F5; reduced systems F0, F1, F4, F5 and the
        charge channels psi and psi_dot.
    reduced : bool
        Reduced (13-component) system.
    adjust : callable or None
        For reduced systems, maps (F0, F1, F4, F5, psi_dot) to the adjusted
        right-hand side StateVector.
    """

    def __init__(self, grid, channels=None, reduced=False, adjust=None):
        self.grid = grid
        self.reduced = reduced
        self.adjust = adjust
        self.layout = REDUCED_LAYOUT if reduced else STATE_LAYOUT
        allowed = dict(REDUCED_CHANNELS if reduced else FULL_CHANNELS)
        ncomp = dict(self.layout)
        if reduced:
            allowed.update((name, None) for name in POTENTIAL_CHANNELS)
        self.channels = {}
        for name, (spatial, profile) in (channels or {}).items():
            if name not in allowed:
                raise InvalidArgumentError('Unknown source channel {!r}, allowed are {}.'.format(
                    name, sorted(allowed)))
            comp = allowed[name]
            nc = 1 if comp is None else ncomp[comp]
            if isinstance(spatial, SpatialProfile):
                values = spatial.evaluate(grid, nc)
            else:
                values = np.asarray(spatial, dtype=doublenp).ravel()
            if values.shape != (nc*grid.nc,):
                raise InvalidArgumentError('Source {} needs {} values, got {}.'.format(name, nc*grid.nc, values.size))
            self.channels[name] = SourceChannel(values, profile)
        self._map = allowed

    def channel(self, name, t):
        """Values of one channel at time t, zeros if absent."""
        if name in self.channels:
            return self.channels[name](t)
        comp = self._map.get(name)
        nc = 1 if comp is None else dict(self.layout)[comp]
        return np.zeros(nc*self.grid.nc, dtype=doublenp)

    def __call__(self, t):
        """Flat right-hand side at time t."""
        if self.reduced and self.adjust is not None:
            g = self.adjust(*[self.channel(name, t) for name in ('F0', 'F1', 'F4', 'F5', 'psi_dot')])
            return _array(g)
        fields = dict((comp, self.channel(name, t)) for name, comp in self._map.items() if comp is not None)
        return StateVector(self.grid, reduced=self.reduced, **fields).to_array()

    def is_zero(self):
        return not self.channels


class EnergyLog(object):
    """
    Per-step energy accounting.

    Attributes
    ----------
    rows : list of tuple
        (step, time, energy, dissipation, source_work, balance_residual,
        solve_residual); row 0 is the initial state.
    uncertified : bool
        The run skipped the well-posedness check.
    aborted : tuple or None
        (step, solve_residual) of a failed solve.
    """

    columns = LOG_COLUMNS

    def __init__(self, uncertified=False):
        self.rows = []
        self.uncertified = uncertified
        self.aborted = None

    def append(self, step, time, energy, dissipation, source_work, balance_residual, solve_residual):
        self.rows.append((int(step), float(time), float(energy), float(dissipation), float(source_work),
                          float(balance_residual), float(solve_residual)))

    def column(self, name):
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows], dtype=doublenp)

    def as_array(self):
        return np.array(self.rows, dtype=doublenp).reshape(-1, len(self.columns))

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return 'EnergyLog(rows={}, uncertified={}, aborted={})'.format(len(self.rows), self.uncertified, self.aborted)


class Trajectory(object):
    """
    Final state and snapshots of a run.

    Attributes
    ----------
    final : StateVector or array
        State after the last completed step.
    snapshots : list of tuple
        (step, time, state) every stride steps, step 0 included; empty for stride 0.
    stride : int
        Snapshot stride, 0 for none.
    """

    def __init__(self, stride=0):
        self.final = None
        self.snapshots = []
        self.stride = stride

    def record(self, n, t, state):
        self.final = state
        if self.stride and n % self.stride == 0:
            self.snapshots.append((n, t, state))


def simulate(sys, u0, src, schedule, tol=SOLVER_TOL, method='direct', maxiter=MAXITER, stride=0,
             uncertified=False):
    """
    Run the theta-method over a schedule.

    Parameters
    ----------
    sys : DiscreteSystem
        Assembled system.
    u0 : StateVector or array
        Initial state.
    src : SourceTerm, callable or None
        F(t) as a flat array; None for no source.
    schedule : Schedule
        dt, steps and theta.
    tol : float
        Relative residual of each solve.
    method : str
        Solver method.
    stride : int
        Snapshot stride, 0 for none.
    uncertified : bool
        Flag the log as uncertified.

    Returns
    -------
    trajectory : Trajectory
    log : EnergyLog

    Raises
    ------
    SolverFailure
        With the partial log and the failing step attached.
    """
    dt, theta = schedule.dt, schedule.theta
    log = EnergyLog(uncertified)
    traj = Trajectory(stride)
    u = _array(u0)
    if u.shape != (sys.dim,):
        raise InvalidArgumentError('Initial state has {} values, expected {}.'.format(u.size, sys.dim))
    log.append(0, 0.0, sys.energy(u), 0.0, 0.0, 0.0, 0.0)
    traj.record(0, 0.0, _like(u0, u.copy()))
    try:
        stepper = ThetaStepper(sys, dt, theta, tol, method, maxiter)
    except SolverFailure as err:
        log.aborted = (1, err.residual)
        raise SolverFailure(str(err), residual=err.residual, step=1, log=log)
    for n in range(schedule.steps):
        t0 = schedule.time(n)
        f = None if src is None else _array(src(t0 + theta*dt))
        try:
            u1 = stepper.advance(u, f)
        except SolverFailure as err:
            log.aborted = (n+1, err.residual)
            logger.error('Aborted at step %d, solve residual %.3e.', n+1, err.residual)
            raise SolverFailure(str(err), residual=err.residual, step=n+1, log=log)
        um = 0.5*(u + u1)
        diss = sys.dissipation_rate(um)
        work = 0.0 if f is None else float(f.dot(um))
        balance = float(sys.M0.dot(u1 - u).dot(um))/dt + diss - work
        t1 = schedule.time(n+1)
        log.append(n+1, t1, sys.energy(u1), dt*diss, dt*work, balance, stepper.solver.last_residual)
        u = u1
        traj.record(n+1, t1, _like(u0, u))
    logger.info('Simulated %d steps, final energy %.6e.', schedule.steps, log.rows[-1][2])
    return traj, log
