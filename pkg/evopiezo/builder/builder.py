"""Module containing Builder class."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .builder_base import BuilderBase


# noinspection PyUnresolvedReferences
class Builder(BuilderBase):
    """
    Class for building the system for well-posedness checks and time stepping.

    Use Builder.from_spec(spec) to construct the object from a parsed
    configuration, see evopiezo.cli.config.parse_config.

    Attributes
    ----------
    n : tuple of int
        Number of cells per axis.
    length : tuple of float
        Extents of the box.
    mode : str
        'full' for the 19-component system, 'quasistatic' for the reduced
        13-component system with E = -grad phi.
    material : dict or MaterialConfig
        On input a dictionary block name -> value, where a value is a number
        (scalar times identity), a per-cell matrix, a table with 'value' and
        'regions', a table with 'gaussian', or a CoefficientBlock. Block names
        are rho_star, C, e, lambda, p, epsilon, mu, alpha, theta0, sigma,
        kappa0_inv, kappa1 and beta. Missing blocks take the decoupled
        identity material. After construction the MaterialConfig object.
    notation : str
        'weighted' Voigt form or 'engineering' (unweighted) values of C, e and lambda.
    boundary : dict
        Boundary flags, only velocity='dirichlet', electric='tangential',
        heat_flux='normal' are supported.
    sources : dict
        Channel -> table with 'spatial' and 'time' profiles, or a tuple
        (SpatialProfile, TimeProfile). Channels F0..F5 in full mode;
        F0, F1, F4, F5, psi and psi_dot in quasistatic mode.
    initial : dict
        State component -> spatial profile of the initial state.
    dt, steps, theta : float, int, float
        Time stepping schedule, theta in [0.5, 1].
    tol : float
        Relative residual of each linear solve.
    method : str
        Linear solver, 'direct', 'gmres' or 'bicgstab'.
    maxiter : int
        Iteration limit of the Krylov solvers.
    nu_cap : float
        Largest weight of the doubling search.
    check_tol : float
        Strictness tolerance of the well-posedness checks.
    dense_cap : int
        Largest number of cells with dense (nonlocal or reduced) blocks.
    energy_log, report : str or None
        Output paths.
    snapshot_stride : int
        Snapshot every snapshot_stride steps, 0 for none.
    snapshot_fields : list of str
        Fields written to snapshots.
    grid : Grid
        Grid object.
    schedule : Schedule
        Schedule object.
    funcp : SolverProperties
        SolverProperties object.
    operators : AssembledOperators
        M0 and M1 of the full system.
    reduced : ReducedSystem
        Quasi-static system.
    system : DiscreteSystem
        Operators of the selected mode.
    sources : SourceTerm
        Right-hand side F(t).
    """

    @classmethod
    def from_spec(cls, spec):
        """
        Construct the Builder from a SimulationSpec.

        Parameters
        ----------
        spec : SimulationSpec
            Validated configuration.
        """
        return cls(**spec.as_kwargs())
