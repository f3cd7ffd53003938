"""Module containing the exceptions raised by evopiezo."""


class EvoPiezoError(Exception):
    """Base class of all evopiezo errors."""


class InvalidArgumentError(EvoPiezoError, ValueError):
    """Argument violates a precondition (shape, sign, range)."""


class CapacityError(EvoPiezoError):
    """Dense representation requested beyond the desk-scale cell cap."""

    def __init__(self, message, ncells=None, cap=None):
        super(CapacityError, self).__init__(message)
        self.ncells = ncells
        self.cap = cap


class SingularCoefficientError(EvoPiezoError):
    """
    A coefficient block that has to be inverted is singular.

    Attributes
    ----------
    block : str
        Name of the offending block.
    cell : int or None
        Offending cell, None for global (nonlocal) blocks.
    """

    def __init__(self, message, block=None, cell=None):
        super(SingularCoefficientError, self).__init__(message)
        self.block = block
        self.cell = cell


class PivotSingularError(EvoPiezoError):
    """Pivot block of a symmetric Gauss step is singular."""

    def __init__(self, message, pivot=None, cell=None):
        super(PivotSingularError, self).__init__(message)
        self.pivot = pivot
        self.cell = cell


class NotPositiveDefiniteError(EvoPiezoError):
    """A block required to be symmetric positive definite is not."""

    def __init__(self, message, block=None, cell=None, eigenvalue=None):
        super(NotPositiveDefiniteError, self).__init__(message)
        self.block = block
        self.cell = cell
        self.eigenvalue = eigenvalue


class DegenerateGridError(EvoPiezoError):
    """Gram matrix of the projector range is singular."""


class ConsistencyError(EvoPiezoError):
    """Two algebraically equal evaluations disagree beyond tolerance."""


class SolverFailure(EvoPiezoError):
    """
    Linear solve did not reach the requested relative residual.

    Attributes
    ----------
    residual : float
        Best relative residual achieved.
    step : int or None
        Time step at which the failure happened.
    log : EnergyLog or None
        Partial energy log up to the failing step.
    """

    def __init__(self, message, residual=None, step=None, log=None):
        super(SolverFailure, self).__init__(message)
        self.residual = residual
        self.step = step
        self.log = log


class SnapshotFormatError(EvoPiezoError):
    """Snapshot file does not follow the EVOPIEZO1 format."""

    def __init__(self, message, expected=None, actual=None):
        super(SnapshotFormatError, self).__init__(message)
        self.expected = expected
        self.actual = actual


class ReportFormatError(EvoPiezoError):
    """Report or energy log text cannot be parsed."""


class ConfigError(EvoPiezoError):
    """Base class of configuration errors."""


class ConfigParseError(ConfigError):
    """Configuration text is not well-formed."""

    def __init__(self, message, line=None, column=None):
        super(ConfigParseError, self).__init__(message)
        self.line = line
        self.column = column


class ConfigValidationError(ConfigError):
    """Configuration value violates a constraint."""

    def __init__(self, key, constraint):
        super(ConfigValidationError, self).__init__('{}: {}'.format(key, constraint))
        self.key = key
        self.constraint = constraint
