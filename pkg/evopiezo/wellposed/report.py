"""Module containing the per-condition results and the well-posedness report."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

CERTIFIED = 'certified'
FALSIFIED = 'falsified'
INCONCLUSIVE = 'inconclusive'
VERDICTS = (CERTIFIED, FALSIFIED, INCONCLUSIVE)

PASS = 'pass'
FAIL = 'fail'
UNDECIDED = 'undecided'
STATUSES = (PASS, FAIL, UNDECIDED)


class ConditionResult(object):
    """
    Outcome of one checked condition.

    Attributes
    ----------
    name : str
        Human readable condition, e.g. 'C >> 0'.
    status : str
        'pass', 'fail' or 'undecided'.
    witness : float or None
        Minimal eigenvalue (or other deciding value) found.
    cell : int or None
        Cell of the witness, None for global (nonlocal) checks.
    nu : float or None
        Weight at which the value was taken, for nu-dependent conditions.
    informational : bool
        If True the condition does not enter the verdict.
    """

    def __init__(self, name, status, witness=None, cell=None, nu=None, informational=False):
        if status not in STATUSES:
            raise ValueError('Unknown condition status {!r}.'.format(status))
        self.name = name
        self.status = status
        self.witness = None if witness is None else float(witness)
        self.cell = None if cell is None else int(cell)
        self.nu = None if nu is None else float(nu)
        self.informational = informational

    @property
    def passed(self):
        return self.status == PASS

    def __eq__(self, other):
        if not isinstance(other, ConditionResult):
            return NotImplemented
        return (self.name, self.status, self.witness, self.cell, self.nu, self.informational) == \
               (other.name, other.status, other.witness, other.cell, other.nu, other.informational)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        return 'ConditionResult({!r}, {}, witness={}, cell={}, nu={})'.format(
            self.name, self.status, self.witness, self.cell, self.nu)


def verdict_from(conditions):
    """Any failed condition falsifies, any undecided one leaves the verdict open."""
    statuses = [c.status for c in conditions if not c.informational]
    if FAIL in statuses:
        return FALSIFIED
    if UNDECIDED in statuses:
        return INCONCLUSIVE
    return CERTIFIED


class WellposednessReport(object):
    """
    Result of a well-posedness check.

    Attributes
    ----------
    verdict : str
        'certified', 'falsified' or 'inconclusive'.
    nu_star : float or None
        Smallest tested weight at which all conditions hold.
    c0 : float or None
        Lower bound on the minimal eigenvalue of nu_star*M0 + sym(M1).
    condition_results : list of ConditionResult
        Every checked condition.
    oracle_min_eig : float or None
        Minimal eigenvalue of the assembled nu_star*M0 + sym(M1).
    check : str
        Name of the producing check.
    notes : list of str
        Free form remarks.
    """

    def __init__(self, verdict, nu_star=None, c0=None, condition_results=None,
                 oracle_min_eig=None, check='', notes=None):
        if verdict not in VERDICTS:
            raise ValueError('Unknown verdict {!r}.'.format(verdict))
        self.verdict = verdict
        self.nu_star = None if nu_star is None else float(nu_star)
        self.c0 = None if c0 is None else float(c0)
        self.condition_results = list(condition_results or [])
        self.oracle_min_eig = None if oracle_min_eig is None else float(oracle_min_eig)
        self.check = check
        self.notes = list(notes or [])

    @property
    def certified(self):
        return self.verdict == CERTIFIED

    @property
    def witnesses(self):
        """Failed conditions."""
        return [c for c in self.condition_results if c.status == FAIL and not c.informational]

    def condition(self, name):
        for c in self.condition_results:
            if c.name == name:
                return c
        raise KeyError(name)

    def __repr__(self):
        return 'WellposednessReport({}, verdict={}, nu_star={}, c0={})'.format(
            self.check, self.verdict, self.nu_star, self.c0)
