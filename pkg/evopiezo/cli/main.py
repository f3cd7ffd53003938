"""
Module containing the evopiezo command line interface.

    evopiezo check <config>      well-posedness check, report on stdout
    evopiezo simulate <config>   check, then time stepping with energy log and snapshots
    evopiezo reduce <config>     quasi-static reduction and its check, --simulate to run it

Exit codes: 0 certified or success, 1 input error, 2 falsified,
3 inconclusive, 4 solver failure or inconsistent reduction.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import argparse
import logging
import os
import sys

from ..errors import CapacityError
from ..errors import ConfigError
from ..errors import ConfigParseError
from ..errors import ConsistencyError
from ..errors import DegenerateGridError
from ..errors import InvalidArgumentError
from ..errors import NotPositiveDefiniteError
from ..errors import PivotSingularError
from ..errors import SingularCoefficientError
from ..errors import SnapshotFormatError
from ..errors import SolverFailure
from ..builder import Builder
from ..builder.validation import validate_solver
from ..wellposed import CERTIFIED
from ..wellposed import FALSIFIED
from .config import load_config
from .reportio import format_report
from .reportio import write_report
from .reportio import write_energy_log
from .snapshot import snapshot_path
from .snapshot import write_snapshot

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FALSIFIED = 2
EXIT_INCONCLUSIVE = 3
EXIT_SOLVER = 4
DEFAULT_ENERGY_LOG = 'energy.csv'

INPUT_ERRORS = (ConfigError, InvalidArgumentError, CapacityError, SingularCoefficientError,
                NotPositiveDefiniteError, PivotSingularError, DegenerateGridError, SnapshotFormatError,
                IOError, OSError)


def verdict_exit_code(verdict):
    if verdict == CERTIFIED:
        return EXIT_OK
    return EXIT_FALSIFIED if verdict == FALSIFIED else EXIT_INCONCLUSIVE


def _output_path(out_dir, path, default=None):
    path = default if path is None else path
    if path is None:
        return None
    return path if os.path.isabs(path) else os.path.join(out_dir, path)


def _emit_report(report, spec, out_dir, stream):
    stream.write(format_report(report))
    path = _output_path(out_dir, spec.report)
    if path is not None:
        write_report(report, path)


def cmd_check(spec, out_dir='.', stream=None):
    """
    Run the well-posedness check of a configuration.

    Parameters
    ----------
    spec : SimulationSpec
        Parsed configuration.
    out_dir : str
        Directory of relative output paths.
    stream : file or None
        Report destination, standard output if None.

    Returns
    -------
    code : int
        0 certified, 2 falsified, 3 inconclusive.
    report : WellposednessReport
    """
    stream = sys.stdout if stream is None else stream
    system = Builder.from_spec(spec)
    report = system.check()
    _emit_report(report, spec, out_dir, stream)
    return verdict_exit_code(report.verdict), report


def _write_snapshots(system, trajectory, out_dir):
    for step, t, state in trajectory.snapshots:
        for fld in system.snapshot_fields(state, t):
            write_snapshot(fld, snapshot_path(out_dir, fld.name, step))


def run_simulation(system, spec, out_dir='.', skip_check=False, stream=None):
    """
    Check and simulate a built system, writing the energy log and snapshots.

    Returns
    -------
    int
        Exit code.
    """
    stream = sys.stdout if stream is None else stream
    if not skip_check:
        report = system.check()
        _emit_report(report, spec, out_dir, stream)
        if not report.certified:
            logger.error('Simulation refused: the check is %s (use --skip-check to override).', report.verdict)
            return verdict_exit_code(report.verdict)
    log_path = _output_path(out_dir, spec.energy_log, DEFAULT_ENERGY_LOG)
    try:
        trajectory, log = system.solve(uncertified=skip_check)
    except SolverFailure as err:
        if err.log is not None:
            write_energy_log(err.log, log_path)
        logger.error('Solver failure at step %s: %s', err.step, err)
        return EXIT_SOLVER
    write_energy_log(log, log_path)
    _write_snapshots(system, trajectory, out_dir)
    logger.info('Wrote %d log rows and %d snapshots to %s.', len(log), len(trajectory.snapshots), out_dir)
    return EXIT_OK


def cmd_simulate(spec, out_dir='.', skip_check=False, stream=None):
    """
    Simulate a configuration; refused unless the check certifies or
    skip_check is set, in which case the log is watermarked UNCERTIFIED.
    """
    return run_simulation(Builder.from_spec(spec), spec, out_dir, skip_check, stream)


def cmd_reduce(spec, out_dir='.', simulate=False, skip_check=False, stream=None):
    """
    Assemble the quasi-static reduction of a configuration and check it.

    Returns
    -------
    int
        Exit code of the check, or of the simulation if simulate is set.
    """
    stream = sys.stdout if stream is None else stream
    kwargs = spec.as_kwargs()
    if spec.mode != 'quasistatic':
        # full-mode defaults name fields the reduced state does not carry
        kwargs['snapshot_fields'] = None
    kwargs['mode'] = 'quasistatic'
    system = Builder(**kwargs)
    if simulate:
        return run_simulation(system, spec, out_dir, skip_check, stream)
    report = system.check()
    _emit_report(report, spec, out_dir, stream)
    return verdict_exit_code(report.verdict)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the input error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, '{}: error: {}\n'.format(self.prog, message))


def build_parser():
    parser = ArgumentParser(prog='evopiezo',
                            description='Well-posedness checks and time stepping of coupled '
                                        'thermo-piezo-electro-magnetic systems.')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('config', help='TOML run configuration')
    common.add_argument('--nu-cap', type=float, default=None, help='largest weight of the doubling search')
    common.add_argument('--tol', type=float, default=None, help='positivity tolerance of the checks')
    common.add_argument('--out-dir', default='.', help='directory of the output files')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug output')
    sub = parser.add_subparsers(dest='command')
    sub.required = True
    sub.add_parser('check', parents=[common], help='check well-posedness')
    p = sub.add_parser('simulate', parents=[common], help='check and simulate')
    p.add_argument('--skip-check', action='store_true', help='simulate without a certified check')
    p = sub.add_parser('reduce', parents=[common], help='quasi-static reduction')
    p.add_argument('--simulate', action='store_true', help='also simulate the reduced system')
    p.add_argument('--skip-check', action='store_true', help='simulate without a certified check')
    return parser


def _apply_overrides(spec, args):
    nu_cap = spec.nu_cap if args.nu_cap is None else args.nu_cap
    check_tol = spec.check_tol if args.tol is None else args.tol
    _, _, spec.nu_cap, spec.check_tol, _ = validate_solver(spec.tol, spec.maxiter, nu_cap, check_tol,
                                                           spec.dense_cap)


def main(argv=None):
    """Entry point of the evopiezo console script; returns the exit code."""
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else (logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    try:
        spec = load_config(args.config)
        _apply_overrides(spec, args)
        if not os.path.isdir(args.out_dir):
            os.makedirs(args.out_dir)
        if args.command == 'check':
            return cmd_check(spec, args.out_dir)[0]
        if args.command == 'simulate':
            return cmd_simulate(spec, args.out_dir, args.skip_check)
        return cmd_reduce(spec, args.out_dir, args.simulate, args.skip_check)
    except ConfigParseError as err:
        sys.stderr.write('{}:{}:{}: {}\n'.format(args.config, err.line, err.column, err))
        return EXIT_INPUT
    except INPUT_ERRORS as err:
        sys.stderr.write('{}: {}\n'.format(args.config, err))
        return EXIT_INPUT
    except ConsistencyError as err:
        sys.stderr.write('{}: {}\n'.format(args.config, err))
        return EXIT_SOLVER


if __name__ == '__main__':
    sys.exit(main())
