"""
Module containing the text formats of the well-posedness report and of
the energy log.

Report (schema version 1): 'key: value' lines for schema_version, check,
verdict, nu_star, c0, oracle_min_eig and any number of notes, then a
tab-separated table of conditions with the header

    condition  status  witness  cell  nu  informational

Missing values are written as '-'. Floats carry 17 significant digits
and read back to the same double.

Energy log: CSV with the columns of EnergyLog, an optional first line
'# UNCERTIFIED' and an optional last line '# ABORTED step=<k> solve_residual=<r>'.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import io

from ..errors import ReportFormatError
from ..evolution import EnergyLog
from ..evolution import LOG_COLUMNS
from ..wellposed import ConditionResult
from ..wellposed import WellposednessReport

SCHEMA_VERSION = 1
MISSING = '-'
TABLE_HEADER = ('condition', 'status', 'witness', 'cell', 'nu', 'informational')
UNCERTIFIED_MARK = '# UNCERTIFIED'
ABORTED_MARK = '# ABORTED'


def _fmt(x):
    if x is None:
        return MISSING
    if isinstance(x, int):
        return str(x)
    return '%.17g' % x


def _float(s):
    return None if s == MISSING else float(s)


def _int(s):
    return None if s == MISSING else int(s)


def format_report(report):
    """
    Text form of a WellposednessReport.

    Returns
    -------
    str
    """
    lines = ['schema_version: {}'.format(SCHEMA_VERSION),
             'check: {}'.format(report.check or MISSING),
             'verdict: {}'.format(report.verdict),
             'nu_star: {}'.format(_fmt(report.nu_star)),
             'c0: {}'.format(_fmt(report.c0)),
             'oracle_min_eig: {}'.format(_fmt(report.oracle_min_eig))]
    lines += ['note: {}'.format(note.replace('\n', ' ')) for note in report.notes]
    lines.append('\t'.join(TABLE_HEADER))
    for c in report.condition_results:
        lines.append('\t'.join([c.name, c.status, _fmt(c.witness), _fmt(c.cell), _fmt(c.nu),
                                '1' if c.informational else '0']))
    return '\n'.join(lines) + '\n'


def parse_report(text):
    """
    Inverse of format_report.

    Returns
    -------
    WellposednessReport
    """
    lines = text.splitlines()
    head = {}
    notes = []
    i = 0
    while i < len(lines) and lines[i] != '\t'.join(TABLE_HEADER):
        key, sep, value = lines[i].partition(': ')
        if not sep:
            raise ReportFormatError('Malformed report line {}: {!r}.'.format(i+1, lines[i]))
        if key == 'note':
            notes.append(value)
        else:
            head[key] = value
        i += 1
    if i == len(lines):
        raise ReportFormatError('Report has no condition table.')
    if head.get('schema_version') != str(SCHEMA_VERSION):
        raise ReportFormatError('Unsupported report schema version {!r}.'.format(head.get('schema_version')))
    conditions = []
    for line in lines[i+1:]:
        if not line:
            continue
        parts = line.split('\t')
        if len(parts) != len(TABLE_HEADER):
            raise ReportFormatError('Malformed condition row {!r}.'.format(line))
        name, status, witness, cell, nu, info = parts
        try:
            conditions.append(ConditionResult(name, status, witness=_float(witness), cell=_int(cell),
                                              nu=_float(nu), informational=(info == '1')))
        except ValueError as err:
            raise ReportFormatError('Malformed condition row {!r}: {}'.format(line, err))
    try:
        check = head.get('check', MISSING)
        return WellposednessReport(head['verdict'], nu_star=_float(head.get('nu_star', MISSING)),
                                   c0=_float(head.get('c0', MISSING)), condition_results=conditions,
                                   oracle_min_eig=_float(head.get('oracle_min_eig', MISSING)),
                                   check='' if check == MISSING else check, notes=notes)
    except (KeyError, ValueError) as err:
        raise ReportFormatError('Malformed report header: {}.'.format(err))


def write_report(report, path):
    with io.open(path, 'w', encoding='utf-8') as f:
        f.write(format_report(report))


def format_energy_log(log):
    """CSV text of an EnergyLog."""
    lines = []
    if log.uncertified:
        lines.append(UNCERTIFIED_MARK)
    lines.append(','.join(LOG_COLUMNS))
    for row in log.rows:
        lines.append(','.join([str(row[0])] + ['%.17g' % x for x in row[1:]]))
    if log.aborted is not None:
        step, residual = log.aborted
        lines.append('{} step={} solve_residual={}'.format(ABORTED_MARK, step, _fmt(residual)))
    return '\n'.join(lines) + '\n'


def write_energy_log(log, path):
    with io.open(path, 'w', encoding='utf-8') as f:
        f.write(format_energy_log(log))


def parse_energy_log(text):
    """
    Inverse of format_energy_log.

    Returns
    -------
    EnergyLog
    """
    lines = [line for line in text.splitlines() if line]
    log = EnergyLog()
    if lines and lines[0] == UNCERTIFIED_MARK:
        log.uncertified = True
        lines = lines[1:]
    if not lines or lines[0] != ','.join(LOG_COLUMNS):
        raise ReportFormatError('Energy log has no column header.')
    for line in lines[1:]:
        if line.startswith(ABORTED_MARK):
            try:
                fields = dict(part.split('=', 1) for part in line[len(ABORTED_MARK):].split())
                log.aborted = (int(fields['step']), _float(fields['solve_residual']))
            except (KeyError, ValueError):
                raise ReportFormatError('Malformed trailer {!r}.'.format(line))
            continue
        parts = line.split(',')
        if len(parts) != len(LOG_COLUMNS):
            raise ReportFormatError('Malformed energy log row {!r}.'.format(line))
        log.append(int(parts[0]), *[float(x) for x in parts[1:]])
    return log


def read_energy_log(path):
    with io.open(path, 'r', encoding='utf-8') as f:
        return parse_energy_log(f.read())
