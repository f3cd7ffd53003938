import numpy as np
import pytest

from evopiezo.cli.reportio import *
from evopiezo.cli.config import parse_config
from evopiezo.builder import Builder
from evopiezo.evolution import EnergyLog
from evopiezo.wellposed import ConditionResult
from evopiezo.wellposed import WellposednessReport
from evopiezo.wellposed.report import PASS, FAIL, UNDECIDED
from evopiezo.errors import ReportFormatError
from evopiezo.tests import data_config


def assert_same_report(a, b):
    assert a.verdict == b.verdict
    assert a.check == b.check
    assert a.nu_star == b.nu_star
    assert a.c0 == b.c0
    assert a.oracle_min_eig == b.oracle_min_eig
    assert a.notes == b.notes
    assert a.condition_results == b.condition_results


def test_report_format():
    report = WellposednessReport('inconclusive', nu_star=None, c0=None, check='theorem1',
                                 condition_results=[ConditionResult('C >> 0', PASS, witness=1.0, cell=0),
                                                    ConditionResult('epsilon symmetric', UNDECIDED, witness=0.5),
                                                    ConditionResult('info', FAIL, informational=True)],
                                 notes=['first', 'second\nline'])
    text = format_report(report)
    lines = text.splitlines()
    assert lines[0] == 'schema_version: 1'
    assert lines[1] == 'check: theorem1'
    assert lines[2] == 'verdict: inconclusive'
    assert lines[3] == 'nu_star: -'
    assert lines[6:8] == ['note: first', 'note: second line']
    assert lines[8] == 'condition\tstatus\twitness\tcell\tnu\tinformational'
    assert lines[9].split('\t')[2:] == ['1', '0', '-', '0']
    assert lines[11].split('\t')[-1] == '1'
    back = parse_report(text)
    assert back.notes == ['first', 'second line']
    assert back.condition_results == report.condition_results


def test_report_roundtrip_check():
    for name in ('identity', 'eddy_current', 'eddy_current_no_sigma', 'tiny_permittivity'):
        spec = parse_config(getattr(data_config, name))
        report = Builder.from_spec(spec).check()
        assert_same_report(parse_report(format_report(report)), report)
    report = WellposednessReport('certified', nu_star=1.0, c0=(3 - 5**0.5)/2, oracle_min_eig=0.1 + 0.2)
    back = parse_report(format_report(report))
    assert back.c0 == report.c0
    assert back.oracle_min_eig == 0.1 + 0.2


def test_report_file(tmp_path):
    report = WellposednessReport('falsified', check='theorem2',
                                 condition_results=[ConditionResult('M >> 0', FAIL, witness=-1.0, cell=3)])
    path = str(tmp_path / 'report.txt')
    write_report(report, path)
    with open(path) as f:
        assert_same_report(parse_report(f.read()), report)


def test_report_errors():
    text = format_report(WellposednessReport('certified', nu_star=2.0, c0=0.5))
    with pytest.raises(ReportFormatError):
        parse_report(text.replace('schema_version: 1', 'schema_version: 2'))
    with pytest.raises(ReportFormatError):
        parse_report('schema_version: 1\nverdict: certified\n')
    with pytest.raises(ReportFormatError):
        parse_report('schema_version 1\n' + '\t'.join(TABLE_HEADER) + '\n')
    with pytest.raises(ReportFormatError):
        parse_report(text + 'C >> 0\tPASS\t1.0\n')
    with pytest.raises(ReportFormatError):
        parse_report(text + 'C >> 0\tMAYBE\t1.0\t0\t-\t0\n')
    with pytest.raises(ReportFormatError):
        parse_report(text.replace('verdict: certified', 'verdict: unsure'))


def test_energy_log_roundtrip():
    log = EnergyLog(uncertified=True)
    log.append(0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0)
    log.append(1, 0.1, 0.1 + 0.2, 1.0/3.0, -2e-300, 1e-17, 3e-13)
    text = format_energy_log(log)
    assert text.splitlines()[0] == UNCERTIFIED_MARK
    assert text.splitlines()[1] == ','.join(LOG_COLUMNS)
    back = parse_energy_log(text)
    assert back.uncertified
    assert back.aborted is None
    assert np.array_equal(back.as_array(), log.as_array())
    log = EnergyLog()
    log.append(0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0)
    log.aborted = (1, float('inf'))
    text = format_energy_log(log)
    assert text.splitlines()[0] == ','.join(LOG_COLUMNS)
    assert text.splitlines()[-1] == '# ABORTED step=1 solve_residual=inf'
    back = parse_energy_log(text)
    assert not back.uncertified
    assert back.aborted == (1, float('inf'))
    assert len(back) == 1


def test_energy_log_file(tmp_path):
    log = EnergyLog()
    for n in range(5):
        log.append(n, 0.01*n, 1.0/(n + 1), 0.1*n, 0.0, 0.0, 1e-14)
    path = str(tmp_path / 'energy.csv')
    write_energy_log(log, path)
    back = read_energy_log(path)
    assert np.array_equal(back.column('energy'), log.column('energy'))
    assert back.column('step').tolist() == [0, 1, 2, 3, 4]


def test_energy_log_errors():
    with pytest.raises(ReportFormatError):
        parse_energy_log('')
    with pytest.raises(ReportFormatError):
        parse_energy_log('step,time\n0,0\n')
    header = ','.join(LOG_COLUMNS)
    with pytest.raises(ReportFormatError):
        parse_energy_log(header + '\n0,0.0,1.0\n')
    with pytest.raises(ReportFormatError):
        parse_energy_log(header + '\n# ABORTED step=x solve_residual=1\n')
    with pytest.raises(ReportFormatError):
        parse_energy_log(header + '\n# ABORTED residual\n')
