import logging

import numpy as np
from numpy.linalg import norm
import pytest

from evopiezo.builder import *
from evopiezo.builder.various import build_block
from evopiezo.builder.various import to_weighted
from evopiezo.cli.config import parse_config
from evopiezo.coefblock import constant_block
from evopiezo.fields import StateVector
from evopiezo.material import MaterialConfig
from evopiezo.specfunc import SpatialProfile
from evopiezo.wellposed import CERTIFIED, FALSIFIED
from evopiezo.errors import ConfigValidationError
from evopiezo.errors import InvalidArgumentError
from evopiezo.tests import data_config

EPS = 1e-12


def test_defaults():
    system = Builder()
    assert system.mode == 'full'
    assert not system.quasistatic
    assert system.nc == 1
    assert system.dt == 0.01
    assert system.steps == 100
    assert system.method == 'direct'
    assert system.nu_cap == 2.0**30
    assert isinstance(system.material, MaterialConfig)
    assert system.material.beta is None
    assert system.system.dim == 19
    report = system.check()
    assert report.verdict == CERTIFIED
    assert report.nu_star == 1.0
    assert abs(report.c0 - 1.0) < EPS


def test_attribute_proxies():
    system = Builder(n=(2, 3, 1), length=(1.0, 3.0, 2.0), dt=0.05, steps=10, tol=1e-9)
    assert system.nc == 6
    assert system.h == (0.5, 1.0, 2.0)
    assert abs(system.final_time - 0.5) < EPS
    assert system.tol == 1e-9
    system.dt = 0.02
    assert system.schedule.dt == 0.02
    system.check_tol = 1e-8
    assert system.funcp.check_tol == 1e-8
    system.method = 'gmres'
    assert system.funcp.method == 'gmres'
    for item, value in (('nc', 4), ('h', (1.0, 1.0, 1.0)), ('volume', 2.0), ('final_time', 1.0)):
        with pytest.raises(InvalidArgumentError) as err:
            setattr(system, item, value)
        assert item in str(err.value)
    assert system.nc == 6
    assert abs(system.final_time - 0.2) < EPS


def test_mode_setter(caplog):
    system = Builder()
    with caplog.at_level(logging.WARNING):
        system.mode = 'quasistatic'
    assert system.mode == 'full'
    assert 'Cannot change mode' in caplog.text
    system = Builder(method='lu')
    assert system.method == 'direct'


def test_validation():
    for kwargs, key in ((dict(mode='static'), 'mode'),
                        (dict(n=(0, 1, 1)), 'grid.n'),
                        (dict(dt=-1.0), 'schedule.dt'),
                        (dict(theta=0.4), 'schedule.theta'),
                        (dict(material={'kappa': 1.0}), 'material.kappa'),
                        (dict(boundary={'velocity': 'neumann'}), 'boundary.velocity'),
                        (dict(snapshot_fields=['phi']), 'output.snapshot_fields'),
                        (dict(mode='quasistatic', snapshot_fields=['H']), 'output.snapshot_fields'),
                        (dict(mode='quasistatic', material={'sigma': 1.0}), 'material.sigma'),
                        (dict(mode='quasistatic', sources={'F2': (np.zeros(3), None)}), 'sources.F2'),
                        (dict(initial={'phi': SpatialProfile('constant', value=1.0)}), 'initial.phi')):
        with pytest.raises(ConfigValidationError) as err:
            Builder(**kwargs)
        assert err.value.key == key


def test_change():
    system = Builder(n=(2, 1, 1))
    assert system.check().verdict == CERTIFIED
    M0 = system.system.M0
    system.change(alpha=constant_block(2, 0.0, (1, 1)))
    assert system.system.M0 is not M0
    report = system.check()
    assert report.verdict == FALSIFIED
    assert [c.name for c in report.witnesses] == ['gamma0 >> 0']


def test_heterogeneous():
    system = Builder.from_spec(parse_config(data_config.heterogeneous))
    C = system.material.C.data
    assert C.shape == (4, 6, 6)
    for cell in (0, 1):
        assert norm(C[cell] - np.diag([3.0, 3.0, 3.0, 6.0, 6.0, 6.0])) < EPS
    for cell in (2, 3):
        assert norm(C[cell] - np.diag([2.0, 2.0, 2.0, 4.0, 4.0, 4.0])) < EPS
    rho = system.material.rho_star.data
    assert norm(rho[0] - 7*np.eye(3)) == 0
    for cell in (1, 2, 3):
        assert norm(rho[cell] - np.eye(3)) == 0
    assert system.check().certified


def test_engineering_notation():
    system = Builder(material={'e': [[1.0, 0.0, 0.0]] + [[0.0, 0.0, 0.0]]*2 + [[0.0, 1.0, 0.0]] + [[0.0, 0.0, 0.0]]*2},
                     notation='engineering')
    e = system.material.e.data[0]
    assert e[0, 0] == 1.0
    assert abs(e[3, 1] - 2**0.5) < EPS
    blk = to_weighted('lam', constant_block(1, np.ones((6, 1)), (6, 1)))
    assert norm(blk.data[0].ravel() - np.array([1.0, 1.0, 1.0] + [2**0.5]*3)) < EPS
    spec = BlockSpec('C', np.diag([1.0, 1.0, 1.0, 0.5, 0.5, 0.5]))
    assert norm(build_block(spec, system.grid, 'engineering').data[0] - np.eye(6)) < EPS
    assert norm(build_block(spec, system.grid).data[0] - spec.value) == 0


def test_initial_state():
    system = Builder(n=(2, 2, 1), initial={'theta_rel': SpatialProfile('constant', value=2.0)})
    state = system.initial_state()
    assert isinstance(state, StateVector)
    assert state.theta_rel.values.tolist() == [2.0]*4
    assert norm(state.v.values) == 0
    system = Builder(n=(2, 2, 1), mode='quasistatic')
    state = system.initial_state()
    assert state.reduced
    assert state.dim == 13*4


def test_snapshot_fields():
    system = Builder(n=(2, 1, 1), snapshot_fields=['v', 'strain', 'D', 'B'])
    state = StateVector(system.grid, T=np.ones(12), E=np.full(6, 2.0), H=np.full(6, 3.0))
    fields = system.snapshot_fields(state, 0.0)
    assert [f.name for f in fields] == ['v', 'strain', 'D', 'B']
    assert [f.ncomp for f in fields] == [3, 6, 3, 3]
    assert norm(fields[1].values - 1.0) < EPS
    assert norm(fields[2].values - 2.0) < EPS
    assert norm(fields[3].values - 3.0) < EPS
    assert [f.name for f in system.snapshot_fields(state, 0.0, ['q'])] == ['q']


def test_quasistatic_builder():
    system = Builder(n=(2, 1, 1), mode='quasistatic', snapshot_fields=['T', 'E', 'phi'],
                     sources={'psi': (np.array([1.0, -1.0]), None)})
    assert system.quasistatic
    assert system.system.dim == 26
    report = system.check()
    assert report.certified
    assert report.check == 'theorem2'
    state = system.initial_state()
    fields = system.snapshot_fields(state, 0.0)
    assert [f.name for f in fields] == ['T', 'E', 'phi']
    E, phi = fields[1], fields[2]
    grad0 = system.reduced.A_red.grad0
    assert norm(E.values + grad0.dot(phi.values)) == 0
    assert norm(-grad0.T.dot(E.values) - [1.0, -1.0]) < 1e-10
