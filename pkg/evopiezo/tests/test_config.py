import numpy as np
import pytest

from evopiezo.cli.config import *
from evopiezo.builder import Builder
from evopiezo.builder import BlockSpec
from evopiezo.specfunc import SpatialProfile
from evopiezo.specfunc import TimeProfile
from evopiezo.errors import ConfigParseError
from evopiezo.errors import ConfigValidationError
from evopiezo.tests import data_config

EPS = 1e-12


def validation_error(text):
    with pytest.raises(ConfigValidationError) as err:
        parse_config(text)
    return err.value


def test_identity_defaults():
    spec = parse_config(data_config.identity)
    assert spec.mode == 'full'
    assert spec.n == (2, 2, 2)
    assert spec.length == (1.0, 1.0, 1.0)
    assert spec.notation == 'weighted'
    assert len(spec.material) == 0
    assert spec.sources == {}
    assert spec.initial == {}
    assert spec.dt == 0.01
    assert spec.steps == 5
    assert spec.theta == 0.5
    assert spec.method == 'direct'
    assert spec.tol == 1e-12
    assert spec.check_tol == 1e-10
    assert spec.nu_cap == 2.0**30
    assert spec.energy_log is None
    assert spec.report is None
    assert spec.snapshot_stride == 0
    assert spec.snapshot_fields == ['v', 'T', 'E', 'H', 'theta_rel', 'q']
    assert list(spec.boundary.values()) == ['dirichlet', 'tangential', 'normal']
    sch = spec.schedule
    assert abs(sch.final_time - 0.05) < EPS
    assert spec.solver.method == 'direct'
    kwargs = spec.as_kwargs()
    assert set(kwargs) == set(SimulationSpec.fields)
    assert Builder.from_spec(spec).grid.nc == 8


def test_material_blocks():
    spec = parse_config(data_config.eddy_current)
    assert list(spec.material) == ['epsilon', 'p', 'alpha', 'theta0', 'sigma']
    p = spec.material['p']
    assert isinstance(p, BlockSpec)
    assert p.kind == 'constant'
    assert p.value.shape == (3, 1)
    assert spec.material['sigma'].value == 1.0
    spec = parse_config(data_config.eddy_current_no_sigma)
    assert spec.material['sigma'].is_zero()
    spec = parse_config(data_config.tiny_permittivity)
    assert spec.nu_cap == 16.0
    assert spec.material['epsilon'].value[0, 0] == 1e-12


def test_regions_and_gaussian():
    spec = parse_config(data_config.heterogeneous)
    assert spec.notation == 'engineering'
    assert spec.length == (4.0, 1.0, 1.0)
    C = spec.material['C']
    assert C.kind == 'regions'
    assert C.value == 2.0
    assert C.regions[0].upper == (2.0, 1.0, 1.0)
    assert C.regions[0].value == 3.0
    rho = spec.material['rho_star']
    assert [r.value for r in rho.regions] == [5.0, 7.0]
    mask = rho.regions[1].contains(np.array([[0.5, 0.5, 0.5], [1.5, 0.5, 0.5]]))
    assert mask.tolist() == [True, False]
    spec = parse_config(data_config.nonlocal_permittivity)
    eps = spec.material['epsilon']
    assert eps.kind == 'gaussian'
    assert eps.gaussian == {'width': 0.3, 'amplitude': 1.0, 'shift': 1.0}
    assert not eps.is_zero()


def test_sources_and_output():
    spec = parse_config(data_config.dissipative)
    spatial, profile = spec.sources['F0']
    assert isinstance(spatial, SpatialProfile)
    assert isinstance(profile, TimeProfile)
    assert spec.energy_log == 'log.csv'
    assert spec.report == 'report.txt'
    assert spec.snapshot_stride == 10
    assert spec.snapshot_fields == ['v', 'E', 'D']
    spec = parse_config(data_config.quasistatic)
    assert spec.mode == 'quasistatic'
    spatial, profile = spec.sources['psi']
    assert profile is None
    assert list(spec.initial) == ['v']
    assert spec.snapshot_fields == ['v', 'E', 'phi']


def test_parse_error():
    with pytest.raises(ConfigParseError) as err:
        parse_config(data_config.malformed)
    assert err.value.line == 3
    assert err.value.column is not None
    assert str(err.value)


def test_validation_errors():
    err = validation_error(data_config.unknown_key)
    assert err.key == 'grid.spacing'
    assert err.constraint == 'unknown key'
    err = validation_error(data_config.missing_n)
    assert err.key == 'grid.n'
    assert err.constraint == 'required key missing'
    err = validation_error(data_config.bad_theta)
    assert str(err) == 'schedule.theta: theta out of [0.5,1]'
    err = validation_error(data_config.quasistatic_sigma)
    assert str(err) == 'material.sigma: sigma has to be 0 in quasistatic mode (no conductivity term)'
    err = validation_error('colour = "red"\n[grid]\nn = [1, 1, 1]\n')
    assert err.key == 'colour'
    err = validation_error('mode = "static"\n[grid]\nn = [1, 1, 1]\n')
    assert err.key == 'mode'
    err = validation_error('[grid]\nn = [1, 0, 1]\n')
    assert err.key == 'grid.n'
    err = validation_error('[grid]\nn = [1, 1, 1]\nlength = [1.0, -1.0, 1.0]\n')
    assert err.key == 'grid.length'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[boundary]\nvelocity = "neumann"\n')
    assert err.key == 'boundary.velocity'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[material]\nkappa = 1.0\n')
    assert err.key == 'material.kappa'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[material]\nepsilon = [[1.0, 0.0], [0.0, 1.0]]\n')
    assert err.key == 'material.epsilon'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[material]\ne = 1.0\n')
    assert err.key == 'material.e'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[material]\nnotation = "voigt"\n')
    assert err.key == 'material.notation'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[schedule]\ndt = 0.0\n')
    assert err.key == 'schedule.dt'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[schedule]\nsteps = 2.5\n')
    assert err.key == 'schedule.steps'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[solver]\nnu_cap = 0.5\n')
    assert err.key == 'solver.nu_cap'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[output]\nsnapshot_fields = ["phi"]\n')
    assert err.key == 'output.snapshot_fields'


def test_channel_errors():
    err = validation_error('mode = "quasistatic"\n[grid]\nn = [1, 1, 1]\n'
                           '[sources.F2]\nspatial = { kind = "constant", value = 1.0 }\n')
    assert err.key == 'sources.F2'
    err = validation_error('[grid]\nn = [1, 1, 1]\n'
                           '[sources.psi]\nspatial = { kind = "constant", value = 1.0 }\n')
    assert err.key == 'sources.psi'
    err = validation_error('[grid]\nn = [1, 1, 1]\n[sources.F0]\ntime = { kind = "sine", freq = 1.0 }\n')
    assert err.key == 'sources.F0.spatial'
    err = validation_error('mode = "quasistatic"\n[grid]\nn = [1, 1, 1]\n'
                           '[initial.E]\nspatial = { kind = "constant", value = 1.0 }\n')
    assert err.key == 'initial.E'


def test_unknown_method():
    spec = parse_config('[grid]\nn = [1, 1, 1]\n[solver]\nmethod = "lu"\n')
    assert spec.method == 'direct'


def test_load_config(tmp_path):
    path = tmp_path / 'run.toml'
    path.write_text(data_config.dissipative)
    spec = load_config(str(path))
    assert spec.steps == 20
    assert spec.material['kappa0_inv'].value == 1.0
    with pytest.raises(IOError):
        load_config(str(tmp_path / 'missing.toml'))
