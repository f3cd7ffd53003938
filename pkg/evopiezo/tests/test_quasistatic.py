import numpy as np
from numpy.linalg import norm
import pytest

from evopiezo.quasistatic import *
from evopiezo.coefblock import DIAGONAL_PER_CELL
from evopiezo.coefblock import CoefficientBlock
from evopiezo.coefblock import apply_block
from evopiezo.coefblock import constant_block
from evopiezo.fields import make_grid
from evopiezo.fields import StateVector
from evopiezo.material import MaterialConfig
from evopiezo.material import invert_constitutive
from evopiezo.operators import build_grad0
from evopiezo.wellposed import CERTIFIED, FALSIFIED
from evopiezo.wellposed.report import PASS, FAIL
from evopiezo.errors import DegenerateGridError
from evopiezo.errors import InvalidArgumentError

EPS = 1e-10
IDENTITY_Q = 'Q (1 - Q^T Q)^-1 Q^T = -P + P (1 - Q Q^T)^-1 P'
SCHUR = 'M22 - M12^T M11^-1 M12 = gamma0 - Theta0 p^T M^-1 P (1 - Q Q^T)^-1 P M^-1 p Theta0'


def spd(rng, n):
    a = rng.randn(n, n)
    s = a.dot(a.T)
    return 0.5*(s + s.T) + np.eye(n)


def random_M(rng, nc):
    data = np.array([spd(rng, 3) for _ in range(nc)])
    return CoefficientBlock(DIAGONAL_PER_CELL, (3, 3), data, nc)


def random_material(seed, nc):
    rng = np.random.RandomState(seed)
    return MaterialConfig.uniform(nc, rho_star=spd(rng, 3), C=spd(rng, 6), e=0.3*rng.randn(6, 3),
                                  lam=0.3*rng.randn(6, 1), p=0.1*rng.randn(3, 1), epsilon=spd(rng, 3),
                                  alpha=1.0 + rng.rand(), kappa0_inv=spd(rng, 3), kappa1=spd(rng, 3),
                                  theta0=1.0 + rng.rand())


def test_projector_properties():
    rng = np.random.RandomState(40)
    for n in (2, 3, 4):
        grid = make_grid((n, n, n), (1.0, 1.0, 1.0))
        P = build_projector(grid, random_M(rng, grid.nc))
        Pd = P.dense()
        B = P.B.toarray()
        assert P.materialized
        assert P.rank == grid.nc
        assert norm(Pd.dot(Pd) - Pd) < EPS
        assert norm(Pd - Pd.T) == 0
        assert norm(Pd.dot(B) - B) < EPS*norm(B)
        assert abs(np.trace(Pd) - grid.nc) < EPS*grid.nc


def test_projector_lazy():
    rng = np.random.RandomState(41)
    grid = make_grid((3, 2, 2), (1.0, 2.0, 1.0))
    M = random_M(rng, grid.nc)
    lazy = build_projector(grid, M, materialize=False)
    dense = build_projector(grid, M)
    assert not lazy.materialized
    x = rng.randn(3*grid.nc, 2)
    assert norm(lazy.apply(x) - dense.apply(x)) < EPS*norm(x)
    assert norm(lazy.dense() - dense.dense()) < EPS


def test_projector_degenerate():
    with pytest.raises(DegenerateGridError):
        Projector([[1.0, 1.0], [1.0, 1.0]])
    P = projector_from_range([[1.0], [0.0]])
    assert norm(P.dense() - [[1.0, 0.0], [0.0, 0.0]]) == 0


def test_reconstruct_E():
    rng = np.random.RandomState(42)
    grid = make_grid((4, 4, 4), (1.0, 1.0, 0.5))
    M = random_M(rng, grid.nc)
    P = build_projector(grid, M)
    grad0 = build_grad0(grid)
    for _ in range(20):
        Phi = rng.randn(3*grid.nc)
        psi = rng.randn(grid.nc)
        E, phi = reconstruct_E(grid, M, P, Phi, psi)
        D = apply_block(M, apply_block(M, E.values)) + Phi
        assert norm(-grad0.T.dot(D) - psi) < 1e-8*max(1.0, norm(psi))
        assert norm(E.values + grad0.dot(phi.values)) == 0
    with pytest.raises(InvalidArgumentError):
        reconstruct_E(grid, M, P, np.zeros(3), np.zeros(grid.nc))


def test_build_M():
    m = MaterialConfig.uniform(2, epsilon=np.diag([4.0, 9.0, 16.0]))
    M = build_M(m)
    assert norm(M.data[1] - np.diag([2.0, 3.0, 4.0])) < EPS
    Minv = inverse_sqrt(m.epsilon, 'epsilon')
    assert norm(Minv.data[0] - np.diag([0.5, 1/3., 0.25])) < EPS


def test_toy_M11():
    for q in (0.0, 0.3, 0.9):
        m = MaterialConfig.uniform(1, layout='scalar', C=1.0, e=q, epsilon=1 - q**2)
        inverted = invert_constitutive(m)
        M = build_M(m, inverted=inverted)
        assert abs(M.data[0, 0, 0] - 1.0) < EPS
        Pblk = constant_block(1, 1.0, (1, 1))
        M11, M12, M22 = reduced_blocks(inverted, M.inv('M'), Pblk)
        assert abs(M11.dense()[0, 0] - (1 - q**2)) < EPS
        assert norm(M12.dense()) == 0
        assert abs(M22.dense()[0, 0] - 1.0) < EPS


def test_compute_Phi():
    m = MaterialConfig.uniform(1, layout='scalar', C=2.0, e=1.0, lam=1.0, p=1.0, epsilon=1.0)
    assert abs(compute_Phi(m, [2.0], [1.0])[0] - 2.5) < EPS


def test_identity_material():
    grid = make_grid((2, 2, 1), (1.0, 1.0, 1.0))
    m = MaterialConfig.uniform(grid.nc)
    report = check_theorem2(m, grid=grid)
    assert report.certified
    assert report.nu_star == 1.0
    assert abs(report.c0 - 1.0) < EPS
    assert 'eigenvalue oracle: certified' in report.notes
    assert report.condition('1 - Q^T Q >> 0').status == PASS
    assert report.condition(IDENTITY_Q).informational


def test_random_materials():
    grid = make_grid((2, 1, 1), (1.0, 1.0, 1.0))
    for seed in range(50):
        m = random_material(seed, grid.nc)
        reduced = assemble_reduced(m, grid=grid)
        Q = reduced.Q
        assert Q.shape == (3*grid.nc, 6*grid.nc)
        assert norm(Q, 2) < 1.0
        report = check_theorem2(m, grid=grid, reduced=reduced)
        assert report.verdict == CERTIFIED
        assert report.condition(IDENTITY_Q).status == PASS
        assert report.condition(SCHUR).status == PASS
        assert 'eigenvalue oracle: certified' in report.notes
        assert report.c0 <= report.oracle_min_eig + 1e-8


def test_reduced_system():
    grid = make_grid((2, 1, 1), (1.0, 1.0, 1.0))
    m = random_material(3, grid.nc)
    reduced = assemble_reduced(m, grid=grid)
    assert reduced.M0_red.dim == 13*grid.nc
    assert reduced.M0_red.is_symmetric()
    system = reduced.discrete_system()
    assert system.dim == 13*grid.nc
    state = StateVector(grid, reduced=True, T=np.ones(6*grid.nc), theta_rel=np.ones(grid.nc))
    psi = np.array([1.0, -1.0])
    E, phi = reduced.reconstruct(state, psi)
    Phi = compute_Phi(m, state.T, state.theta_rel)
    D = apply_block(reduced.M, apply_block(reduced.M, E.values)) + Phi
    assert norm(-reduced.A_red.grad0.T.dot(D) - psi) < 1e-8


def test_adjust_rhs():
    rng = np.random.RandomState(43)
    grid = make_grid((2, 1, 1), (1.0, 1.0, 1.0))
    m = random_material(4, grid.nc)
    reduced = assemble_reduced(m, grid=grid)
    F0, F1, F4, F5 = rng.randn(6), rng.randn(12), rng.randn(2), rng.randn(6)
    G = reduced.rhs(F0, F1, F4, F5, np.zeros(2))
    assert norm(G.to_array() - np.concatenate([F0, F1, F4, F5])) == 0
    psi_dot = rng.randn(2)
    G = reduced.rhs(F0, F1, F4, F5, psi_dot)
    B = reduced.P.B.toarray()
    y = reduced.Minv.dense().dot(B.dot(np.linalg.solve(B.T.dot(B), psi_dot)))
    expected = F1 + reduced.inverted.strain_E.dense().dot(y)
    assert norm(G.T.values - expected) < EPS*max(1.0, norm(expected))
    th0 = m.theta0_block.dense()
    heat = th0.dot(m.p.T.dense()) + th0.dot(m.lam.T.dense()).dot(np.linalg.solve(m.C.dense(), m.e.dense()))
    expected = F4 + heat.dot(y)
    assert norm(G.theta_rel.values - expected) < EPS*max(1.0, norm(expected))
    assert norm(G.q.values - F5) == 0
    assert norm(G.v.values - F0) == 0


def test_quasistatic_errors():
    grid = make_grid((2, 1, 1), (1.0, 1.0, 1.0))
    with pytest.raises(InvalidArgumentError):
        check_theorem2(MaterialConfig.uniform(2, sigma=1.0), grid=grid)
    with pytest.raises(InvalidArgumentError):
        assemble_reduced(MaterialConfig.uniform(2, sigma=1.0), grid=grid)
    with pytest.raises(InvalidArgumentError):
        assemble_reduced(MaterialConfig.uniform(2))
    report = check_theorem2(MaterialConfig.uniform(2, epsilon=-1.0), grid=grid)
    assert report.verdict == FALSIFIED
    assert report.condition('M >> 0').status == FAIL
