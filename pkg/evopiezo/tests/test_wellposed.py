import numpy as np
from numpy.linalg import norm
import pytest

from evopiezo.wellposed import *
from evopiezo.wellposed.abstract import fixed_hypothesis
from evopiezo.wellposed.report import PASS, FAIL, UNDECIDED
from evopiezo.wellposed.theorem1 import E_CONDITION, Q_CONDITION
from evopiezo.material import MaterialConfig
from evopiezo.fields import make_grid
from evopiezo.errors import InvalidArgumentError
from evopiezo.errors import PivotSingularError

EPS = 1e-10
GOLDEN_C0 = (3 - np.sqrt(5))/2


def spd(rng, n):
    a = rng.randn(n, n)
    s = a.dot(a.T)
    return 0.5*(s + s.T) + np.eye(n)


def random_blocks(seed):
    rng = np.random.RandomState(seed)
    return dict(rho_star=spd(rng, 3), C=spd(rng, 6), e=0.3*rng.randn(6, 3),
                lam=0.3*rng.randn(6, 1), p=0.1*rng.randn(3, 1), epsilon=spd(rng, 3),
                mu=spd(rng, 3), alpha=1.0 + rng.rand(), sigma=0.3*rng.randn(3, 3),
                kappa0_inv=spd(rng, 3), kappa1=spd(rng, 3), theta0=1.0 + rng.rand())


def random_material(seed):
    return MaterialConfig.uniform(1, **random_blocks(seed))


def shifted_material(seed, name, delta):
    """Shifts one symmetric block so that its minimal eigenvalue becomes -delta."""
    blocks = random_blocks(seed)
    blk = np.atleast_2d(blocks[name])
    blocks[name] = blk - (np.linalg.eigvalsh(blk)[0] + delta)*np.eye(blk.shape[0])
    return MaterialConfig.uniform(1, **blocks)


def eddy_current(sigma=1.0, nc=1):
    return MaterialConfig.uniform(nc, p=[1.0, 0.0, 0.0], sigma=sigma)


def test_gauss_examples():
    a = BlockSymMatrix([[2.0, 1.0], [1.0, 1.0]], [1, 1])
    reduced, L = gauss_reduce(a, 0)
    assert norm(reduced.matrix() - np.diag([2.0, 0.5])) == 0
    assert norm(L.dot(a.matrix()).dot(L.T) - reduced.matrix()) < EPS
    assert reduced.is_block_diagonal()
    a = BlockSymMatrix([[1.0, 1.0], [1.0, 1.0]], [1, 1])
    reduced, _ = gauss_reduce(a, 0)
    assert norm(reduced.matrix() - np.diag([1.0, 0.0])) == 0
    assert reduced.inertia().tolist() == [[1, 1, 0]]


def test_gauss_errors():
    a = BlockSymMatrix([[0.0, 1.0], [1.0, 1.0]], [1, 1])
    with pytest.raises(PivotSingularError) as err:
        gauss_reduce(a, 0)
    assert err.value.pivot == 0
    assert err.value.cell == 0
    with pytest.raises(InvalidArgumentError):
        gauss_reduce(a, 2)
    with pytest.raises(InvalidArgumentError):
        BlockSymMatrix([[1.0, 2.0], [0.0, 1.0]], [1, 1])
    with pytest.raises(InvalidArgumentError):
        BlockSymMatrix(np.eye(3), [1, 1])


def test_inertia():
    assert inertia([1.0, 0.0, -1.0, 1e-12]).tolist() == [1, 2, 1]
    assert inertia([[1.0, 2.0], [-1.0, -2.0]]).tolist() == [[2, 0, 0], [0, 0, 2]]


def test_gauss_preserves_inertia():
    rng = np.random.RandomState(20)
    done = 0
    while done < 200:
        n = rng.randint(6, 20)
        k = rng.randint(1, 5)
        q, _ = np.linalg.qr(rng.randn(n, n))
        d = rng.choice([-1.0, 1.0], n)*rng.uniform(0.5, 2.0, n)
        a = q.dot(np.diag(d)).dot(q.T)
        a = 0.5*(a + a.T)
        if np.linalg.svd(a[:k, :k], compute_uv=False)[-1] < 0.1:
            continue
        mat = BlockSymMatrix(a, [k, n - k])
        reduced, L = gauss_reduce(mat, 0)
        assert mat.inertia().tolist() == reduced.inertia().tolist()
        assert norm(reduced.block(0, 1)) == 0
        assert norm(L.dot(a).dot(L.T) - reduced.matrix()) < EPS*norm(a)
        done += 1


def test_gauss_stacked():
    rng = np.random.RandomState(21)
    stack = np.array([spd(rng, 4) for _ in range(3)])
    mat = BlockSymMatrix(stack, [1, 2, 1])
    reduced, L = gauss_reduce(mat, 1)
    assert L.shape == (3, 4, 4)
    assert reduced.matrix().shape == (3, 4, 4)
    assert np.all(reduced.inertia()[:, 0] == 4)
    assert norm(np.matmul(np.matmul(L, stack), np.swapaxes(L, 1, 2)) - reduced.data) < EPS*norm(stack)


def test_nu_schedule():
    assert nu_schedule(16) == [1.0, 2.0, 4.0, 8.0, 16.0]
    assert nu_schedule(20) == [1.0, 2.0, 4.0, 8.0, 16.0]
    assert nu_schedule(1) == [1.0]
    assert len(nu_schedule()) == 31
    with pytest.raises(InvalidArgumentError):
        nu_schedule(0.5)


def test_fixed_hypothesis():
    stack = np.array([[[2.0]], [[1e-12]]])
    res = fixed_hypothesis('C', stack)
    assert res.name == 'C >> 0'
    assert res.status == UNDECIDED
    assert res.cell == 1
    assert fixed_hypothesis('C', stack[:1]).status == PASS
    res = fixed_hypothesis('mu', -np.eye(2), local=False)
    assert res.status == FAIL
    assert res.cell is None
    assert abs(res.witness + 1.0) < EPS


def test_search_pencil():
    res = search_pencil('x', np.eye(2), -3*np.eye(2))
    assert res.status == PASS
    assert res.nu == 4.0
    assert abs(res.witness - 1.0) < EPS
    res = search_pencil('x', np.diag([1.0, -1.0]), np.eye(2))
    assert res.status == FAIL
    assert abs(res.witness + 1.0) < EPS
    # second direction is never lifted by X
    res = search_pencil('x', np.diag([1.0, 0.0]), np.diag([0.0, -1.0]))
    assert res.status == FAIL
    res = search_pencil('x', np.eye(2), -100*np.eye(2), nu_cap=16)
    assert res.status == UNDECIDED
    assert res.nu == 16.0
    assert abs(res.witness + 84.0) < EPS
    res = search_pencil('x', np.eye(1), -np.eye(1), nus=[0.5, 3.0])
    assert res.status == PASS
    assert res.nu == 3.0
    with pytest.raises(InvalidArgumentError):
        search_pencil('x', np.eye(2), np.eye(3))


def test_check_abstract():
    report = check_abstract(np.eye(3), np.zeros((3, 3)))
    assert report.certified
    assert report.nu_star == 1.0
    assert abs(report.c0 - 1.0) < EPS
    assert report.check == 'abstract'
    report = check_abstract(np.diag([1.0, -1.0]), np.eye(2))
    assert report.verdict == FALSIFIED
    assert abs(report.condition('M0 >= 0').witness + 1.0) < EPS
    report = check_abstract(np.diag([1.0, 0.0]), np.zeros((2, 2)))
    assert report.verdict == FALSIFIED
    report = check_abstract(np.array([np.eye(2), np.diag([1.0, 0.0])]), np.array([np.zeros((2, 2)), 0.5*np.eye(2)]))
    assert report.certified
    assert report.condition_results[0].cell == 1
    with pytest.raises(InvalidArgumentError):
        check_abstract([[1.0, 1.0], [0.0, 1.0]], np.zeros((2, 2)))
    with pytest.raises(InvalidArgumentError):
        check_abstract(np.eye(2), np.zeros((3, 3)))


def test_range_nullspace():
    res = check_range_nullspace(np.diag([1.0, 0.0]), np.diag([0.0, 2.0]))
    assert [r.status for r in res] == [PASS, PASS]
    assert all(r.informational for r in res)
    assert abs(res[0].witness - 1.0) < EPS
    assert abs(res[1].witness - 2.0) < EPS
    res = check_range_nullspace(np.diag([1.0, 0.0]), np.diag([0.0, -1.0]))
    assert res[1].status == FAIL
    res = check_range_nullspace(np.eye(2), np.zeros((2, 2)))
    assert res[1].status == PASS
    assert res[1].witness is None


def test_report():
    with pytest.raises(ValueError):
        WellposednessReport('maybe')
    with pytest.raises(ValueError):
        ConditionResult('x', 'ok')
    report = WellposednessReport(CERTIFIED, condition_results=[ConditionResult('x', PASS, witness=1)])
    assert report.condition('x').witness == 1.0
    assert report.witnesses == []
    with pytest.raises(KeyError):
        report.condition('y')


def test_identity_material():
    report = check_theorem1(MaterialConfig.uniform(2))
    assert report.certified
    assert report.nu_star == 1.0
    assert abs(report.c0 - 1.0) < EPS
    names = [c.name for c in report.condition_results]
    assert names == ['rho_star >> 0', 'mu >> 0', 'C >> 0', 'gamma0 >> 0', E_CONDITION, Q_CONDITION]


def test_eddy_current():
    m = eddy_current()
    report = check_theorem1(m)
    assert report.certified
    assert report.nu_star == 1.0
    assert abs(report.c0 - GOLDEN_C0) < EPS
    cert = gauss_certificate(m, 1.0)
    assert abs(cert.transform_norm[0] - (1 + np.sqrt(5))/2) < EPS
    assert abs(cert.d_min[0] - 1.0) < EPS
    cross = verdict_crosscheck(m, make_grid((1, 1, 1), (1.0, 1.0, 1.0)))
    assert cross.ok
    assert abs(cross.theorem1.oracle_min_eig - GOLDEN_C0) < EPS


def test_eddy_current_without_conductivity():
    m = eddy_current(sigma=0.0, nc=2)
    report = check_theorem1(m)
    assert report.verdict == FALSIFIED
    assert report.condition(E_CONDITION).status == FAIL
    assert report.witnesses[0].name == E_CONDITION
    cross = verdict_crosscheck(m, make_grid((2, 1, 1), (1.0, 1.0, 1.0)))
    assert cross.agree
    assert cross.oracle.verdict == FALSIFIED


def test_zero_heat_capacity():
    m = MaterialConfig.uniform(2, alpha=0.0)
    report = check_theorem1(m)
    assert report.verdict == FALSIFIED
    assert report.condition('gamma0 >> 0').status == FAIL
    cross = verdict_crosscheck(m, make_grid((2, 1, 1), (1.0, 1.0, 1.0)))
    assert cross.agree
    assert cross.congruence_ok is None
    assert cross.ok


def test_tiny_permittivity_inconclusive():
    m = MaterialConfig.uniform(1, epsilon=np.diag([1e-12, 1.0, 1.0]))
    report = check_theorem1(m, nu_cap=16.0)
    assert report.verdict == INCONCLUSIVE
    assert report.condition(E_CONDITION).status == UNDECIDED
    assert report.nu_star is None


def test_asymmetric_permittivity():
    eps = np.eye(3)
    eps[0, 1] = 0.5
    report = check_theorem1(MaterialConfig.uniform(1, epsilon=eps))
    assert report.verdict == INCONCLUSIVE
    assert report.condition('epsilon symmetric').status == UNDECIDED
    assert abs(report.condition('epsilon symmetric').witness - 0.5) < EPS


def test_crosscheck_random():
    grid = make_grid((1, 1, 1), (1.0, 1.0, 1.0))
    for seed in range(100):
        m = random_material(seed)
        cross = verdict_crosscheck(m, grid)
        assert cross.theorem1.certified
        assert cross.agree
        assert cross.c0_ok
        assert cross.congruence_ok
        assert cross.theorem1.c0 > 0


def test_crosscheck_shifted():
    grid = make_grid((1, 1, 1), (1.0, 1.0, 1.0))
    names = ('epsilon', 'mu', 'alpha', 'kappa0_inv')
    verdicts = set()
    for k in range(100):
        rng = np.random.RandomState(1000 + k)
        name = names[k % 4]
        sign = 1 if (k // 4) % 2 == 0 else -1
        delta = sign*(0.05 + 0.45*rng.rand())
        cross = verdict_crosscheck(shifted_material(k, name, delta), grid)
        assert cross.agree
        assert cross.c0_ok
        if delta > 0 and name != 'kappa0_inv':
            assert cross.theorem1.verdict == FALSIFIED
        verdicts.add(cross.theorem1.verdict)
    assert CERTIFIED in verdicts
    assert FALSIFIED in verdicts


def test_crosscheck_falsified():
    grid = make_grid((1, 1, 1), (1.0, 1.0, 1.0))
    materials = [random_material(0).replace(mu=MaterialConfig.uniform(1, mu=-1.0).mu),
                 MaterialConfig.uniform(1, alpha=-1.0),
                 MaterialConfig.uniform(1, p=[2.0, 0.0, 0.0])]
    for m in materials:
        cross = verdict_crosscheck(m, grid)
        assert cross.theorem1.verdict == FALSIFIED
        assert cross.agree
        assert cross.c0_ok


def test_crosscheck_piezomagnetic():
    grid = make_grid((1, 1, 1), (1.0, 1.0, 1.0))
    rng = np.random.RandomState(30)
    for seed in range(10):
        m = random_material(seed)
        m = m.replace(beta=MaterialConfig.uniform(1, beta=0.5*rng.randn(3, 3)).beta)
        cross = verdict_crosscheck(m, grid)
        assert cross.ok
        assert cross.theorem1.certified
