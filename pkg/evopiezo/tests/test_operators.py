import numpy as np
from numpy.linalg import norm

from evopiezo.operators import *
from evopiezo.fields import make_grid
from evopiezo.fields import voigt_encode

EPS = 1e-12


def test_difference_1d():
    fwd = difference_1d(3, 0.5).toarray()
    assert fwd.tolist() == [[-2.0, 2.0, 0.0], [0.0, -2.0, 2.0], [0.0, 0.0, -2.0]]
    bwd = difference_1d(3, 0.5, forward=False).toarray()
    assert bwd.tolist() == [[2.0, 0.0, 0.0], [-2.0, 2.0, 0.0], [0.0, -2.0, 2.0]]


def test_single_cell_stencils():
    grid = make_grid((1, 1, 1), (1.0, 1.0, 1.0))
    c = 2.5
    assert (build_grad0(grid).dot([c])).tolist() == [-c, -c, -c]
    assert (build_div0(grid).dot([1.0, 2.0, 3.0])).tolist() == [6.0]
    assert norm(build_grad0(grid).dot([0.0])) == 0


def test_skew_adjoint_exact():
    for n in range(1, 7):
        grid = make_grid((n, n, n), (1.0, 1.0, 1.0))
        for reduced in (False, True):
            A = SpatialBlock(grid, reduced).A
            dim = (13 if reduced else 19)*grid.nc
            assert A.shape == (dim, dim)
            S = (A + A.T).tocsr()
            S.eliminate_zeros()
            assert S.nnz == 0


def test_skew_adjoint_anisotropic():
    grid = make_grid((2, 3, 4), (0.3, 1.7, 2.9))
    A = assemble_A(grid).A
    S = (A + A.T).tocsr()
    S.eliminate_zeros()
    assert S.nnz == 0
    assert assemble_A_reduced(grid).A.shape == (13*24, 13*24)


def test_adjoint_pairs():
    rng = np.random.RandomState(5)
    grid = make_grid((3, 2, 4), (1.0, 0.5, 2.0))
    blk = SpatialBlock(grid)
    q = rng.randn(3*grid.nc)
    phi = rng.randn(grid.nc)
    lhs = blk.div0.dot(q).dot(phi)
    rhs = -q.dot(blk.grad.dot(phi))
    assert abs(lhs - rhs) < EPS*max(1.0, abs(lhs))
    lhs = blk.div.dot(q).dot(phi)
    rhs = -q.dot(blk.grad0.dot(phi))
    assert abs(lhs - rhs) < EPS*max(1.0, abs(lhs))
    e = rng.randn(3*grid.nc)
    h = rng.randn(3*grid.nc)
    assert abs(blk.curl0.dot(e).dot(h) - e.dot(blk.curl.dot(h))) < EPS*max(1.0, norm(e)*norm(h))


def test_curl_of_gradient():
    rng = np.random.RandomState(6)
    grid = make_grid((4, 3, 5), (1.0, 1.0, 1.0))
    phi = np.zeros(grid.n)
    phi[1:-1, 1:-1, 1:-1] = rng.randn(2, 1, 3)
    curl_grad = build_curl0(grid).dot(build_grad0(grid).dot(phi.ravel()))
    assert norm(curl_grad, np.inf) < EPS


def test_symmetrized_gradient_voigt():
    rng = np.random.RandomState(7)
    grid = make_grid((2, 3, 2), (1.0, 1.5, 0.5))
    v = rng.randn(3*grid.nc)
    vc = v.reshape(grid.nc, 3)
    d = [axis_operator(grid, a) for a in range(3)]
    # jac[c, i, j] = d_j v_i
    jac = np.stack([np.stack([d[j].dot(vc[:, i]) for j in range(3)], axis=1) for i in range(3)], axis=1)
    sym = 0.5*(jac + np.swapaxes(jac, 1, 2))
    expected = voigt_encode(sym).ravel()
    assert norm(build_Grad0(grid).dot(v) - expected) < EPS*norm(expected)


def test_assemble_blocks_layout():
    grid = make_grid((2, 1, 1), (1.0, 1.0, 1.0))
    blk = SpatialBlock(grid)
    assert blk.sizes == [3, 6, 3, 3, 1, 3]
    A = blk.A.toarray()
    # rows of v against columns of T hold -Div = Grad0^T
    assert norm(A[0:6, 6:18] - blk.Grad0.T.toarray()) == 0
    # heat flux row holds grad = -div0^T
    assert norm(A[32:38, 30:32] + blk.div0.T.toarray()) == 0
