import numpy as np
import pytest

from nullproj import (
    DimensionError,
    FactorizationError,
    SingularFactorError,
    SizeCapError,
    invert_small,
    qr_pivoted,
    solve_upper,
    solve_upper_adjoint,
    svd_dense,
)


def reconstruction_error(M, qr):
    return np.linalg.norm(qr.Q @ qr.R - M[:, qr.perm]) / np.linalg.norm(M)


def test_qr_identity():
    qr = qr_pivoted(np.eye(4))
    assert np.allclose(qr.Q, np.eye(4), rtol=0, atol=1e-15)
    assert np.allclose(qr.R, np.eye(4), rtol=0, atol=1e-15)
    assert np.array_equal(np.sort(qr.perm), np.arange(4))


@pytest.mark.parametrize("shape", [(8, 5), (10, 10), (30, 7)])
def test_qr_random_reconstruction(shape):
    rng = np.random.default_rng(shape[0] * 100 + shape[1])
    M = rng.standard_normal(shape)
    qr = qr_pivoted(M)
    assert reconstruction_error(M, qr) <= 1e-13
    assert np.abs(qr.Q.T @ qr.Q - np.eye(shape[1])).max() <= 1e-13
    diag = np.diag(qr.R)
    assert (diag >= 0).all()
    assert (np.abs(diag[1:]) <= np.abs(diag[:-1]) + 1e-15).all()
    assert np.array_equal(qr.R, np.triu(qr.R))


def test_qr_duplicate_column_rank_deficiency():
    rng = np.random.default_rng(1)
    M = rng.standard_normal((8, 5))
    M[:, 3] = M[:, 1]
    qr = qr_pivoted(M)
    assert abs(qr.R[-1, -1]) <= 1e-12 * abs(qr.R[0, 0])
    assert reconstruction_error(M, qr) <= 1e-13


def test_qr_zero_matrix():
    qr = qr_pivoted(np.zeros((6, 3)))
    assert np.array_equal(qr.R, np.zeros((3, 3)))
    assert np.abs(qr.Q.T @ qr.Q - np.eye(3)).max() <= 1e-15


def test_qr_rejects_wide_input():
    with pytest.raises(DimensionError):
        qr_pivoted(np.zeros((3, 5)))


def test_qr_pivot_tie_break_prefers_low_index():
    # two exactly equal-norm columns: the earlier one must be pivoted first
    M = np.array([[2.0, 2.0, 1.0], [0.0, 0.0, 0.5], [0.0, 0.0, 0.0]])
    qr = qr_pivoted(M)
    assert qr.perm[0] == 0


def test_qr_orthogonal_invariance_of_singular_values():
    rng = np.random.default_rng(2)
    M = rng.standard_normal((9, 6))
    qr = qr_pivoted(M)
    s_input = svd_dense(M)[0]
    s_factors = svd_dense(qr.Q @ qr.R)[0]
    assert np.allclose(s_input, s_factors, rtol=1e-10, atol=0)


def test_solve_upper_identity_and_scalar():
    assert np.array_equal(solve_upper(np.eye(3), np.array([1.0, 2.0, 3.0])), [1.0, 2.0, 3.0])
    assert solve_upper(np.array([[2.0]]), np.array([6.0]))[0] == 3.0


def test_solve_upper_residual():
    rng = np.random.default_rng(3)
    R = np.triu(rng.standard_normal((7, 7))) + 5.0 * np.eye(7)
    y = rng.standard_normal(7)
    g = solve_upper(R, y)
    assert np.linalg.norm(R @ g - y) / np.linalg.norm(y) <= 1e-13


def test_solve_upper_matrix_rhs():
    rng = np.random.default_rng(4)
    R = np.triu(rng.standard_normal((5, 5))) + 4.0 * np.eye(5)
    Y = rng.standard_normal((5, 3))
    G = solve_upper(R, Y)
    assert np.linalg.norm(R @ G - Y) <= 1e-13 * np.linalg.norm(Y)


def test_solve_upper_zero_diagonal_names_index():
    R = np.triu(np.ones((4, 4)))
    R[2, 2] = 0.0
    with pytest.raises(SingularFactorError, match="index 2"):
        solve_upper(R, np.ones(4))
    with pytest.raises(SingularFactorError, match="index 2"):
        solve_upper_adjoint(R, np.ones(4))


def test_solve_upper_adjoint_hand_case():
    R = np.array([[1.0, 1.0], [0.0, 1.0]])
    e = solve_upper_adjoint(R, np.array([1.0, 1.0]))
    assert np.array_equal(e, np.array([1.0, 0.0]))


def test_solve_upper_adjoint_residual():
    rng = np.random.default_rng(5)
    R = np.triu(rng.standard_normal((6, 6))) + 5.0 * np.eye(6)
    d = rng.standard_normal(6)
    e = solve_upper_adjoint(R, d)
    assert np.linalg.norm(R.T @ e - d) / np.linalg.norm(d) <= 1e-13


def test_solve_round_trip_property():
    rng = np.random.default_rng(6)
    for trial in range(20):
        m = rng.integers(2, 9)
        R = np.triu(rng.standard_normal((m, m))) + 3.0 * np.eye(m)
        x = rng.standard_normal(m)
        assert np.allclose(solve_upper(R, R @ x), x, rtol=1e-12, atol=1e-12)
        assert np.allclose(solve_upper_adjoint(R, R.T @ x), x, rtol=1e-12, atol=1e-12)


def test_invert_small_identity_and_diagonal():
    assert np.array_equal(invert_small(np.eye(3)), np.eye(3))
    Y = invert_small(np.diag([2.0, 4.0]))
    assert np.allclose(Y, np.diag([0.5, 0.25]), rtol=1e-14, atol=0)


def test_invert_small_random_spd():
    rng = np.random.default_rng(7)
    M = rng.standard_normal((6, 6))
    X = M @ M.T + np.eye(6)
    Y = invert_small(X)
    assert np.abs(X @ Y - np.eye(6)).max() <= 1e-12
    assert np.array_equal(Y, Y.T)  # symmetrized exactly


def test_invert_small_singular_raises():
    with pytest.raises(FactorizationError):
        invert_small(np.zeros((3, 3)))


def test_invert_small_indefinite_falls_back_to_lu():
    X = np.diag([2.0, -3.0])  # not SPD, still invertible
    Y = invert_small(X)
    assert np.allclose(Y, np.diag([0.5, -1.0 / 3.0]), rtol=1e-14, atol=0)


def test_svd_dense_diag():
    s, cond = svd_dense(np.diag([3.0, 1.0]))
    assert np.array_equal(s, np.array([3.0, 1.0]))
    assert cond == 3.0


def test_svd_dense_orthonormal_columns():
    rng = np.random.default_rng(8)
    Q = qr_pivoted(rng.standard_normal((9, 4))).Q
    s, cond = svd_dense(Q)
    assert np.abs(s - 1.0).max() <= 1e-13
    assert abs(cond - 1.0) <= 1e-13


def test_svd_dense_matches_eigenvalue_oracle():
    rng = np.random.default_rng(9)
    M = rng.standard_normal((6, 4))
    s, _ = svd_dense(M)
    eig = np.sqrt(np.sort(np.linalg.eigvalsh(M.T @ M))[::-1])
    assert np.allclose(s, eig, rtol=1e-10, atol=1e-12)


def test_svd_dense_nonincreasing_and_cap():
    rng = np.random.default_rng(10)
    M = rng.standard_normal((5, 8))
    with pytest.raises(DimensionError):
        svd_dense(M[0])
    s, _ = svd_dense(M)
    assert (np.diff(s) <= 0).all()
    with pytest.raises(SizeCapError):
        svd_dense(M, max_entries=10)


def test_solves_reject_nonsquare_factor():
    with pytest.raises(DimensionError):
        solve_upper(np.triu(np.ones((4, 3))), np.ones(4))
    with pytest.raises(DimensionError):
        solve_upper_adjoint(np.triu(np.ones((4, 3))), np.ones(4))
