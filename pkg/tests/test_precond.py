import tracemalloc

import numpy as np
import pytest

from nullproj import (
    ConfigurationError,
    GaussianStream,
    MatrixOperator,
    RankDeficientSketchError,
    UniformLaggedFibonacci,
    build_gram,
    build_preconditioner,
    build_sketch,
    default_sketch_width,
    densify,
    make_sparse_test,
    measured_condition,
    project,
    qr_pivoted,
)


def perm_matrix(perm):
    """Dense matrix of the permutation acting as z -> z[perm]."""
    return np.eye(perm.size)[perm]


def test_sketch_of_zero_operator_is_zero():
    A = MatrixOperator(np.zeros((2, 4)))
    S = build_sketch(A, 3, UniformLaggedFibonacci(1))
    assert np.array_equal(S, np.zeros((2, 3)))


def test_sketch_replays_the_stream():
    # A = [I_3 | 0]: each sketch column is the top 3 entries of a G column
    A = MatrixOperator(np.hstack([np.eye(3), np.zeros((3, 3))]))
    seed = 42
    S = build_sketch(A, 3, UniformLaggedFibonacci(seed))
    g = UniformLaggedFibonacci(seed)
    G = np.column_stack([g.fill_column(6) for _ in range(3)])
    assert np.array_equal(S, G[:3, :])


def test_sketch_counts_and_bounds():
    A = make_sparse_test(6, 30, 50.0, seed=1)
    before = A.counts()
    build_sketch(A, 10, UniformLaggedFibonacci(2))
    assert A.counts() == (before[0] + 10, before[1])
    with pytest.raises(ConfigurationError):
        build_sketch(A, 5, UniformLaggedFibonacci(2))  # l < m
    with pytest.raises(ConfigurationError):
        build_sketch(A, 31, UniformLaggedFibonacci(2))  # l > n


def test_build_gram_scalar_case():
    c, r = 3.0, 2.0
    A = MatrixOperator(np.array([[c]]))
    X = build_gram(A, np.array([[r]]), np.array([0]))
    assert X.shape == (1, 1)
    assert X[0, 0] == pytest.approx(c * c / (r * r), rel=1e-15)


def test_build_gram_matches_dense_oracle():
    # operator-generic op; a 3x8 shape cannot come from the sparse family
    rng = np.random.default_rng(3)
    A = MatrixOperator(rng.standard_normal((3, 8)))
    S = build_sketch(A, 5, UniformLaggedFibonacci(4))
    qr = qr_pivoted(S.T)
    X = build_gram(A, qr.R, qr.perm)
    P = perm_matrix(qr.perm).T @ qr.R.T  # P = Pi* R*
    Ad = A.mat
    X_oracle = np.linalg.inv(P) @ Ad @ Ad.T @ np.linalg.inv(P).T
    assert np.abs(X - X_oracle).max() <= 1e-10


def test_build_gram_cost_and_spd():
    A = make_sparse_test(6, 24, 100.0, seed=5)
    S = build_sketch(A, 10, UniformLaggedFibonacci(6))
    qr = qr_pivoted(S.T)
    before = A.counts()
    X = build_gram(A, qr.R, qr.perm)
    after = A.counts()
    assert (after[0] - before[0], after[1] - before[1]) == (6, 6)
    assert np.linalg.eigvalsh((X + X.T) / 2).min() > 0


def test_build_preconditioner_counts_m50_l54():
    A = make_sparse_test(50, 200, 1e4, seed=7)
    pre = build_preconditioner(A, 54, UniformLaggedFibonacci(8))
    assert pre.build_apply_counts == (104, 50)
    assert pre.Y.shape == (50, 50)
    assert np.array_equal(pre.Y, pre.Y.T)


def test_preconditioner_scalar_chain():
    c = 3.0
    A = MatrixOperator(np.array([[c]]))
    pre = build_preconditioner(A, 1, UniformLaggedFibonacci(9))
    assert pre.Y[0, 0] == pytest.approx(pre.R[0, 0] ** 2 / c**2, rel=1e-12)
    b = np.array([0.7])
    res = project(pre, A, b)
    assert res.row_projection[0] == pytest.approx(b[0], rel=1e-14)


def test_gram_inverse_invariant():
    # recomputing X from (A, R, perm) must invert Y to high accuracy
    A = make_sparse_test(10, 50, 100.0, seed=10)
    pre = build_preconditioner(A, 14, UniformLaggedFibonacci(11))
    X = build_gram(A, pre.R, pre.perm)
    assert np.abs(X @ pre.Y - np.eye(10)).max() <= 1e-8


def test_conditioning_single_instance():
    A = make_sparse_test(50, 1000, 1e8, seed=12)
    pre = build_preconditioner(A, 54, UniformLaggedFibonacci(13))
    assert measured_condition(pre, A) <= 10 * 54


def test_conditioning_gaussian_stream():
    A = make_sparse_test(50, 1000, 1e8, seed=14)
    pre = build_preconditioner(A, 54, GaussianStream(15))
    assert measured_condition(pre, A) <= 10 * 54


def test_scaling_invariance():
    # P absorbs a global rescaling of A, so cond(P^-1 A) is unchanged
    A = make_sparse_test(8, 32, 1e4, seed=16)
    A10 = MatrixOperator(10.0 * densify(A))
    c1 = measured_condition(build_preconditioner(A, 12, UniformLaggedFibonacci(17)), A)
    c2 = measured_condition(build_preconditioner(A10, 12, UniformLaggedFibonacci(17)), A10)
    assert abs(c1 - c2) / c1 <= 1e-6


def test_rank_deficient_sketch_raises_after_retries():
    A = MatrixOperator(np.zeros((2, 4)))
    g = UniformLaggedFibonacci(18)
    with pytest.raises(RankDeficientSketchError):
        build_preconditioner(A, 3, g, attempts=3)


def test_preconditioner_arrays_are_read_only():
    A = make_sparse_test(4, 8, 10.0, seed=19)
    pre = build_preconditioner(A, 6, UniformLaggedFibonacci(20))
    with pytest.raises(ValueError):
        pre.Y[0, 0] = 1.0


def test_default_sketch_width():
    assert default_sketch_width(40) == 44
    assert default_sketch_width(4000) == 4004
    assert default_sketch_width(1, n=1) == 1
    with pytest.raises(ConfigurationError):
        default_sketch_width(0)


def test_build_memory_stays_far_below_full_g():
    # one column of G at a time: peak extra allocation must be nowhere near
    # the n*l doubles a materialized G would take (3.84 MB here)
    m, n, l = 20, 20_000, 24
    A = make_sparse_test(m, n, 100.0, seed=21)
    g = UniformLaggedFibonacci(22)
    tracemalloc.start()
    tracemalloc.reset_peak()
    build_preconditioner(A, l, g)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    full_g_bytes = n * l * 8
    assert peak < 0.5 * full_g_bytes


def test_build_gram_rejects_wrong_factor_shape():
    A = make_sparse_test(6, 24, 100.0, seed=23)
    with pytest.raises(ConfigurationError):
        build_gram(A, np.eye(5), np.arange(5))
