"""Small dense kernels: pivoted Householder QR, triangular solves, inversion.

These run on matrices whose side is the short dimension m of the operator,
so none of them chase LAPACK-grade blocking.  The greedy column pivoting
recomputes the remaining column norms at every step instead of downdating
them; that costs an extra O(l m^2) but cannot drift, which matters because
the factorization doubles as a rank detector.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, FactorizationError, SingularFactorError, SizeCapError

ORACLE_CAP = 1_000_000  # max p*q entries the dense SVD oracle accepts

_PIVOT_TIE_RTOL = 1e-15  # column norms this close count as tied; lowest index wins


@dataclass
class PivotedQR:
    """Factorization M[:, perm] = Q R with orthonormal Q and upper-triangular R.

    Equivalently M = Q R Pi for the permutation Pi acting as z -> z[perm].
    R's diagonal is nonnegative and nonincreasing in magnitude, so trailing
    near-zero entries expose rank deficiency of M.
    """

    Q: np.ndarray
    R: np.ndarray
    perm: np.ndarray


def qr_pivoted(M):
    """Householder QR with greedy column pivoting of an l-by-m matrix, l >= m.

    At each step the remaining column of largest Euclidean norm is chosen
    (ties within 1e-15 relative resolved toward the lower index).  The
    returned R has a nonnegative diagonal; Q is l-by-m with orthonormal
    columns.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionError(f"qr_pivoted expects a matrix, got ndim={M.ndim}")
    l, m = M.shape
    if l < m:
        raise DimensionError(f"qr_pivoted needs at least as many rows as columns, got {l}x{m}")

    A = M.copy()
    perm = np.arange(m)
    reflectors = []  # (step, v, 2/v'v)

    for k in range(m):
        norms = np.sqrt(np.sum(A[k:, k:] ** 2, axis=0))
        top = norms.max()
        if top == 0.0:
            break  # remaining block is exactly zero; R stays zero there
        piv = k + int(np.argmax(norms >= top * (1.0 - _PIVOT_TIE_RTOL)))
        if piv != k:
            A[:, [k, piv]] = A[:, [piv, k]]
            perm[[k, piv]] = perm[[piv, k]]

        x = A[k:, k]
        normx = np.sqrt(np.sum(x * x))
        alpha = -normx if x[0] >= 0.0 else normx
        v = x.copy()
        v[0] -= alpha
        coef = 2.0 / np.dot(v, v)
        reflectors.append((k, v, coef))
        A[k:, k + 1 :] -= coef * np.outer(v, v @ A[k:, k + 1 :])
        A[k, k] = alpha
        A[k + 1 :, k] = 0.0

    R = np.triu(A[:m, :])

    Q = np.zeros((l, m))
    Q[:m, :m] = np.eye(m)
    for k, v, coef in reversed(reflectors):
        Q[k:, :] -= coef * np.outer(v, v @ Q[k:, :])

    # sign convention: flip rows of R (and matching Q columns) so diag(R) >= 0
    flip = np.diag(R) < 0.0
    if flip.any():
        R[flip, :] *= -1.0
        Q[:, flip] *= -1.0

    return PivotedQR(Q=Q, R=R, perm=perm)


def _check_factor(R):
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise DimensionError(f"triangular factor must be square, got shape {R.shape}")
    diag = np.diag(R)
    zero = np.flatnonzero(diag == 0.0)
    if zero.size:
        raise SingularFactorError(f"triangular factor has zero diagonal at index {zero[0]}")


def solve_upper(R, y):
    """Solve R g = y by back substitution; accepts vector or matrix right-hand sides."""
    R = np.asarray(R, dtype=float)
    _check_factor(R)
    m = R.shape[0]
    x = np.array(y, dtype=float)
    vec = x.ndim == 1
    if vec:
        x = x[:, None]
    if x.shape[0] != m:
        raise DimensionError(f"right-hand side length {x.shape[0]} does not match factor size {m}")
    for k in range(m - 1, -1, -1):
        x[k] /= R[k, k]
        if k:
            x[:k] -= R[:k, k, None] * x[k]
    return x[:, 0] if vec else x


def solve_upper_adjoint(R, d):
    """Solve R* e = d by forward substitution (R upper-triangular)."""
    R = np.asarray(R, dtype=float)
    _check_factor(R)
    m = R.shape[0]
    x = np.array(d, dtype=float)
    vec = x.ndim == 1
    if vec:
        x = x[:, None]
    if x.shape[0] != m:
        raise DimensionError(f"right-hand side length {x.shape[0]} does not match factor size {m}")
    for k in range(m):
        x[k] /= R[k, k]
        if k + 1 < m:
            x[k + 1 :] -= R[k, k + 1 :, None] * x[k]
    return x[:, 0] if vec else x


def invert_small(X):
    """Invert a small symmetric positive definite matrix.

    Cholesky first (the intended path), partially pivoted LU as a fallback
    for inputs that are only numerically SPD.  The result is symmetrized,
    so Y == Y.T holds exactly.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise DimensionError(f"invert_small expects a square matrix, got shape {X.shape}")
    m = X.shape[0]
    try:
        L = np.linalg.cholesky(X)
        Rc = L.T
        W = solve_upper_adjoint(Rc, np.eye(m))  # L W = I
        Y = solve_upper(Rc, W)  # L* Y = W
    except np.linalg.LinAlgError:
        try:
            Y = np.linalg.inv(X)
        except np.linalg.LinAlgError as exc:
            raise FactorizationError(f"matrix of size {m} is singular: {exc}") from exc
    return (Y + Y.T) / 2.0


def svd_dense(M, max_entries=ORACLE_CAP):
    """Singular values (nonincreasing) and l2 condition number of a dense matrix.

    Verification oracle only; refuses inputs above the entry cap.  A zero
    smallest singular value yields an infinite condition number.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionError(f"svd_dense expects a matrix, got ndim={M.ndim}")
    if M.shape[0] * M.shape[1] > max_entries:
        raise SizeCapError(
            f"svd of a {M.shape[0]}x{M.shape[1]} matrix exceeds the cap of {max_entries} entries"
        )
    sigma = np.linalg.svd(M, compute_uv=False)
    smallest = sigma[-1]
    cond = np.inf if smallest == 0.0 else float(sigma[0] / smallest)
    return sigma, cond
