"""Randomized preconditioner construction.

Given a counted operator A (m-by-n, m <= n) and a random stream, this
module forms the sketch S = A G column by column, takes a pivoted QR of
S*, and precomputes everything a projection needs afterwards: the
triangular factor R, the pivot permutation, and the inverse Y of the
preconditioned Gram matrix.  The whole build costs exactly l+m applies
of A and m applies of A*, and never allocates more than one length-n
column of G at a time.
"""

from dataclasses import dataclass

import numpy as np

from .dense_core import invert_small, qr_pivoted, solve_upper, solve_upper_adjoint
from .errors import ConfigurationError, RankDeficientSketchError


@dataclass
class Preconditioner:
    """Everything needed to project after one randomized setup.

    `R` is upper-triangular m-by-m, `perm` the pivot index array (the
    permutation acts as z -> z[perm]), and `Y` the symmetric inverse of
    the preconditioned Gram matrix.  Instances are immutable (the arrays
    are marked read-only) and safe to share across threads.
    """

    R: np.ndarray
    perm: np.ndarray
    Y: np.ndarray
    l: int
    m: int
    n: int
    build_apply_counts: tuple

    def __post_init__(self):
        for arr in (self.R, self.perm, self.Y):
            arr.setflags(write=False)


def default_sketch_width(m, n=None):
    """The usual sketch width m+4, clamped to n when the operator is that narrow."""
    if m < 1:
        raise ConfigurationError(f"m must be positive, got {m}")
    width = m + 4
    if n is not None:
        width = min(width, n)
    return width


def build_sketch(A, l, g):
    """Sketch S = A G, one generated column of G at a time.

    Applies A exactly l times and holds only one length-n column plus the
    m-by-l result, never the full n-by-l random matrix.
    """
    m, n = A.shape
    l = int(l)
    if not m <= l <= n:
        raise ConfigurationError(f"sketch width must satisfy m <= l <= n, got l={l} for {m}x{n}")
    S = np.empty((m, l))
    for k in range(l):
        S[:, k] = A.apply(g.fill_column(n))
    return S


def build_gram(A, R, perm):
    """Preconditioned Gram matrix X = P^-1 A A* (P*)^-1 with P = Pi* R*.

    Built one column at a time: take a column of (P*)^-1 = Pi* R^-1, push
    it through A* then A, permute, and solve against R*.  Costs m applies
    of A and m of A*, with one length-n temporary.
    """
    m, n = A.shape
    R = np.asarray(R, dtype=float)
    if R.shape != (m, m):
        raise ConfigurationError(f"R must be {m}x{m} for a {m}x{n} operator, got {R.shape}")
    Rinv = solve_upper(R, np.eye(m))
    Pminus = np.empty((m, m))
    Pminus[perm, :] = Rinv
    X = np.empty((m, m))
    for k in range(m):
        c = Pminus[:, k]
        d = A.apply_adjoint(c)
        e = A.apply(d)
        f = e[perm]
        X[:, k] = solve_upper_adjoint(R, f)
    return X


def build_preconditioner(A, l, g, attempts=3):
    """Full randomized setup: sketch, pivoted QR of S*, Gram matrix, inverse.

    Parameters
    ----------
    A : LinearOperator
        Short, fat full-rank operator.
    l : int
        Sketch width, m <= l <= n (m+4 is the usual choice).
    g : stream
        Random generator with a `fill_column` method (uniform lagged
        Fibonacci and Gaussian streams both qualify).
    attempts : int
        How many fresh sketches to try if one comes out rank deficient
        (probability ~0 for a full-rank A); afterwards the rank error is
        raised for the caller, who may reseed.

    Returns a `Preconditioner` whose `build_apply_counts` records the
    (A, A*) applies spent, (l+m, m) on the standard single-attempt path.
    The orthonormal factor of the QR is discarded: projections only ever
    use R and the permutation.
    """
    m, n = A.shape
    if attempts < 1:
        raise ConfigurationError(f"attempts must be at least 1, got {attempts}")
    before = A.counts()
    eps = np.finfo(float).eps
    qr = None
    for _ in range(attempts):
        S = build_sketch(A, l, g)
        cand = qr_pivoted(S.T)
        diag = np.abs(np.diag(cand.R))
        if diag[0] > 0.0 and diag.min() >= m * eps * diag[0]:
            qr = cand
            break
    if qr is None:
        raise RankDeficientSketchError(
            f"sketch was rank deficient in {attempts} attempt(s); is the operator full rank?"
        )
    X = build_gram(A, qr.R, qr.perm)
    Y = invert_small(X)
    after = A.counts()
    return Preconditioner(
        R=qr.R,
        perm=qr.perm,
        Y=Y,
        l=l,
        m=m,
        n=n,
        build_apply_counts=(after[0] - before[0], after[1] - before[1]),
    )
