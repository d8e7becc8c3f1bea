"""Matrix-free linear operators and the two synthetic test-matrix families.

An operator here is a short, fat m-by-n map known only through `apply` and
`apply_adjoint`.  Both entry points count their calls (thread-safely), so
algorithm cost contracts can be asserted exactly.  `densify` provides an
uncounted dense snapshot for small instances, used by verification oracles.
"""

import threading

import numpy as np

from .errors import ConfigurationError, DimensionError, SizeCapError

DENSIFY_CAP = 1_000_000  # max m*n entries a densify call will materialize


class LinearOperator:
    """Base class for counted matrix-free operators.

    Subclasses implement `_apply_impl` / `_apply_adjoint_impl` on 1-D float
    arrays.  Instances are immutable after construction except for the two
    call counters, which are updated under a lock so concurrent `apply`
    calls from several threads stay exact.
    """

    def __init__(self, m, n):
        m = int(m)
        n = int(n)
        if m < 1 or n < 1:
            raise ConfigurationError(f"operator dimensions must be positive, got {m}x{n}")
        if m > n:
            raise DimensionError(f"operator must be short and fat (m <= n), got {m}x{n}")
        self.shape = (m, n)
        self._apply_count = 0
        self._adjoint_apply_count = 0
        self._count_lock = threading.Lock()

    @property
    def apply_count(self):
        return self._apply_count

    @property
    def adjoint_apply_count(self):
        return self._adjoint_apply_count

    def counts(self):
        """Current (apply, adjoint-apply) counter pair."""
        with self._count_lock:
            return (self._apply_count, self._adjoint_apply_count)

    def apply(self, x):
        """Compute A x for a length-n vector; increments the apply counter."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.shape[1],):
            raise DimensionError(
                f"apply expects a vector of length {self.shape[1]}, got shape {x.shape}"
            )
        with self._count_lock:
            self._apply_count += 1
        return self._apply_impl(x)

    def apply_adjoint(self, y):
        """Compute A* y for a length-m vector; increments the adjoint counter."""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.shape[0],):
            raise DimensionError(
                f"apply_adjoint expects a vector of length {self.shape[0]}, got shape {y.shape}"
            )
        with self._count_lock:
            self._adjoint_apply_count += 1
        return self._apply_adjoint_impl(y)

    def _apply_impl(self, x):
        raise NotImplementedError

    def _apply_adjoint_impl(self, y):
        raise NotImplementedError


def apply(op, x):
    return op.apply(x)


def apply_adjoint(op, y):
    return op.apply_adjoint(y)


def densify(op, max_entries=DENSIFY_CAP):
    """Dense m-by-n snapshot of `op`, column by column, without touching counters."""
    m, n = op.shape
    if m * n > max_entries:
        raise SizeCapError(f"densify of a {m}x{n} operator exceeds the cap of {max_entries} entries")
    out = np.empty((m, n))
    e = np.zeros(n)
    for j in range(n):
        e[j] = 1.0
        out[:, j] = op._apply_impl(e)
        e[j] = 0.0
    return out


class CirculantStencil:
    """Circulant m-by-m matrix with row stencil (1, -4, 6+d, -4, 1).

    Symmetric positive definite for d > 0; eigenvalues are
    d + 4*(cos(2*pi*k/m) - 1)^2, so the condition number is (16+d)/d
    whenever m is even (the angle pi is then attained).  For m = 4 the
    two +/-2 offsets wrap onto the same column and their taps sum, which
    is the convention that keeps the eigenvalue formula exact.
    """

    def __init__(self, m, d):
        m = int(m)
        if m < 4:
            raise ConfigurationError(f"stencil needs m >= 4, got m={m}")
        if d <= 0:
            raise ConfigurationError(f"diagonal shift d must be positive, got {d}")
        self.m = m
        self.d = float(d)

    def apply(self, x):
        """B x via circular shifts; O(m) work, no dense matrix."""
        x = np.asarray(x, dtype=float)
        return (
            (6.0 + self.d) * x
            - 4.0 * (np.roll(x, 1) + np.roll(x, -1))
            + np.roll(x, 2)
            + np.roll(x, -2)
        )

    def toarray(self):
        m = self.m
        out = np.zeros((m, m))
        cols = np.arange(m)
        for off, val in ((-2, 1.0), (-1, -4.0), (0, 6.0 + self.d), (1, -4.0), (2, 1.0)):
            out[(cols + off) % m, cols] += val
        return out

    def eigenvalues(self):
        theta = 2.0 * np.pi * np.arange(self.m) / self.m
        return self.d + 4.0 * (np.cos(theta) - 1.0) ** 2

    def condition_number(self):
        """(16+d)/d; exact for even m, an upper bound for odd m."""
        return (16.0 + self.d) / self.d


class SparseTestMatrix(LinearOperator):
    """A = U [B B ... B] V with permutations U, V and circulant block B.

    `row_perm` (length m) and `col_perm` (length n) are index arrays: the
    permuted vector is `x[perm]`.  The operator applies in O(n) work and
    has condition number (16+d)/d, inherited from the stencil.
    """

    def __init__(self, stencil, row_perm, col_perm):
        row_perm = np.asarray(row_perm, dtype=np.intp)
        col_perm = np.asarray(col_perm, dtype=np.intp)
        m = stencil.m
        n = col_perm.size
        if row_perm.size != m:
            raise ConfigurationError("row permutation length must equal the stencil size")
        if n % m != 0:
            raise ConfigurationError(f"n={n} must be an exact multiple of m={m}")
        super().__init__(m, n)
        self.stencil = stencil
        self.row_perm = row_perm
        self.col_perm = col_perm
        self.block_count = n // m
        self._row_perm_inv = np.argsort(row_perm)
        self._col_perm_inv = np.argsort(col_perm)

    @property
    def kappa(self):
        return self.stencil.condition_number()

    def _apply_impl(self, x):
        m = self.shape[0]
        z = x[self.col_perm]
        # accumulate the n/m blocks left to right before applying B
        w = np.zeros(m)
        for b in range(self.block_count):
            w += z[b * m : (b + 1) * m]
        return self.stencil.apply(w)[self._row_perm_inv]

    def _apply_adjoint_impl(self, y):
        m = self.shape[0]
        t = y[self.row_perm]  # U* y
        w = self.stencil.apply(t)  # B is symmetric
        z = np.tile(w, self.block_count)
        return z[self._col_perm_inv]  # V* z


class DenseTestMatrix(LinearOperator):
    """Sparse test matrix plus a scaled rank-10 update E F / sqrt(m n).

    Dense as a matrix, but applied in O(n + 10(m+n)) work by exploiting
    the split.  One apply of this operator counts as one apply, even
    though it rides on the sparse base internally.
    """

    RANK = 10

    def __init__(self, base, E, F):
        E = np.asarray(E, dtype=float)
        F = np.asarray(F, dtype=float)
        m, n = base.shape
        if E.shape != (m, self.RANK) or F.shape != (self.RANK, n):
            raise ConfigurationError(
                f"low-rank factors must be {m}x{self.RANK} and {self.RANK}x{n}, "
                f"got {E.shape} and {F.shape}"
            )
        super().__init__(m, n)
        self.base = base
        self.E = E
        self.F = F
        self.scale = 1.0 / np.sqrt(m * n)

    @property
    def kappa(self):
        """Condition number of the sparse part; a rough estimate for the sum."""
        return self.base.kappa

    def _apply_impl(self, x):
        return self.base._apply_impl(x) + self.scale * (self.E @ (self.F @ x))

    def _apply_adjoint_impl(self, y):
        return self.base._apply_adjoint_impl(y) + self.scale * (self.F.T @ (self.E.T @ y))


class MatrixOperator(LinearOperator):
    """Wrap an explicit short, fat matrix as a counted operator."""

    def __init__(self, mat):
        mat = np.asarray(mat, dtype=float)
        if mat.ndim != 2:
            raise DimensionError(f"expected a 2-D array, got ndim={mat.ndim}")
        super().__init__(mat.shape[0], mat.shape[1])
        self.mat = mat

    def _apply_impl(self, x):
        return self.mat @ x

    def _apply_adjoint_impl(self, y):
        return self.mat.T @ y


class TripletMatrix(LinearOperator):
    """Sparse operator stored as parallel (row, col, value) arrays."""

    def __init__(self, m, n, rows, cols, vals):
        super().__init__(m, n)
        rows = np.asarray(rows, dtype=np.intp)
        cols = np.asarray(cols, dtype=np.intp)
        vals = np.asarray(vals, dtype=float)
        if not (rows.size == cols.size == vals.size):
            raise ConfigurationError("triplet arrays must have equal length")
        if rows.size and (rows.min() < 0 or rows.max() >= m):
            raise ConfigurationError("triplet row index out of range")
        if cols.size and (cols.min() < 0 or cols.max() >= n):
            raise ConfigurationError("triplet column index out of range")
        self.rows = rows
        self.cols = cols
        self.vals = vals

    def _apply_impl(self, x):
        return np.bincount(self.rows, weights=self.vals * x[self.cols], minlength=self.shape[0])

    def _apply_adjoint_impl(self, y):
        return np.bincount(self.cols, weights=self.vals * y[self.rows], minlength=self.shape[1])


def make_sparse_test(m, n, kappa, seed):
    """Seeded sparse test operator with condition number exactly `kappa`.

    Sets d = 16/(kappa-1) and draws the two permutations uniformly from a
    seeded generator.  Requires even m >= 4: odd m leaves the top stencil
    eigenvalue short of 16+d and the stated condition number would only
    hold approximately.
    """
    m = int(m)
    n = int(n)
    if m < 4 or m % 2 != 0:
        raise ConfigurationError(f"sparse test matrix needs even m >= 4, got m={m}")
    if n % m != 0:
        raise ConfigurationError(f"n={n} must be a multiple of m={m}")
    if kappa <= 1:
        raise ConfigurationError(f"kappa must exceed 1, got {kappa}")
    d = 16.0 / (kappa - 1.0)
    rng = np.random.default_rng(seed)
    return SparseTestMatrix(CirculantStencil(m, d), rng.permutation(m), rng.permutation(n))


def make_dense_test(m, n, kappa, seed):
    """Seeded dense test operator: sparse base plus Gaussian rank-10 update."""
    base = make_sparse_test(m, n, kappa, seed)
    rng = np.random.default_rng(seed)
    rng.permutation(m)  # keep the base's permutation draws aligned
    rng.permutation(n)
    E = rng.standard_normal((m, DenseTestMatrix.RANK))
    F = rng.standard_normal((DenseTestMatrix.RANK, n))
    return DenseTestMatrix(base, E, F)


def load_triplet_operator(path):
    """Load a sparse operator from a triplet text file.

    Format: a header line `m n nnz` followed by nnz lines `row col value`
    with 1-indexed coordinates.
    """
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ConfigurationError(f"{path}: header must be 'm n nnz'")
        m, n, nnz = (int(tok) for tok in header)
        rows = np.empty(nnz, dtype=np.intp)
        cols = np.empty(nnz, dtype=np.intp)
        vals = np.empty(nnz)
        for k in range(nnz):
            parts = fh.readline().split()
            if len(parts) != 3:
                raise ConfigurationError(f"{path}: entry {k + 1} must be 'row col value'")
            rows[k] = int(parts[0]) - 1
            cols[k] = int(parts[1]) - 1
            vals[k] = float(parts[2])
    return TripletMatrix(m, n, rows, cols, vals)
