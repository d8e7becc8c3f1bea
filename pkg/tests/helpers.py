"""Shared independent oracles for the test suite.

Everything here goes through dense numpy factorizations of explicitly
materialized matrices, never through the library's own solve chain, so a
bug in the fast path cannot hide behind the same bug in its check.
"""

import numpy as np

from nullproj import densify


def svd_parts(A):
    """(dense matrix, U, sigma, Vh) of a densifiable operator."""
    Ad = densify(A)
    U, s, Vh = np.linalg.svd(Ad, full_matrices=False)
    return Ad, U, s, Vh


def oracle_row_projection(Vh, b):
    """Projection of b onto the row space, straight from the singular vectors."""
    return Vh.T @ (Vh @ b)


def oracle_null_projection(Vh, b):
    return b - oracle_row_projection(Vh, b)


def oracle_lstsq(U, s, Vh, b):
    """Minimizer of ||A* h - b|| via the pseudoinverse of A*."""
    return U @ ((Vh @ b) / s)


def unit_vectors(n, count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        v = rng.standard_normal(n)
        yield v / np.linalg.norm(v)
