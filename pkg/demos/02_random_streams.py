"""The two sketch-entry streams: lagged Fibonacci and Gaussian.

The uniform stream costs a floating-point subtraction and a fold per
value; the Gaussian stream rides on it through the polar method.  Both
are exact functions of their seed, which is what lets tests replay the
full random matrix G column by column without ever storing it.
"""

import time

import numpy as np

from nullproj import GaussianStream, UniformLaggedFibonacci

# ----------------------------------------------------------------------
# Uniform on [-1, 1]: range, moments, determinism
# ----------------------------------------------------------------------
g = UniformLaggedFibonacci(2024)
xs = g.fill_column(100_000)
print(f"uniform range: [{xs.min():+.6f}, {xs.max():+.6f}]")
print(f"uniform mean {xs.mean():+.5f} (target 0), variance {xs.var():.5f} (target {1 / 3:.5f})")

again = UniformLaggedFibonacci(2024).fill_column(5)
print(f"replayed first five: {again}")
print(f"bitwise equal to the original run: {np.array_equal(again, UniformLaggedFibonacci(2024).fill_column(5))}")

# ----------------------------------------------------------------------
# Gaussian stream: standard-normal moments and the 68% central mass
# ----------------------------------------------------------------------
zs = GaussianStream(2024).fill_column(100_000)
print(f"gaussian mean {zs.mean():+.5f}, variance {zs.var():.5f}")
print(f"fraction with |z| <= 1: {np.mean(np.abs(zs) <= 1.0):.4f} (normal: 0.6827)")

# ----------------------------------------------------------------------
# Throughput: the uniform stream is what keeps sketch construction cheap
# ----------------------------------------------------------------------
t0 = time.perf_counter()
g.fill_column(1_000_000)
dt = time.perf_counter() - t0
print(f"uniform throughput: {1.0 / dt:.1f}M values/s")
t0 = time.perf_counter()
GaussianStream(7).fill_column(200_000)
dt = time.perf_counter() - t0
print(f"gaussian throughput: {0.2 / dt:.1f}M values/s")
