"""Deterministic random streams used to fill sketch columns.

Two generators are provided: a subtractive lagged Fibonacci stream that is
uniform on [-1, 1] and runs on floating-point adds/subtracts alone, and a
Gaussian stream layered on top of it via the polar (Marsaglia) method.
Both are pure functions of their integer seed, so a stream can be replayed
column by column without ever holding a full n-by-l random matrix in memory.
"""

import numpy as np

_MASK64 = (1 << 64) - 1

# subtractive lags: x[k] = x[k-55] - x[k-24], folded back into [-1, 1]
_LAG_LONG = 55
_LAG_SHORT = 24
_WARMUP = 10 * _LAG_LONG


def _splitmix64(state):
    """Advance a splitmix64 counter; returns (value, new_state)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return z, state


class UniformLaggedFibonacci:
    """Lagged Fibonacci stream, uniform on [-1, 1], lags (55, 24).

    The ring buffer is seeded by expanding a 64-bit integer through a
    splitmix64 mixer and then discarding 550 draws so the recurrence has
    fully churned the initial state.  After seeding, each draw is one
    floating-point subtraction plus a fold back into [-1, 1].
    """

    def __init__(self, seed):
        state = int(seed) & _MASK64
        buf = []
        for _ in range(_LAG_LONG):
            z, state = _splitmix64(state)
            # top 53 bits -> [0, 1) -> [-1, 1)
            buf.append(2.0 * ((z >> 11) / 9007199254740992.0) - 1.0)
        self.seed = int(seed)
        self._buf = buf
        self._i = 0
        self._j = _LAG_LONG - _LAG_SHORT  # slot written 24 steps before slot _i
        for _ in range(_WARMUP):
            self.next_uniform()

    def next_uniform(self):
        """Next value in [-1, 1]; advances the state by one step."""
        buf = self._buf
        i = self._i
        v = buf[i] - buf[self._j]
        if v < -1.0:
            v += 2.0
        elif v > 1.0:
            v -= 2.0
        buf[i] = v
        self._i = i + 1 if i + 1 < _LAG_LONG else 0
        j = self._j + 1
        self._j = j if j < _LAG_LONG else 0
        return v

    def fill_column(self, n):
        """Return the next `n` stream values as a float array.

        `n = 0` is accepted and returns an empty array; the state is
        untouched in that case.
        """
        n = int(n)
        out = np.empty(n)
        buf = self._buf
        i = self._i
        j = self._j
        for k in range(n):
            v = buf[i] - buf[j]
            if v < -1.0:
                v += 2.0
            elif v > 1.0:
                v -= 2.0
            buf[i] = v
            out[k] = v
            i += 1
            if i == _LAG_LONG:
                i = 0
            j += 1
            if j == _LAG_LONG:
                j = 0
        self._i = i
        self._j = j
        return out


class GaussianStream:
    """Standard-normal stream built from a uniform [-1, 1] base generator.

    Uses the polar method: pairs (u, v) from the base stream are rejected
    until u^2 + v^2 lands in (0, 1), then both transformed variates are
    used, one cached as the spare.
    """

    def __init__(self, seed, base=None):
        self.seed = int(seed)
        self._base = base if base is not None else UniformLaggedFibonacci(seed)
        self._spare = None

    def next_gaussian(self):
        """Next standard-normal variate; advances the state."""
        if self._spare is not None:
            v = self._spare
            self._spare = None
            return v
        base = self._base
        while True:
            u = base.next_uniform()
            v = base.next_uniform()
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        factor = np.sqrt(-2.0 * np.log(s) / s)
        self._spare = v * factor
        return u * factor

    def fill_column(self, n):
        """Return the next `n` variates as a float array (empty for n = 0)."""
        n = int(n)
        out = np.empty(n)
        for k in range(n):
            out[k] = self.next_gaussian()
        return out


def fill_column(g, n):
    """Draw `n` consecutive values from generator `g` as one array."""
    return g.fill_column(n)
