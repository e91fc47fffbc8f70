"""Portable deterministic random numbers.

Every random quantity in this package (toy-model weights, attack
permutations, scale factors, sign vectors, probe inputs) is drawn from the
generator below so that a 64-bit seed fully reproduces a run.  The
generator is deliberately simple enough to re-implement from this
docstring alone:

Raw stream (splitmix64):

    state_{n} = (state_{n-1} + 0x9E3779B97F4A7C15) mod 2^64
    z = state_n
    z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z = (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    out_n = z XOR (z >> 31)

Derived values, in the order the helpers consume the raw stream:

* ``random()``    -> (out >> 11) * 2**-53, a double in [0, 1).
* ``normal()``    -> Marsaglia polar method.  Uniform pairs (a, b) are
  mapped to u = 2a-1, v = 2b-1, s = u*u + v*v; pairs with s == 0 or
  s >= 1 are discarded; an accepted pair emits the two deviates
  u*m and v*m with m = sqrt(-2*ln(s)/s), in that order.
* ``randbelow(n)``-> rejection sampling: draw out until
  out < 2**64 - (2**64 % n), return out % n.
* ``permutation(n)`` -> Fisher-Yates: for i = n-1 .. 1 swap slot i with
  slot randbelow(i+1).
* ``signs(n)``    -> elementwise sign of n normal deviates (+1 for >= 0).

Substreams: ``fork(label)`` starts a fresh generator whose seed is
``mix(seed XOR fnv1a64(label))`` where ``mix`` is one splitmix64 step from
that value and fnv1a64 is the 64-bit FNV-1a hash of the UTF-8 label.
Forks depend only on the parent seed and the label, never on how much of
the parent stream was consumed.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _mix(z: int) -> int:
    z = (z + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK
    return h


class Rng:
    """splitmix64-based generator with vectorized bulk helpers.

    Bulk methods (``uniforms``, ``normals``) consume the identical raw
    stream the scalar methods would, so mixing the two styles cannot
    change downstream values.
    """

    def __init__(self, seed: int):
        self._seed = seed & _MASK
        self._state = self._seed
        self._normal_buffer = np.empty(0, dtype=np.float64)

    @property
    def seed(self) -> int:
        return self._seed

    def fork(self, label: str) -> "Rng":
        return Rng(_mix(self._seed ^ fnv1a64(label.encode("utf-8"))))

    # raw stream -------------------------------------------------------

    def u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def _u64_block(self, n: int) -> np.ndarray:
        """The next n raw outputs, vectorized (uint64)."""
        if n <= 0:
            return np.empty(0, dtype=np.uint64)
        with np.errstate(over="ignore"):
            steps = np.arange(1, n + 1, dtype=np.uint64)
            z = np.uint64(self._state) + steps * np.uint64(_GOLDEN)
            self._state = int(z[-1])
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            return z ^ (z >> np.uint64(31))

    # derived ----------------------------------------------------------

    def random(self) -> float:
        return (self.u64() >> 11) * _INV_2_53

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles in [0, 1)."""
        block = self._u64_block(n)
        return (block >> np.uint64(11)).astype(np.float64) * _INV_2_53

    def normal(self) -> float:
        return float(self.normals(1)[0])

    def normals(self, n: int) -> np.ndarray:
        """n standard-normal deviates from the documented polar method.

        Chunk boundaries never reorder or drop deviates, so consecutive
        calls read one continuous emission sequence: normals(a) followed
        by normals(b) equals normals(a + b).
        """
        out = np.empty(n, dtype=np.float64)
        take = min(n, self._normal_buffer.size)
        out[:take] = self._normal_buffer[:take]
        self._normal_buffer = self._normal_buffer[take:]
        filled = take
        while filled < n:
            want = n - filled
            # Acceptance rate is pi/4; over-draw to usually finish in one pass.
            pairs = max(16, int(want * 0.75) + 8)
            flat = 2.0 * self.uniforms(2 * pairs) - 1.0
            u, v = flat[0::2], flat[1::2]
            s = u * u + v * v
            ok = (s > 0.0) & (s < 1.0)
            m = np.zeros_like(s)
            m[ok] = np.sqrt(-2.0 * np.log(s[ok]) / s[ok])
            emitted = np.empty((int(ok.sum()), 2), dtype=np.float64)
            emitted[:, 0] = (u * m)[ok]
            emitted[:, 1] = (v * m)[ok]
            emitted = emitted.reshape(-1)
            take = min(want, emitted.size)
            out[filled : filled + take] = emitted[:take]
            filled += take
            if take < emitted.size:
                self._normal_buffer = emitted[take:].copy()
        return out

    def normal_array(self, shape) -> np.ndarray:
        shape = tuple(int(d) for d in shape)
        return self.normals(int(np.prod(shape, dtype=np.int64))).reshape(shape)

    def uniform_array(self, shape, low: float, high: float) -> np.ndarray:
        shape = tuple(int(d) for d in shape)
        u = self.uniforms(int(np.prod(shape, dtype=np.int64)))
        return (low + (high - low) * u).reshape(shape)

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.u64()
            if x < limit:
                return x % n

    def permutation(self, n: int) -> np.ndarray:
        p = np.arange(n, dtype=np.int64)
        for i in range(n - 1, 0, -1):
            j = self.randbelow(i + 1)
            p[i], p[j] = p[j], p[i]
        return p

    def signs(self, n: int) -> np.ndarray:
        """Sign vector in {-1, +1} taken from normal deviates."""
        return np.where(self.normals(n) >= 0.0, 1.0, -1.0)
