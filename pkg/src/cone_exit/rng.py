"""Counter-based random streams.

Draw ``j`` of the stream with key ``k`` is ``mix64(k + (j + 1) * GAMMA)``,
the SplitMix64 output function, so any draw is addressable without running
the stream forward. Keys are derived from ``(seed, stream id, index)``; one
key per Monte Carlo path or per i.i.d. draw makes every sample a pure
function of its index, independent of how work is split between workers.

The scalar :class:`CounterStream` uses Python ints and :mod:`math`; the
``*_at`` helpers are the same arithmetic on ``uint64`` arrays. Both produce
identical 64-bit words; floating-point transforms may differ in the last ulp
because numpy's ``log``/``exp`` are not libm's.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
TWO_POW_M53 = 2.0 ** -53
TWO_PI = 2.0 * math.pi

DEFAULT_SEED = 0xC0FFEE

# stream ids, one per kind of sample
STREAM_SKEW = 1
STREAM_PLANAR = 2
STREAM_LAW = 3
STREAM_EXACT_M1 = 4
STREAM_EXACT_M2 = 5


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive_key(seed: int, stream: int, index: int) -> int:
    k = mix64(seed + GAMMA)
    k = mix64(k ^ mix64(stream + GAMMA))
    return mix64(k ^ mix64(index + GAMMA))


def bits_to_uniform(z: int) -> float:
    """Map 64 random bits to the open interval (0, 1]."""
    return ((z >> 11) + 0.5) * TWO_POW_M53


class CounterStream:
    """Sequential view of one keyed stream."""

    __slots__ = ("key", "counter")

    def __init__(self, key: int, counter: int = 0):
        self.key = key & MASK64
        self.counter = counter

    @classmethod
    def for_path(cls, seed: int, stream: int, index: int) -> "CounterStream":
        return cls(derive_key(seed, stream, index))

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GAMMA)

    def uniform(self) -> float:
        return bits_to_uniform(self.next_u64())

    def normal_pair(self) -> tuple[float, float]:
        """Two independent standard normals (Box-Muller)."""
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        t = TWO_PI * u2
        return r * math.cos(t), r * math.sin(t)

    def normal(self) -> float:
        return self.normal_pair()[0]

    def exponential(self) -> float:
        return -math.log(self.uniform())


# ---------------------------------------------------------------------------
# vectorised counterparts


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def derive_keys(seed: int, stream: int, indices) -> np.ndarray:
    head = mix64(mix64(seed + GAMMA) ^ mix64(stream + GAMMA))
    idx = np.asarray(indices, dtype=np.uint64)
    return mix64_array(np.uint64(head) ^ mix64_array(idx + np.uint64(GAMMA)))


def uniforms_at(keys: np.ndarray, counter: int) -> np.ndarray:
    """Draw number ``counter`` (0-based) of each keyed stream, as uniforms."""
    z = mix64_array(keys + np.uint64(((counter + 1) * GAMMA) & MASK64))
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * TWO_POW_M53


def normal_pairs_at(keys: np.ndarray, pair: int) -> tuple[np.ndarray, np.ndarray]:
    """Normal pair number ``pair`` (draws ``2*pair`` and ``2*pair + 1``)."""
    u1 = uniforms_at(keys, 2 * pair)
    u2 = uniforms_at(keys, 2 * pair + 1)
    r = np.sqrt(-2.0 * np.log(u1))
    t = TWO_PI * u2
    return r * np.cos(t), r * np.sin(t)
