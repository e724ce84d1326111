"""Seeded, cross-platform random graph sampling.

One public entry point, :func:`sample_gnp`, draws a graph in which each of the
C(n,2) vertex pairs appears independently with probability p. Two kernels sit
behind it:

* dense: one uniform draw per pair, compared against p in canonical pair order;
* sparse: geometric gaps between successive present pairs, so work scales with
  the number of edges drawn rather than the number of pairs.

Both kernels consume a counter-based Philox stream keyed by
``master_seed XOR mix64(stream_index)`` where ``mix64`` is the SplitMix64
finalizer, so every (master_seed, stream_index, n, p, kernel) tuple yields a
bit-identical graph on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import MAX_VERTICES, Graph

_MASK64 = (1 << 64) - 1

# p below this routes "auto" to the geometric-gap kernel
SPARSE_KERNEL_THRESHOLD = 0.1

_DENSE_CHUNK = 1 << 20
_SPARSE_BATCH = 4096


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a fixed 64-bit bijective scrambler."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


@dataclass(frozen=True)
class RngSeed:
    """Master seed plus a stream index; together they pin every random draw."""

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not (0 <= self.master_seed <= _MASK64):
            raise ValueError("master_seed must fit in 64 unsigned bits")
        if not (0 <= self.stream_index <= _MASK64):
            raise ValueError("stream_index must be a non-negative 64-bit integer")

    def stream_key(self) -> int:
        return self.master_seed ^ mix64(self.stream_index)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.stream_key()))


def pairs_from_indices(indices: np.ndarray, n: int) -> np.ndarray:
    """Decode canonical pair ranks to (u, v) endpoint columns, vectorized.

    Inverse of the rank formula u*n - u(u+1)/2 + (v-u-1). The float sqrt
    can land one row off, so two integer fix-up passes follow it.
    """
    idx = np.asarray(indices, dtype=np.int64)
    tn = 2 * n - 1
    u = ((tn - np.sqrt(float(tn) * tn - 8.0 * idx)) // 2).astype(np.int64)
    for _ in range(2):
        base = u * n - u * (u + 1) // 2
        u = np.where(base > idx, u - 1, u)
        base = u * n - u * (u + 1) // 2
        u = np.where(idx - base >= n - 1 - u, u + 1, u)
    base = u * n - u * (u + 1) // 2
    v = idx - base + u + 1
    return np.column_stack([u, v])


def _dense_indices(gen: np.random.Generator, total: int, p: float) -> np.ndarray:
    hits = []
    for start in range(0, total, _DENSE_CHUNK):
        count = min(_DENSE_CHUNK, total - start)
        chunk = np.nonzero(gen.random(count) < p)[0]
        if chunk.size:
            hits.append(chunk + start)
    if not hits:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(hits)


def _sparse_indices(gen: np.random.Generator, total: int, p: float) -> np.ndarray:
    # gap to the next present pair is geometric: 1 + floor(log(1-U)/log(1-p))
    log_q = math.log1p(-p)
    hits = []
    position = -1
    while True:
        u = gen.random(_SPARSE_BATCH)
        gaps = 1 + np.floor(np.log1p(-u) / log_q).astype(np.int64)
        steps = position + np.cumsum(gaps)
        hits.append(steps[steps < total])
        if steps[-1] >= total:
            break
        position = int(steps[-1])
    return np.concatenate(hits)


def sample_gnp(n: int, p: float, seed: RngSeed, kernel: str = "auto") -> Graph:
    """Draw one graph from the independent-pairs model, deterministically per seed."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("vertex count must be a positive integer")
    if n > MAX_VERTICES:
        raise ValueError(f"vertex count {n} exceeds limit {MAX_VERTICES}")
    p = float(p)
    if math.isnan(p) or not (0.0 <= p <= 1.0):
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if kernel not in ("auto", "dense", "sparse"):
        raise ValueError(f"unknown kernel {kernel!r}")

    total = n * (n - 1) // 2
    if total == 0 or p == 0.0:
        return Graph(n)
    if kernel == "auto":
        kernel = "sparse" if p < SPARSE_KERNEL_THRESHOLD else "dense"
    if p == 1.0 and kernel == "sparse":
        kernel = "dense"  # log(1-p) is undefined; every pair is present anyway

    gen = seed.generator()
    if kernel == "dense":
        idx = _dense_indices(gen, total, p)
    else:
        idx = _sparse_indices(gen, total, p)
    return Graph(n, pairs_from_indices(idx, n))
