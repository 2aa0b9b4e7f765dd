"""Seeded random stream with a fixed draw discipline.

Every random decision in the package goes through :class:`Rng` so that a
single integer seed reproduces a run exactly, on any platform.

Algorithm
---------
* Bit generator: PCG64 (``numpy.random.PCG64``) seeded with the integer seed
  through ``numpy.random.SeedSequence``. Independent streams for restarts are
  obtained from consecutive seeds ``seed, seed + 1, ...``.
* ``below(k)``: uniform integer in ``{0, ..., k-1}`` from
  ``Generator.integers`` (Lemire's bounded method), one call per draw.
* ``sample(pool, k)``: partial Fisher-Yates. For ``t = 0..k-1`` draw
  ``j = t + below(len(pool) - t)`` and swap ``pool[t]`` with ``pool[j]``;
  the first ``k`` entries are returned in draw order.
* ``weighted_sample(p, k)``: sequential draws without replacement. Each draw
  takes one ``uniform()`` value, scales it by the remaining mass and walks
  the cumulative sum; the chosen weight is then zeroed.
* ``normal(size)``: Box-Muller. ``2 * ceil(size / 2)`` uniforms are drawn in
  one block and consumed in consecutive pairs ``(u1, u2)``, each pair giving
  ``r cos(2 pi u2)`` then ``r sin(2 pi u2)`` with ``r = sqrt(-2 log(1 - u1))``.
  Output is filled in row-major order; a trailing odd value is discarded.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class Rng:
    """Deterministic random stream built on PCG64."""

    def __init__(self, seed: int = 0):
        seed = int(seed)
        if seed < 0 or seed >= 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k < 1:
            raise ValueError("k must be positive")
        return int(self._gen.integers(0, k))

    def uniform(self) -> float:
        return float(self._gen.random())

    def sample(self, pool: Sequence[int], k: int) -> list[int]:
        """``k`` distinct items of ``pool`` by partial Fisher-Yates."""
        items = list(pool)
        n = len(items)
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} items from a pool of {n}")
        for t in range(k):
            j = t + self.below(n - t)
            items[t], items[j] = items[j], items[t]
        return items[:k]

    def weighted_sample(self, weights: Sequence[float], k: int) -> list[int]:
        """``k`` distinct indices drawn with probability proportional to weight."""
        w = np.array(weights, dtype=np.float64)
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and non-negative")
        if k > np.count_nonzero(w):
            raise ValueError(f"cannot draw {k} items from {np.count_nonzero(w)} positive weights")
        picks: list[int] = []
        for _ in range(k):
            total = w.sum()
            target = self.uniform() * total
            idx = int(np.searchsorted(np.cumsum(w), target, side="right"))
            # guard the top end against rounding in the cumulative sum
            idx = min(idx, len(w) - 1)
            while w[idx] == 0.0:
                idx -= 1
            picks.append(idx)
            w[idx] = 0.0
        return picks

    def normal(self, size: int | tuple[int, ...]) -> np.ndarray:
        """Standard normal variates by Box-Muller with fixed pairing."""
        shape = (size,) if isinstance(size, int) else tuple(size)
        count = math.prod(shape)
        pairs = (count + 1) // 2
        u = self._gen.random(2 * pairs)
        u1, u2 = u[0::2], u[1::2]
        r = np.sqrt(-2.0 * np.log1p(-u1))
        theta = 2.0 * np.pi * u2
        z = np.empty(2 * pairs)
        z[0::2] = r * np.cos(theta)
        z[1::2] = r * np.sin(theta)
        return z[:count].reshape(shape)
