"""Seeded synthetic matrices: Gaussian low-rank signal plus Gaussian noise."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import Rng

__all__ = ["SynthSpec", "low_rank_plus_noise", "DEFAULT_NOISE_RATIO"]

DEFAULT_NOISE_RATIO = 0.1


@dataclass(frozen=True)
class SynthSpec:
    """Shape, intrinsic rank, noise level and seed of a synthetic matrix.

    When ``noise_sigma`` is ``None`` it is set to ``0.1 * sqrt(rank)``, which
    makes the expected noise-to-signal Frobenius ratio 0.1 (the signal
    ``A B^T`` has expected squared norm ``n * m * rank``).
    """

    n: int
    m: int
    rank: int
    noise_sigma: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        if not 1 <= self.rank <= min(self.n, self.m):
            raise ValueError(f"rank must lie in [1, {min(self.n, self.m)}]")
        if self.noise_sigma is not None and self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")

    @property
    def sigma(self) -> float:
        if self.noise_sigma is None:
            return DEFAULT_NOISE_RATIO * math.sqrt(self.rank)
        return float(self.noise_sigma)

    @classmethod
    def with_noise_ratio(cls, n: int, m: int, rank: int, ratio: float, seed: int = 0) -> "SynthSpec":
        """Spec whose expected ``||noise||_F / ||A B^T||_F`` equals ``ratio``."""
        return cls(n, m, rank, ratio * math.sqrt(rank), seed)


def low_rank_plus_noise(spec: SynthSpec) -> np.ndarray:
    """``A @ B.T + sigma * G`` with standard normal ``A`` (n x r), ``B`` (m x r), ``G`` (n x m).

    Factors are drawn from ``Rng(spec.seed)`` in the order A, B, G, each
    filled row-major by one Box-Muller call.
    """
    rng = Rng(spec.seed)
    A = rng.normal((spec.n, spec.rank))
    B = rng.normal((spec.m, spec.rank))
    G = rng.normal((spec.n, spec.m))
    X = A @ B.T
    if spec.sigma > 0:
        X += spec.sigma * G
    return X
