"""Input validation helpers shared by the solvers, estimators and CLI."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .exceptions import ConfigurationError, DimensionError, SelectionIndexError


def check_matrix(A, *, name: str = "X", copy: bool = False) -> np.ndarray:
    """Return ``A`` as a finite, non-empty 2-D float64 array.

    Row-major (C-contiguous) layout is enforced so that serialisation and
    reductions run in a fixed order.
    """
    arr = np.array(A, dtype=np.float64, order="C", copy=copy or None)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def check_indices(indices: Iterable[int], bound: int, *, name: str = "indices") -> list[int]:
    """Validate a list of distinct 0-based indices below ``bound``."""
    out = [int(i) for i in indices]
    if len(out) == 0:
        raise SelectionIndexError(f"{name} must not be empty")
    for i in out:
        if i < 0 or i >= bound:
            raise SelectionIndexError(f"{name} entry {i} outside [0, {bound})")
    if len(set(out)) != len(out):
        raise SelectionIndexError(f"{name} contains duplicates: {out}")
    return out


def nonzero_columns(X: np.ndarray, floor: float = 1e-300) -> np.ndarray:
    """Indices of columns of ``X`` whose 2-norm exceeds ``floor``."""
    return np.flatnonzero(np.linalg.norm(X, axis=0) > floor)


def nonzero_rows(X: np.ndarray, floor: float = 1e-300) -> np.ndarray:
    return np.flatnonzero(np.linalg.norm(X, axis=1) > floor)


def check_counts(k1: int, k2: int, shape: Sequence[int]) -> None:
    n, m = shape
    if not 1 <= k1 <= m:
        raise ConfigurationError(f"k1={k1} must lie in [1, {m}]")
    if not 1 <= k2 <= n:
        raise ConfigurationError(f"k2={k2} must lie in [1, {n}]")
