"""Comparison selectors: one-way spectrum pursuit, leverage-score sampling,
uniform random selection and an exhaustive oracle."""

from __future__ import annotations

import itertools
import math
from enum import Enum
from typing import Literal

import numpy as np

from ._validation import check_counts, check_matrix, nonzero_columns, nonzero_rows
from .cur import CurDecomposition, core_matrix, reconstruction_error
from .exceptions import CombinatorialGuardError, ConfigurationError
from .numkit import _pinv_or_empty, leading_left_singular_vector
from .rng import Rng

__all__ = [
    "BaselineKind",
    "column_projection_error",
    "sp_select",
    "sp_independent_cur",
    "leverage_scores",
    "leverage_cur",
    "random_cur",
    "brute_force_cur",
]

BRUTE_FORCE_LIMIT = 10**6
TIE_ATOL = 1e-12


class BaselineKind(str, Enum):
    SP_INDEPENDENT = "sp_independent"
    LEVERAGE = "leverage"
    RANDOM = "random"
    BRUTE_FORCE = "brute_force"


def column_projection_error(X, cols) -> float:
    """``||X - C C^+ X||_F`` for ``C = X[:, cols]``."""
    X = check_matrix(X)
    C = X[:, list(cols)]
    return float(np.linalg.norm(X - C @ (_pinv_or_empty(C) @ X)))


def _nonzero_or_fail(idx: np.ndarray, k: int, what: str) -> list[int]:
    if k > len(idx):
        raise ConfigurationError(f"need {k} non-zero {what}, have {len(idx)}")
    return idx.tolist()


def sp_select(
    X,
    k: int,
    seed: int = 0,
    max_iter: int | None = None,
    matching_target: Literal["data", "residual"] = "residual",
    saturation_tol: float = 1e-8,
    saturation_window: int | None = None,
) -> list[int]:
    """Select ``k`` columns of ``X`` by spectrum pursuit.

    Slots are revised cyclically. For slot ``t`` the other selected columns
    are normalised, ``X`` is projected onto the orthogonal complement of their
    span, and the column best aligned with the leading left singular vector
    of that residual takes the slot. Residual columns are matched by default;
    ``matching_target="data"`` matches normalised columns of ``X`` instead.

    Returns the selection with the lowest column-projection error seen.
    """
    X = check_matrix(X)
    if not 1 <= k <= X.shape[1]:
        raise ConfigurationError(f"k={k} must lie in [1, {X.shape[1]}]")
    if matching_target not in ("data", "residual"):
        raise ConfigurationError(f"unknown matching_target {matching_target!r}")
    pool = _nonzero_or_fail(nonzero_columns(X), k, "columns")
    cap = 30 * k if max_iter is None else max_iter
    window = k if saturation_window is None else saturation_window

    rng = Rng(seed)
    S = rng.sample(pool, k)
    col_norms = np.linalg.norm(X, axis=0)
    x_norm = float(np.linalg.norm(X))
    best_err = column_projection_error(X, S)
    best_sel = list(S)
    history = [best_err]

    for it in range(cap):
        slot = it % k
        kept = S[:slot] + S[slot + 1:]
        Uk = X[:, kept] / col_norms[kept]
        E = X - Uk @ (_pinv_or_empty(Uk) @ X)
        if np.linalg.norm(E) > 1e-12 * x_norm:
            u = leading_left_singular_vector(E).u
            if matching_target == "residual":
                norms = np.linalg.norm(E, axis=0)
                corr = np.abs(E.T @ u)
                usable = (norms > 1e-12 * x_norm) & (col_norms > 1e-300)
            else:
                norms = col_norms
                corr = np.abs(X.T @ u)
                usable = col_norms > 1e-300
            score = np.full(X.shape[1], -np.inf)
            score[usable] = corr[usable] / norms[usable]
            score[kept] = -np.inf
            if np.isfinite(score).any():
                top = float(score.max())
                S[slot] = int(np.flatnonzero(score >= top - TIE_ATOL)[0])
        err = column_projection_error(X, S)
        if err < best_err:
            best_err, best_sel = err, list(S)
        history.append(best_err)
        if it + 1 >= window:
            prev = history[it + 1 - window]
            if best_err == 0.0 or prev - best_err < saturation_tol * prev:
                break
    return best_sel


def sp_independent_cur(
    X, k1: int, k2: int, seed: int = 0, max_iter: int | None = None,
    matching_target: Literal["data", "residual"] = "residual",
) -> CurDecomposition:
    """Columns by spectrum pursuit on ``X``, rows by spectrum pursuit on ``X.T``."""
    X = check_matrix(X)
    check_counts(k1, k2, X.shape)
    cols = sp_select(X, k1, seed=seed, max_iter=max_iter, matching_target=matching_target)
    rows = sp_select(X.T, k2, seed=seed, max_iter=max_iter, matching_target=matching_target)
    return CurDecomposition(cols, rows, core_matrix(X, cols, rows))


def leverage_scores(X, r: int) -> tuple[np.ndarray, np.ndarray]:
    """Rank-``r`` leverage-score distributions over columns and rows.

    Column ``j`` gets ``||V_r[j, :]||^2 / r`` and row ``i`` gets
    ``||U_r[i, :]||^2 / r`` from the top-``r`` singular vectors.
    """
    X = check_matrix(X)
    if not 1 <= r <= min(X.shape):
        raise ConfigurationError(f"r={r} must lie in [1, {min(X.shape)}]")
    U, _, Vt = np.linalg.svd(X, full_matrices=False)
    col = np.sum(Vt[:r] ** 2, axis=0)
    row = np.sum(U[:, :r] ** 2, axis=1)
    return col / col.sum(), row / row.sum()


def _weighted_pick(rng: Rng, probs: np.ndarray, pool: list[int], k: int) -> list[int]:
    w = np.zeros_like(probs)
    w[pool] = probs[pool]
    positive = int(np.count_nonzero(w))
    picks = rng.weighted_sample(w, min(k, positive))
    if len(picks) < k:
        # leverage mass concentrated on fewer than k indices; top up uniformly
        rest = [i for i in pool if i not in set(picks)]
        picks += rng.sample(rest, k - len(picks))
    return picks


def leverage_cur(X, k1: int, k2: int, r: int | None = None, seed: int = 0) -> CurDecomposition:
    """Sample columns then rows without replacement by leverage score.

    ``r`` defaults to ``min(k1, k2)``.
    """
    X = check_matrix(X)
    check_counts(k1, k2, X.shape)
    r = min(k1, k2) if r is None else r
    col_p, row_p = leverage_scores(X, r)
    pool_c = _nonzero_or_fail(nonzero_columns(X), k1, "columns")
    pool_r = _nonzero_or_fail(nonzero_rows(X), k2, "rows")
    rng = Rng(seed)
    cols = _weighted_pick(rng, col_p, pool_c, k1)
    rows = _weighted_pick(rng, row_p, pool_r, k2)
    return CurDecomposition(cols, rows, core_matrix(X, cols, rows))


def random_cur(X, k1: int, k2: int, seed: int = 0) -> CurDecomposition:
    """Uniform selection without replacement over non-zero columns and rows."""
    X = check_matrix(X)
    check_counts(k1, k2, X.shape)
    rng = Rng(seed)
    cols = rng.sample(_nonzero_or_fail(nonzero_columns(X), k1, "columns"), k1)
    rows = rng.sample(_nonzero_or_fail(nonzero_rows(X), k2, "rows"), k2)
    return CurDecomposition(cols, rows, core_matrix(X, cols, rows))


def brute_force_cur(
    X, k1: int, k2: int, limit: int = BRUTE_FORCE_LIMIT
) -> tuple[CurDecomposition, float]:
    """Exhaustive minimiser of ``||X - CUR||_F`` over all index subsets.

    Subsets are visited in lexicographic order (columns, then rows) and only
    strict improvements replace the incumbent, so ties resolve to the
    lexicographically smallest pair.

    Raises
    ------
    CombinatorialGuardError
        If ``C(M, k1) * C(N, k2)`` exceeds ``limit``.
    """
    X = check_matrix(X)
    check_counts(k1, k2, X.shape)
    n, m = X.shape
    count = math.comb(m, k1) * math.comb(n, k2)
    if count > limit:
        raise CombinatorialGuardError(
            f"C({m},{k1}) * C({n},{k2}) = {count} subsets exceeds the limit of {limit}"
        )
    row_factors = []
    for rows in itertools.combinations(range(n), k2):
        R = X[list(rows), :]
        row_factors.append((rows, _pinv_or_empty(R), R))

    # improvements below rounding noise do not displace the lexicographic incumbent
    slack = TIE_ATOL * float(np.linalg.norm(X))
    best = (math.inf, None, None)
    for cols in itertools.combinations(range(m), k1):
        C = X[:, list(cols)]
        PcX = C @ (_pinv_or_empty(C) @ X)
        for rows, Rp, R in row_factors:
            err = float(np.linalg.norm(X - (PcX @ Rp) @ R))
            if err < best[0] - slack:
                best = (err, cols, rows)
    _, cols, rows = best
    dec = CurDecomposition(list(cols), list(rows), core_matrix(X, cols, rows))
    return dec, reconstruction_error(X, cols, rows)
