"""Two-way spectrum pursuit: joint column and row subset selection.

Each iteration proposes one column replacement and one row replacement.
For the column side the active slot is dropped, the data restricted to the
current row space is projected off the span of the remaining selected
columns, the leading left singular vector of that residual is computed, and
the best-matching actual column takes the slot. The row side mirrors this
with right singular vectors. Whichever proposal yields the lower CUR error
is accepted (ties go to the column) and fresh random slots are drawn.

Defaults differ from a literal reading of the listing in three places, all
switchable through :class:`SolverConfig`:

* ``residual="projected"`` uses ``(I - P_kept) X P_R`` instead of
  ``X - P_kept X P_R``. The latter also contains ``P_kept X (I - P_R)``,
  which lies inside the span of the kept columns and steers the singular
  vector toward redundant picks.
* ``matching_target="null"`` correlates against the data projected off the
  kept columns rather than the raw data, so near-duplicates of kept columns
  score low.
* ``redraw="both"`` redraws both slots after every move. Redrawing only the
  accepted side can leave the losing side parked on the same slot forever.

:meth:`SolverConfig.literal` restores the listing's behaviour.

Draw order on the seeded stream is fixed: initial columns, initial rows,
column slot, row slot, then per iteration the accepted side's slot followed
by the other side's slot when ``redraw="both"``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ._validation import check_counts, check_matrix, nonzero_columns, nonzero_rows
from .cur import CurDecomposition, _error, core_matrix
from .exceptions import ConfigurationError, DegenerateInputError
from .numkit import leading_left_singular_vector, range_basis
from .rng import Rng

__all__ = [
    "SolverConfig",
    "SelectionState",
    "IterationRecord",
    "ConvergenceTrace",
    "column_candidate",
    "row_candidate",
    "solve",
]

logger = logging.getLogger(__name__)

MatchingTarget = Literal["data", "residual", "null"]

EXACT_RTOL = 1e-12
TIE_ATOL = 1e-12
# errors closer than this (relative) are ties; keeps decisions scale-invariant
ERROR_TIE_RTOL = 1e-10
ZERO_NORM = 1e-300


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of a TWSP run.

    ``max_iter`` and ``saturation_window`` default to ``30 * max(k1, k2)``
    and ``4 * max(k1, k2)`` when left as ``None``. A run saturates once the
    best error has improved by less than ``saturation_tol`` (relative) over
    the last ``saturation_window`` iterations.
    """

    k1: int
    k2: int
    seed: int = 0
    max_iter: int | None = None
    saturation_tol: float = 1e-8
    saturation_window: int | None = None
    matching_target: MatchingTarget = "null"
    restarts: int = 1
    residual: Literal["projected", "coupled"] = "projected"
    redraw: Literal["both", "accepted"] = "both"

    @classmethod
    def literal(cls, k1: int, k2: int, **kwargs) -> "SolverConfig":
        """Configuration that follows the published listing step by step."""
        opts = dict(
            matching_target="data", residual="coupled", redraw="accepted",
            saturation_window=max(k1, k2),
        )
        opts.update(kwargs)
        return cls(k1, k2, **opts)

    @property
    def iter_cap(self) -> int:
        return self.max_iter if self.max_iter is not None else 30 * max(self.k1, self.k2)

    @property
    def window(self) -> int:
        if self.saturation_window is not None:
            return self.saturation_window
        return 4 * max(self.k1, self.k2)

    def validate(self, shape: tuple[int, int]) -> None:
        check_counts(self.k1, self.k2, shape)
        if self.iter_cap < 1:
            raise ConfigurationError("max_iter must be at least 1")
        if self.window < 1:
            raise ConfigurationError("saturation_window must be at least 1")
        if self.saturation_tol < 0:
            raise ConfigurationError("saturation_tol must be non-negative")
        if self.matching_target not in ("data", "residual", "null"):
            raise ConfigurationError(f"unknown matching_target {self.matching_target!r}")
        if self.residual not in ("projected", "coupled"):
            raise ConfigurationError(f"unknown residual {self.residual!r}")
        if self.redraw not in ("both", "accepted"):
            raise ConfigurationError(f"unknown redraw {self.redraw!r}")
        if self.restarts < 1:
            raise ConfigurationError("restarts must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")


@dataclass
class SelectionState:
    """Current selection with the active column slot ``i`` and row slot ``j``."""

    s_c: list[int]
    s_r: list[int]
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if len(set(self.s_c)) != len(self.s_c) or len(set(self.s_r)) != len(self.s_r):
            raise ValueError("selections must hold distinct indices")
        if not 0 <= self.i < len(self.s_c) or not 0 <= self.j < len(self.s_r):
            raise ValueError("active slot out of range")

    def transposed(self) -> "SelectionState":
        return SelectionState(list(self.s_r), list(self.s_c), self.j, self.i)


@dataclass(frozen=True)
class IterationRecord:
    """One accepted move. Errors are normalized, ``||X - CUR||_F^2 / ||X||_F^2``."""

    iteration: int
    e_c: float
    e_r: float
    accepted: Literal["column", "row"]
    current_error: float
    best_error: float
    cols: tuple[int, ...]
    rows: tuple[int, ...]


@dataclass
class ConvergenceTrace:
    seed: int
    initial_error: float
    records: list[IterationRecord] = field(default_factory=list)
    reason: Literal["saturated", "max_iter"] = "max_iter"
    restart: int = 0

    @property
    def n_iter(self) -> int:
        return len(self.records)

    @property
    def best_errors(self) -> np.ndarray:
        return np.array([r.best_error for r in self.records])

    @property
    def final_error(self) -> float:
        return self.records[-1].best_error if self.records else self.initial_error


def _candidate(
    X: np.ndarray,
    selected: list[int],
    other: list[int],
    slot: int,
    cfg: SolverConfig,
    col_norms: np.ndarray,
    x_norm: float,
    current: float | None = None,
) -> tuple[int, float]:
    """Column-oriented proposal; rows are handled by passing ``X.T``."""
    removed = selected[slot]
    kept = selected[:slot] + selected[slot + 1:]
    Qr = range_basis(X[other, :].T)
    Qc = range_basis(X[:, kept])
    XQr = X @ Qr
    # F = (I - P_kept) X Qr, so (I - P_kept) X P_R = F Qr^T
    F = XQr - Qc @ (Qc.T @ XQr)
    if cfg.residual == "projected":
        residual = F
    else:
        residual = X - (XQr - F) @ Qr.T
    if np.linalg.norm(residual) <= EXACT_RTOL * x_norm:
        if current is None:
            current = _error(X, selected, other)
        return removed, current
    c = leading_left_singular_vector(residual).u

    if cfg.matching_target == "data":
        T = X
    elif cfg.matching_target == "null":
        T = X - Qc @ (Qc.T @ X)
    elif cfg.residual == "projected":
        T = F @ Qr.T
    else:
        T = residual
    norms = col_norms if T is X else np.linalg.norm(T, axis=0)
    usable = (col_norms > ZERO_NORM) & (norms > ZERO_NORM)
    if T is not X:
        usable &= norms > EXACT_RTOL * x_norm
    score = np.full(X.shape[1], -np.inf)
    score[usable] = np.abs(T[:, usable].T @ c) / norms[usable]
    score[kept] = -np.inf
    if not np.isfinite(score).any():
        if current is None:
            current = _error(X, selected, other)
        return removed, current
    best = float(score.max())
    # lowest index among numerically tied maxima
    pick = int(np.flatnonzero(score >= best - TIE_ATOL)[0])
    trial = list(selected)
    trial[slot] = pick
    return pick, _error(X, trial, other)


def column_candidate(X, state: SelectionState, cfg: SolverConfig) -> tuple[int, float]:
    """Best replacement for column slot ``state.i`` and the resulting CUR error.

    Returns
    -------
    index : int
        Replacement column (may equal the removed one).
    error : float
        ``||X - CUR||_F`` with the slot replaced.
    """
    X = check_matrix(X)
    return _candidate(
        X, list(state.s_c), list(state.s_r), state.i, cfg,
        np.linalg.norm(X, axis=0), float(np.linalg.norm(X)),
    )


def row_candidate(X, state: SelectionState, cfg: SolverConfig) -> tuple[int, float]:
    """Best replacement for row slot ``state.j``; mirror of :func:`column_candidate`."""
    X = check_matrix(X)
    return _candidate(
        X.T, list(state.s_r), list(state.s_c), state.j, cfg,
        np.linalg.norm(X, axis=1), float(np.linalg.norm(X)),
    )


def _lower(a: float, b: float) -> bool:
    """``a`` beats ``b`` by more than rounding noise."""
    return a < b - ERROR_TIE_RTOL * max(a, b)


def _run(
    X: np.ndarray, cfg: SolverConfig, seed: int, nz_cols, nz_rows, restart: int
) -> tuple[list[int], list[int], float, ConvergenceTrace]:
    rng = Rng(seed)
    s_c = rng.sample(nz_cols, cfg.k1)
    s_r = rng.sample(nz_rows, cfg.k2)
    i = rng.below(cfg.k1)
    j = rng.below(cfg.k2)

    Xt = X.T
    col_norms = np.linalg.norm(X, axis=0)
    row_norms = np.linalg.norm(X, axis=1)
    x_norm = float(np.linalg.norm(X))
    scale = x_norm**2

    err = _error(X, s_c, s_r)
    best = err
    best_sel = (list(s_c), list(s_r))
    trace = ConvergenceTrace(seed=seed, initial_error=err**2 / scale, restart=restart)
    history = [err]
    window, tol = cfg.window, cfg.saturation_tol
    both = cfg.redraw == "both"

    for it in range(1, cfg.iter_cap + 1):
        m, e_c = _candidate(X, s_c, s_r, i, cfg, col_norms, x_norm, err)
        n, e_r = _candidate(Xt, s_r, s_c, j, cfg, row_norms, x_norm, err)
        if not _lower(e_r, e_c):
            s_c[i] = m
            err, accepted = e_c, "column"
            i = rng.below(cfg.k1)
            if both:
                j = rng.below(cfg.k2)
        else:
            s_r[j] = n
            err, accepted = e_r, "row"
            j = rng.below(cfg.k2)
            if both:
                i = rng.below(cfg.k1)
        if _lower(err, best):
            best = err
            best_sel = (list(s_c), list(s_r))
        history.append(best)
        trace.records.append(
            IterationRecord(
                iteration=it,
                e_c=e_c**2 / scale,
                e_r=e_r**2 / scale,
                accepted=accepted,
                current_error=err**2 / scale,
                best_error=best**2 / scale,
                cols=tuple(s_c),
                rows=tuple(s_r),
            )
        )
        if it >= window:
            prev = history[it - window]
            if best == 0.0 or prev - best < tol * prev:
                trace.reason = "saturated"
                break
    logger.debug("seed %d: %d iterations, %s", seed, trace.n_iter, trace.reason)
    return best_sel[0], best_sel[1], best, trace


def solve(X, cfg: SolverConfig) -> tuple[CurDecomposition, ConvergenceTrace]:
    """Run TWSP and return the best selection seen with its core matrix.

    With ``cfg.restarts > 1`` independent runs use seeds ``cfg.seed``,
    ``cfg.seed + 1``, ... and the lowest error wins (earliest restart on
    ties). The trace returned is the winning run's.

    Raises
    ------
    ConfigurationError
        If ``k1`` or ``k2`` exceed the number of non-zero columns or rows.
    """
    X = check_matrix(X)
    cfg.validate(X.shape)
    nz_cols = nonzero_columns(X).tolist()
    nz_rows = nonzero_rows(X).tolist()
    if cfg.k1 > len(nz_cols) or cfg.k2 > len(nz_rows):
        raise ConfigurationError(
            f"need {cfg.k1} non-zero columns and {cfg.k2} non-zero rows, "
            f"have {len(nz_cols)} and {len(nz_rows)}"
        )
    if not nz_cols:
        raise DegenerateInputError("X is the zero matrix")

    winner = None
    for r in range(cfg.restarts):
        if cfg.seed + r >= 2**64:
            raise ConfigurationError("seed + restarts overflows 64 bits")
        result = _run(X, cfg, cfg.seed + r, nz_cols, nz_rows, r)
        if winner is None or _lower(result[2], winner[2]):
            winner = result
    cols, rows, _, trace = winner
    return CurDecomposition(cols, rows, core_matrix(X, cols, rows)), trace
