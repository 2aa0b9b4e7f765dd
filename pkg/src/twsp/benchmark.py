"""Benchmark harness: run selectors on a matrix and collect result records."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .baselines import brute_force_cur, leverage_cur, random_cur, sp_independent_cur
from .cur import CurDecomposition, normalized_error
from .solver import ConvergenceTrace, SolverConfig, solve

__all__ = ["METHODS", "ResultRecord", "run_method", "sweep", "BENCHMARK_FIELDS", "CONVERGENCE_FIELDS", "trace_rows"]

METHODS = ("twsp", "sp", "leverage", "random", "brute")
BENCHMARK_FIELDS = ("method", "k1", "k2", "seed", "normalized_error", "ms", "iterations")
CONVERGENCE_FIELDS = ("seed", "iteration", "e_c", "e_r", "accepted", "current_error", "best_error")


@dataclass
class ResultRecord:
    method: str
    k1: int
    k2: int
    seed: int
    normalized_error: float
    ms: float
    iterations: int
    termination: str = ""

    def __post_init__(self):
        if not 0.0 <= self.normalized_error <= 1.0 + 1e-12:
            raise ValueError(f"normalized error {self.normalized_error} outside [0, 1]")

    def as_row(self) -> dict:
        row = asdict(self)
        row.pop("termination")
        return row


def run_method(
    X: np.ndarray,
    method: str,
    k1: int,
    k2: int,
    seed: int = 0,
    *,
    max_iter: int | None = None,
    saturation_tol: float = 1e-8,
    saturation_window: int | None = None,
    matching_target: str | None = None,
    restarts: int = 1,
    residual: str = "projected",
    redraw: str = "both",
    leverage_rank: int | None = None,
) -> tuple[CurDecomposition, ResultRecord, ConvergenceTrace | None]:
    """Run one selector and time it.

    ``matching_target=None`` keeps each method's own default (``null`` for
    TWSP, ``residual`` for spectrum pursuit). ``residual`` and ``redraw`` only
    affect TWSP.
    """
    trace = None
    iterations = 0
    termination = ""
    start = time.perf_counter()
    if method == "twsp":
        cfg = SolverConfig(
            k1, k2, seed=seed, max_iter=max_iter, saturation_tol=saturation_tol,
            saturation_window=saturation_window,
            matching_target=matching_target or "null", restarts=restarts,
            residual=residual, redraw=redraw,
        )
        dec, trace = solve(X, cfg)
        iterations, termination = trace.n_iter, trace.reason
    elif method == "sp":
        dec = sp_independent_cur(
            X, k1, k2, seed=seed, max_iter=max_iter,
            matching_target=matching_target or "residual",
        )
    elif method == "leverage":
        dec = leverage_cur(X, k1, k2, r=leverage_rank, seed=seed)
    elif method == "random":
        dec = random_cur(X, k1, k2, seed=seed)
    elif method == "brute":
        dec, _ = brute_force_cur(X, k1, k2)
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    ms = (time.perf_counter() - start) * 1e3
    err = normalized_error(X, dec.col_indices, dec.row_indices)
    record = ResultRecord(method, k1, k2, seed, err, ms, iterations, termination)
    return dec, record, trace


def sweep(
    matrices: Iterable[tuple[int, np.ndarray]],
    methods: Sequence[str],
    ks: Sequence[int | tuple[int, int]],
    **kwargs,
) -> list[tuple[ResultRecord, CurDecomposition]]:
    """Run every (method, k) cell on every ``(seed, X)`` pair.

    Output is sorted by ``(method, k1, k2, seed)``.
    """
    out = []
    for seed, X in matrices:
        for k in ks:
            k1, k2 = (k, k) if isinstance(k, int) else k
            for method in methods:
                dec, rec, _ = run_method(X, method, k1, k2, seed, **kwargs)
                out.append((rec, dec))
    out.sort(key=lambda pair: (pair[0].method, pair[0].k1, pair[0].k2, pair[0].seed))
    return out


def trace_rows(trace: ConvergenceTrace) -> list[dict]:
    """Flatten a trace into rows with :data:`CONVERGENCE_FIELDS`."""
    return [
        {
            "seed": trace.seed,
            "iteration": r.iteration,
            "e_c": r.e_c,
            "e_r": r.e_r,
            "accepted": r.accepted,
            "current_error": r.current_error,
            "best_error": r.best_error,
        }
        for r in trace.records
    ]
