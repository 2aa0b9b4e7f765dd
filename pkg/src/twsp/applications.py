"""Uses of the CUR core matrix: per-sensor channel assignment and
cross-class kernels for supervised sample selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._validation import check_matrix
from .exceptions import ConfigurationError, DimensionError

__all__ = ["ChannelAssignment", "assign_top_f", "cross_class_kernel", "one_vs_all_kernels"]


@dataclass(frozen=True)
class ChannelAssignment:
    """For each labelled core row, the ``f`` column labels of largest ``|U|``.

    ``picks[r]`` lists ``(column_label, u_value)`` pairs in descending order
    of magnitude for the row labelled ``r``.
    """

    f: int
    picks: dict[int, list[tuple[int, float]]]

    def rows(self):
        """Yield ``(row_label, col_label, u_value, rank)`` with 0-based rank."""
        for row_label, entries in self.picks.items():
            for rank, (col_label, value) in enumerate(entries):
                yield row_label, col_label, value, rank


def assign_top_f(
    core,
    f: int,
    row_ids: Sequence[int] | None = None,
    col_ids: Sequence[int] | None = None,
) -> ChannelAssignment:
    """Pick the ``f`` largest-magnitude entries of every row of ``core``.

    Ties in magnitude go to the lower column position. ``row_ids`` and
    ``col_ids`` relabel the axes, e.g. with the selected row and column
    indices of a decomposition; they default to positions.

    Examples
    --------
    >>> assign_top_f([[3.0, -5.0, 1.0]], 2).picks[0]
    [(1, -5.0), (0, 3.0)]
    """
    U = check_matrix(core, name="core")
    k_rows, k_cols = U.shape
    if not 1 <= f <= k_cols:
        raise ConfigurationError(f"f={f} must lie in [1, {k_cols}]")
    row_ids = list(range(k_rows)) if row_ids is None else [int(r) for r in row_ids]
    col_ids = list(range(k_cols)) if col_ids is None else [int(c) for c in col_ids]
    if len(row_ids) != k_rows or len(col_ids) != k_cols:
        raise DimensionError("row_ids/col_ids must match the core's shape")

    picks: dict[int, list[tuple[int, float]]] = {}
    for r, label in enumerate(row_ids):
        # stable sort on -|u| keeps lower positions first among equal magnitudes
        order = np.argsort(-np.abs(U[r]), kind="stable")[:f]
        picks[label] = [(col_ids[c], float(U[r, c])) for c in order]
    return ChannelAssignment(f=f, picks=picks)


def cross_class_kernel(X1, X2) -> np.ndarray:
    """``X2.T @ X1``: columns index class-1 samples, rows index class-2 samples.

    Both inputs hold one sample per column with a shared feature dimension.
    """
    X1 = check_matrix(X1, name="X1")
    X2 = check_matrix(X2, name="X2")
    if X1.shape[0] != X2.shape[0]:
        raise DimensionError(
            f"feature dimensions differ: {X1.shape[0]} vs {X2.shape[0]}"
        )
    return X2.T @ X1


def one_vs_all_kernels(classes: Sequence) -> list[np.ndarray]:
    """One kernel per class against the concatenation of all other classes."""
    mats = [check_matrix(c, name=f"class {i}") for i, c in enumerate(classes)]
    if len(mats) < 2:
        raise ConfigurationError("one-vs-all needs at least two classes")
    kernels = []
    for i, own in enumerate(mats):
        rest = np.hstack([m for j, m in enumerate(mats) if j != i])
        kernels.append(cross_class_kernel(own, rest))
    return kernels
