"""CUR assembly and evaluation: core matrix, reconstruction and error."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._validation import check_indices, check_matrix
from .exceptions import DegenerateInputError, DimensionError
from .numkit import _pinv_or_empty

__all__ = [
    "CurDecomposition",
    "core_matrix",
    "reconstruction_error",
    "normalized_error",
    "reconstruct",
    "projected",
]


@dataclass
class CurDecomposition:
    """Selected columns, selected rows and the coupling core ``U``.

    Indices are 0-based. ``core`` has shape ``(len(col_indices),
    len(row_indices))``, so that ``X ~ X[:, cols] @ core @ X[rows, :]``.
    """

    col_indices: list[int]
    row_indices: list[int]
    core: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.col_indices = [int(i) for i in self.col_indices]
        self.row_indices = [int(i) for i in self.row_indices]
        if len(set(self.col_indices)) != len(self.col_indices):
            raise ValueError("duplicate column indices")
        if len(set(self.row_indices)) != len(self.row_indices):
            raise ValueError("duplicate row indices")
        self.core = np.asarray(self.core, dtype=np.float64)
        if self.core.shape != (len(self.col_indices), len(self.row_indices)):
            raise DimensionError(
                f"core shape {self.core.shape} does not match "
                f"({len(self.col_indices)}, {len(self.row_indices)})"
            )

    @property
    def k1(self) -> int:
        return len(self.col_indices)

    @property
    def k2(self) -> int:
        return len(self.row_indices)

    def validate_against(self, shape: tuple[int, int]) -> None:
        """Raise :class:`DimensionError` if the selection does not fit ``shape``."""
        n, m = shape
        if self.k1 > m or self.k2 > n:
            raise DimensionError(
                f"decomposition with {self.k1} columns and {self.k2} rows does not fit shape {shape}"
            )
        try:
            check_indices(self.col_indices, m, name="col_indices")
            check_indices(self.row_indices, n, name="row_indices")
        except IndexError as exc:
            raise DimensionError(f"decomposition does not fit shape {shape}: {exc}") from None


def _prepare(X, cols, rows):
    X = check_matrix(X)
    cols = check_indices(cols, X.shape[1], name="cols")
    rows = check_indices(rows, X.shape[0], name="rows")
    return X, cols, rows


def projected(X: np.ndarray, C: np.ndarray, R: np.ndarray) -> np.ndarray:
    """``C C^+ X R^+ R`` for possibly empty ``C`` or ``R``; no validation."""
    Cp = _pinv_or_empty(C)
    Rp = _pinv_or_empty(R)
    core = (Cp @ X) @ Rp
    return C @ core @ R


def core_matrix(X, cols: Sequence[int], rows: Sequence[int]) -> np.ndarray:
    """Least-squares core ``U = C^+ X R^+`` with ``C = X[:, cols]``, ``R = X[rows, :]``.

    Raises
    ------
    SelectionIndexError
        If an index is out of range or repeated.
    """
    X, cols, rows = _prepare(X, cols, rows)
    C = X[:, cols]
    R = X[rows, :]
    return (_pinv_or_empty(C) @ X) @ _pinv_or_empty(R)


def reconstruction_error(X, cols: Sequence[int], rows: Sequence[int]) -> float:
    """Frobenius error ``||X - C U R||_F`` with the optimal core."""
    X, cols, rows = _prepare(X, cols, rows)
    return _error(X, cols, rows)


def _error(X: np.ndarray, cols: Sequence[int], rows: Sequence[int]) -> float:
    return float(np.linalg.norm(X - projected(X, X[:, cols], X[rows, :])))


def normalized_error(X, cols: Sequence[int], rows: Sequence[int]) -> float:
    """``||X - CUR||_F^2 / ||X||_F^2``.

    Raises
    ------
    DegenerateInputError
        If ``X`` is the zero matrix.
    """
    X, cols, rows = _prepare(X, cols, rows)
    total = float(np.linalg.norm(X))
    if total == 0.0:
        raise DegenerateInputError("normalized error of the zero matrix is undefined")
    return (_error(X, cols, rows) / total) ** 2


def reconstruct(X, dec: CurDecomposition) -> np.ndarray:
    """``C @ U @ R`` using the columns and rows named in ``dec``."""
    X = check_matrix(X)
    dec.validate_against(X.shape)
    return X[:, dec.col_indices] @ dec.core @ X[dec.row_indices, :]


def decompose(X, cols: Sequence[int], rows: Sequence[int]) -> CurDecomposition:
    """Build a :class:`CurDecomposition` for the given selection."""
    X, cols, rows = _prepare(X, cols, rows)
    return CurDecomposition(cols, rows, core_matrix(X, cols, rows))
