"""scikit-learn compatible wrapper around the CUR selectors."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_matrix
from .benchmark import METHODS, run_method
from .cur import normalized_error
from .exceptions import DimensionError


class CURSelector(TransformerMixin, BaseEstimator):
    """Joint column/row subset selection with a CUR core.

    The matrix passed to :meth:`fit` is treated as a whole (columns are data
    points, rows are features, as in ``X ~ C U R``); no sample/feature
    convention is imposed.

    Parameters
    ----------
    k1 : int
        Number of columns to select.
    k2 : int
        Number of rows to select.
    method : {"twsp", "sp", "leverage", "random", "brute"}
        Selector. ``"twsp"`` is two-way spectrum pursuit.
    seed : int
        Seed of the random stream.
    max_iter, tol, window, restarts, matching_target
        Solver controls; ``None`` keeps the method's default.
    residual : {"projected", "coupled"}
        TWSP residual used for the singular-vector step.
    redraw : {"both", "accepted"}
        Which slots TWSP redraws after an iteration.

    Attributes
    ----------
    col_indices_ : ndarray of int
    row_indices_ : ndarray of int
    core_ : ndarray of shape (k1, k2)
    error_ : float
        Normalized error ``||X - CUR||_F^2 / ||X||_F^2`` on the fitted matrix.
    n_iter_ : int
    trace_ : ConvergenceTrace or None

    Examples
    --------
    >>> import numpy as np
    >>> X = np.outer([1.0, 2.0, 3.0], [1.0, -1.0, 0.5, 2.0])
    >>> sel = CURSelector(k1=1, k2=1).fit(X)
    >>> bool(sel.error_ < 1e-12)
    True
    """

    def __init__(
        self,
        k1=2,
        k2=2,
        method="twsp",
        seed=0,
        max_iter=None,
        tol=1e-8,
        window=None,
        restarts=1,
        matching_target=None,
        residual="projected",
        redraw="both",
    ):
        self.k1 = k1
        self.k2 = k2
        self.method = method
        self.seed = seed
        self.max_iter = max_iter
        self.tol = tol
        self.window = window
        self.restarts = restarts
        self.matching_target = matching_target
        self.residual = residual
        self.redraw = redraw

    def fit(self, X, y=None):
        X = check_matrix(X)
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        dec, record, trace = run_method(
            X, self.method, self.k1, self.k2, self.seed,
            max_iter=self.max_iter, saturation_tol=self.tol,
            saturation_window=self.window, matching_target=self.matching_target,
            restarts=self.restarts, residual=self.residual, redraw=self.redraw,
        )
        self.col_indices_ = np.asarray(dec.col_indices)
        self.row_indices_ = np.asarray(dec.row_indices)
        self.core_ = dec.core
        self.error_ = record.normalized_error
        self.n_iter_ = record.iterations
        self.trace_ = trace
        self.shape_fit_ = X.shape
        return self

    def _check_shape(self, X):
        X = check_matrix(X)
        if X.shape != self.shape_fit_:
            raise DimensionError(f"expected shape {self.shape_fit_}, got {X.shape}")
        return X

    def transform(self, X):
        """Selected columns ``X[:, col_indices_]``."""
        check_is_fitted(self, "col_indices_")
        return self._check_shape(X)[:, self.col_indices_]

    def reconstruct(self, X):
        """``C @ core_ @ R`` built from ``X`` with the fitted selection and core."""
        check_is_fitted(self, "col_indices_")
        X = self._check_shape(X)
        return X[:, self.col_indices_] @ self.core_ @ X[self.row_indices_, :]

    def score(self, X, y=None):
        """Negative normalized CUR error of ``X`` under the fitted selection."""
        check_is_fitted(self, "col_indices_")
        X = self._check_shape(X)
        return -normalized_error(X, self.col_indices_, self.row_indices_)
