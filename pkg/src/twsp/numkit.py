"""Dense linear-algebra primitives used by every selector.

The pseudo-inverse and the full singular spectrum are delegated to LAPACK
through :mod:`numpy.linalg`. The leading singular pair, which the pursuit
loops call twice per iteration, is computed by power iteration on the Gram
matrix of the smaller dimension so that its cost stays linear in the larger
one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix
from .exceptions import DegenerateInputError

__all__ = [
    "SingularTriplet",
    "pseudo_inverse",
    "leading_left_singular_vector",
    "leading_right_singular_vector",
    "singular_values",
    "fro_norm",
    "auto_rank_tol",
    "range_basis",
]

POWER_RTOL = 1e-12
POWER_MAX_ITER = 1000
SIGN_FLOOR = 1e-12


@dataclass(frozen=True)
class SingularTriplet:
    """Leading singular pair ``A v = sigma u`` with unit ``u`` and ``v``."""

    u: np.ndarray
    sigma: float
    v: np.ndarray
    n_iter: int = 0

    def transpose(self) -> "SingularTriplet":
        return SingularTriplet(u=self.v, sigma=self.sigma, v=self.u, n_iter=self.n_iter)


def auto_rank_tol(A: np.ndarray, s: np.ndarray | None = None) -> float:
    """Default cut-off ``max(rows, cols) * eps * sigma_max``."""
    if s is None:
        s = np.linalg.svd(A, compute_uv=False)
    smax = float(s[0]) if s.size else 0.0
    return max(A.shape) * np.finfo(np.float64).eps * smax


def pseudo_inverse(A, rank_tol: float | str = "auto") -> np.ndarray:
    """Moore-Penrose pseudo-inverse via a thin SVD.

    Singular values ``<= rank_tol`` are treated as zero. With ``"auto"`` the
    tolerance is ``max(rows, cols) * eps * sigma_max(A)``.

    Raises
    ------
    DimensionError
        If ``A`` is empty or not 2-D.
    """
    A = check_matrix(A, name="A")
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    if isinstance(rank_tol, str):
        if rank_tol != "auto":
            raise ValueError(f"rank_tol must be a float or 'auto', got {rank_tol!r}")
        tol = auto_rank_tol(A, s)
    else:
        tol = float(rank_tol)
        if tol < 0:
            raise ValueError("rank_tol must be non-negative")
    keep = s > tol
    if not np.any(keep):
        return np.zeros((A.shape[1], A.shape[0]))
    return (Vt[keep].T / s[keep]) @ U[:, keep].T


def _pinv_or_empty(A: np.ndarray) -> np.ndarray:
    # Zero-width selections appear when k1 or k2 equals one and the single
    # slot is removed; their pseudo-inverse is the empty transpose.
    if A.shape[0] == 0 or A.shape[1] == 0:
        return np.zeros((A.shape[1], A.shape[0]))
    return pseudo_inverse(A)


def range_basis(A: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the column space of ``A`` (auto rank tolerance).

    Uses the same cut-off as :func:`pseudo_inverse`, so ``Q @ Q.T`` equals
    ``A @ pseudo_inverse(A)``. A zero-width ``A`` gives a zero-width basis.
    """
    if A.shape[1] == 0 or A.shape[0] == 0:
        return np.zeros((A.shape[0], 0))
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    return U[:, s > auto_rank_tol(A, s)]


def _sign_fix(x: np.ndarray) -> float:
    significant = np.flatnonzero(np.abs(x) > SIGN_FLOOR)
    if significant.size and x[significant[0]] < 0:
        return -1.0
    return 1.0


def _power_iteration(G: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, int]:
    """Dominant eigenvector of the PSD matrix ``G`` starting from unit ``x``.

    Stops when successive singular-value estimates ``sqrt(x' G x)`` agree to
    ``POWER_RTOL`` relative, or after ``POWER_MAX_ITER`` steps.
    """
    sigma_old = -1.0
    n_iter = 0
    for n_iter in range(1, POWER_MAX_ITER + 1):
        y = G @ x
        rq = float(x @ y)
        sigma = np.sqrt(max(rq, 0.0))
        norm_y = np.linalg.norm(y)
        if norm_y == 0.0:
            break
        x = y / norm_y
        if abs(sigma - sigma_old) < POWER_RTOL * sigma:
            break
        sigma_old = sigma
    return x, n_iter


def leading_left_singular_vector(A) -> SingularTriplet:
    """Leading singular triplet of ``A`` with the sign fixed on ``u``.

    The first entry of ``u`` with magnitude above ``1e-12`` is made
    non-negative. Iteration starts deterministically from the largest-norm
    column (or row, when iterating on the right side), lowest index on ties.

    Raises
    ------
    DegenerateInputError
        If every entry of ``A`` is zero.
    """
    A = check_matrix(A, name="A")
    amax = float(np.max(np.abs(A)))
    if amax == 0.0:
        raise DegenerateInputError("leading singular vector of an all-zero matrix")
    As = A / amax
    n, m = As.shape
    if n <= m:
        G = As @ As.T
        start = As[:, int(np.argmax(np.linalg.norm(As, axis=0)))]
        u, n_iter = _power_iteration(G, start / np.linalg.norm(start))
        v = As.T @ u
        v /= np.linalg.norm(v)
    else:
        G = As.T @ As
        start = As[int(np.argmax(np.linalg.norm(As, axis=1))), :]
        v, n_iter = _power_iteration(G, start / np.linalg.norm(start))
    # polish so that A v = sigma u holds to rounding
    u = As @ v
    sigma_s = float(np.linalg.norm(u))
    u /= sigma_s
    sign = _sign_fix(u)
    return SingularTriplet(u=sign * u, sigma=sigma_s * amax, v=sign * v, n_iter=n_iter)


def leading_right_singular_vector(A) -> SingularTriplet:
    """Leading singular triplet with the sign convention applied to ``v``."""
    A = check_matrix(A, name="A")
    return leading_left_singular_vector(A.T).transpose()


def singular_values(A) -> np.ndarray:
    """Full singular spectrum in non-increasing order."""
    A = check_matrix(A, name="A")
    s = np.linalg.svd(A, compute_uv=False)
    return np.sort(np.abs(s))[::-1]


def fro_norm(A) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(A, dtype=np.float64)))
