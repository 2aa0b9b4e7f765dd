import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twsp.cur import (
    CurDecomposition,
    core_matrix,
    decompose,
    normalized_error,
    reconstruct,
    reconstruction_error,
)
from twsp.exceptions import DegenerateInputError, DimensionError, SelectionIndexError
from twsp.numkit import pseudo_inverse, singular_values

from conftest import gaussian, low_rank, matrices

# ||X - C U R||_F for default_rng(9) 8x10, cols=rows=[0,1]; U solved by lstsq on
# the Kronecker system vec(CUR) = (R^T kron C) vec(U)
ERR_SEED9 = 7.603558972423641


@st.composite
def selections(draw):
    X = draw(matrices(max_rows=10, max_cols=10))
    n, m = X.shape
    cols = draw(st.lists(st.integers(0, m - 1), min_size=1, max_size=m, unique=True))
    rows = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    return X, cols, rows


def projector_parts(X, cols, rows):
    C, R = X[:, cols], X[rows, :]
    return C @ pseudo_inverse(C) @ X @ pseudo_inverse(R) @ R


def test_core_rank1(rank1):
    U = core_matrix(rank1, [3], [1])
    assert U.shape == (1, 1)
    np.testing.assert_allclose(rank1[:, [3]] @ U @ rank1[[1], :], rank1, atol=1e-10)


def test_core_identity():
    np.testing.assert_allclose(core_matrix(np.eye(3), [0, 1, 2], [0, 1, 2]), np.eye(3), atol=1e-14)


def test_core_rank2_spanning():
    X = low_rank(5, 6, 8, 2)
    assert reconstruction_error(X, [0, 1], [0, 1]) / np.linalg.norm(X) <= 1e-8
    dec = decompose(X, [3, 6], [2, 5])
    np.testing.assert_allclose(reconstruct(X, dec), X, atol=1e-8 * np.linalg.norm(X))


def test_core_index_errors():
    X = gaussian(0, (3, 4))
    with pytest.raises(SelectionIndexError):
        core_matrix(X, [4], [0])
    with pytest.raises(SelectionIndexError):
        core_matrix(X, [0, 0], [0])
    with pytest.raises(SelectionIndexError):
        core_matrix(X, [0], [-1])
    with pytest.raises(SelectionIndexError):
        core_matrix(X, [], [0])


def test_error_full_selection_and_rank1(rank1):
    X = gaussian(1, (4, 5))
    assert reconstruction_error(X, range(5), range(4)) <= 1e-10 * np.linalg.norm(X)
    assert normalized_error(X, range(5), range(4)) <= 1e-20
    assert reconstruction_error(rank1, [0], [3]) <= 1e-10 * np.linalg.norm(rank1)


def test_error_random_frozen_and_pythagorean():
    X = gaussian(9, (8, 10))
    e = reconstruction_error(X, [0, 1], [0, 1])
    assert e == pytest.approx(ERR_SEED9, rel=1e-9)
    P = projector_parts(X, [0, 1], [0, 1])
    assert e**2 + np.linalg.norm(P) ** 2 == pytest.approx(np.linalg.norm(X) ** 2, rel=1e-9)


def test_normalized_error_consistency_and_zero():
    X = gaussian(4, (6, 7))
    ne = normalized_error(X, [1, 4], [0, 5, 2])
    assert ne == pytest.approx(reconstruction_error(X, [1, 4], [0, 5, 2]) ** 2 / np.sum(X**2), rel=1e-12)
    with pytest.raises(DegenerateInputError):
        normalized_error(np.zeros((3, 3)), [0], [0])


def test_reconstruct_identity_and_shape_mismatch():
    dec = decompose(np.eye(3), [0, 1, 2], [0, 1, 2])
    np.testing.assert_allclose(reconstruct(np.eye(3), dec), np.eye(3), atol=1e-14)
    with pytest.raises(DimensionError):
        reconstruct(np.eye(2), dec)


def test_decomposition_invariants():
    with pytest.raises(ValueError):
        CurDecomposition([0, 0], [1], np.zeros((2, 1)))
    with pytest.raises(ValueError):
        CurDecomposition([0, 1], [1], np.zeros((1, 1)))
    dec = CurDecomposition([2, 0], [1], np.zeros((2, 1)))
    assert (dec.k1, dec.k2) == (2, 1)


def test_rank_deficient_selection_is_graceful():
    X = gaussian(2, (5, 6))
    X[:, 1] = 2 * X[:, 0]
    e = reconstruction_error(X, [0, 1], [0, 1])
    assert np.isfinite(e)
    assert e == pytest.approx(reconstruction_error(X, [0], [0, 1]), rel=1e-9)


@given(selections())
def test_pythagorean_identity(sel):
    X, cols, rows = sel
    e = reconstruction_error(X, cols, rows)
    P = projector_parts(X, cols, rows)
    total = np.linalg.norm(X) ** 2
    assert abs(e**2 + np.linalg.norm(P) ** 2 - total) <= 1e-9 * total


@given(selections(), st.integers(0, 2**32 - 1))
def test_core_is_optimal(sel, seed):
    X, cols, rows = sel
    U = core_matrix(X, cols, rows)
    C, R = X[:, cols], X[rows, :]
    base = np.linalg.norm(X - C @ U @ R)
    g = np.random.default_rng(seed)
    for _ in range(10):
        D = g.standard_normal(U.shape)
        D *= 1e-3 / np.linalg.norm(D)
        assert np.linalg.norm(X - C @ (U + D) @ R) >= base - 1e-12 * np.linalg.norm(X)


@given(selections())
def test_normal_equations(sel):
    X, cols, rows = sel
    C, R = X[:, cols], X[rows, :]
    E = X - C @ core_matrix(X, cols, rows) @ R
    assert np.linalg.norm(C.T @ E @ R.T) <= 1e-8 * np.linalg.norm(X)


@given(selections())
def test_eckart_young_lower_bound(sel):
    X, cols, rows = sel
    k = min(len(cols), len(rows))
    tail = np.sum(singular_values(X)[k:] ** 2)
    total = np.linalg.norm(X) ** 2
    assert reconstruction_error(X, cols, rows) ** 2 >= tail - 1e-8 * total


@given(selections(), st.data())
def test_monotone_in_selection(sel, data):
    X, cols, rows = sel
    n, m = X.shape
    e = reconstruction_error(X, cols, rows)
    spare_c = [c for c in range(m) if c not in cols]
    spare_r = [r for r in range(n) if r not in rows]
    slack = 1e-10 * np.linalg.norm(X)
    if spare_c:
        extra = data.draw(st.sampled_from(spare_c))
        assert reconstruction_error(X, cols + [extra], rows) <= e + slack
    if spare_r:
        extra = data.draw(st.sampled_from(spare_r))
        assert reconstruction_error(X, cols, rows + [extra]) <= e + slack
