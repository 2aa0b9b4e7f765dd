import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twsp.baselines import (
    BaselineKind,
    brute_force_cur,
    column_projection_error,
    leverage_cur,
    leverage_scores,
    random_cur,
    sp_independent_cur,
    sp_select,
)
from twsp.cur import normalized_error, reconstruction_error
from twsp.exceptions import CombinatorialGuardError, ConfigurationError
from twsp.numkit import singular_values
from twsp.solver import SolverConfig, solve

from conftest import gaussian, low_rank

# optimum over all 2x2 selections of default_rng(2) 6x7, from an itertools scan
# solving each core by lstsq on the Kronecker system
BRUTE_SEED2 = (3.8870084700385807, [3, 6], [0, 5])


def test_kind_enum():
    assert {k.value for k in BaselineKind} == {"sp_independent", "leverage", "random", "brute_force"}


@pytest.mark.parametrize("mode", ["residual", "data"])
def test_sp_rank1(rank1, mode):
    for seed in range(5):
        (c,) = sp_select(rank1, 1, seed=seed, matching_target=mode)
        assert c != 1  # the zero column
        assert column_projection_error(rank1, [c]) <= 1e-10 * np.linalg.norm(rank1)


def test_sp_rank2_exact():
    X = low_rank(4, 20, 15, 2)
    cols = sp_select(X, 2, seed=3)
    assert column_projection_error(X, cols) <= 1e-8 * np.linalg.norm(X)


def test_sp_deterministic_and_distinct():
    X = gaussian(6, (12, 16))
    a, b = sp_select(X, 5, seed=8), sp_select(X, 5, seed=8)
    assert a == b and len(set(a)) == 5


def test_sp_errors():
    X = gaussian(0, (4, 5))
    with pytest.raises(ConfigurationError):
        sp_select(X, 0)
    with pytest.raises(ConfigurationError):
        sp_select(X, 6)
    with pytest.raises(ConfigurationError):
        sp_select(X, 2, matching_target="null")
    Z = np.zeros((4, 5))
    Z[0, 0] = 1.0
    with pytest.raises(ConfigurationError):
        sp_select(Z, 2)


def test_sp_independent_rank1_and_consistency(rank1):
    dec = sp_independent_cur(rank1, 1, 1)
    assert normalized_error(rank1, dec.col_indices, dec.row_indices) <= 1e-20
    X = gaussian(3, (10, 12))
    dec = sp_independent_cur(X, 3, 4, seed=1)
    e = np.linalg.norm(X - X[:, dec.col_indices] @ dec.core @ X[dec.row_indices, :])
    assert e == pytest.approx(reconstruction_error(X, dec.col_indices, dec.row_indices), abs=1e-10)
    assert dec.col_indices == sp_select(X, 3, seed=1)
    assert dec.row_indices == sp_select(X.T, 4, seed=1)


def test_leverage_scores_examples():
    c, r = leverage_scores(np.eye(4), 4)
    np.testing.assert_allclose(c, 0.25)
    np.testing.assert_allclose(r, 0.25)
    a = np.array([1.0, 2.0, 2.0])
    b = np.array([3.0, 0.0, 4.0, 1.0])
    c, r = leverage_scores(np.outer(a, b), 1)
    np.testing.assert_allclose(c, b**2 / np.sum(b**2), atol=1e-12)
    np.testing.assert_allclose(r, a**2 / np.sum(a**2), atol=1e-12)
    c, r = leverage_scores(gaussian(1, (7, 9)), 3)
    assert abs(c.sum() - 1) <= 1e-12 and abs(r.sum() - 1) <= 1e-12
    assert np.all(c >= 0) and np.all(r >= 0)
    with pytest.raises(ConfigurationError):
        leverage_scores(np.eye(3), 4)
    with pytest.raises(ConfigurationError):
        leverage_scores(np.eye(3), 0)


@pytest.mark.parametrize("fn", [leverage_cur, random_cur])
def test_sampling_baselines(fn):
    X = gaussian(5, (15, 20))
    a, b = fn(X, 4, 6, seed=3), fn(X, 4, 6, seed=3)
    assert a.col_indices == b.col_indices and a.row_indices == b.row_indices
    assert len(set(a.col_indices)) == 4 and len(set(a.row_indices)) == 6
    ne = normalized_error(X, a.col_indices, a.row_indices)
    tail = np.sum(singular_values(X)[4:] ** 2) / np.sum(X**2)
    assert tail - 1e-8 <= ne <= 1.0


def test_leverage_tops_up_when_mass_is_concentrated(rank1):
    # column 1 is zero, so it is never eligible
    dec = leverage_cur(rank1, 4, 2, r=1, seed=0)
    assert sorted(dec.col_indices) == [0, 2, 3, 4]
    Y = np.zeros((3, 4))
    Y[0, 0] = Y[1, 1] = 1.0
    Y[2, 2] = 1e-3
    dec = leverage_cur(Y, 3, 3, r=1, seed=2)
    assert sorted(dec.col_indices) == [0, 1, 2]


def test_random_skips_zero_columns(rank1):
    for seed in range(20):
        assert 1 not in random_cur(rank1, 3, 2, seed=seed).col_indices


def test_brute_force_examples(rank1):
    _, e = brute_force_cur(rank1, 1, 1)
    assert e <= 1e-12
    dec, e = brute_force_cur(np.eye(3), 3, 3)
    assert e <= 1e-14 and dec.col_indices == [0, 1, 2]


def test_brute_force_frozen_oracle_and_dominance():
    X = gaussian(2, (6, 7))
    dec, e = brute_force_cur(X, 2, 2)
    assert e == pytest.approx(BRUTE_SEED2[0], rel=1e-9)
    assert (dec.col_indices, dec.row_indices) == (BRUTE_SEED2[1], BRUTE_SEED2[2])
    for seed in range(100):
        r = random_cur(X, 2, 2, seed=seed)
        assert reconstruction_error(X, r.col_indices, r.row_indices) >= e - 1e-10


def test_brute_force_lexicographic_ties():
    dec, _ = brute_force_cur(np.ones((3, 4)), 1, 1)
    assert (dec.col_indices, dec.row_indices) == ([0], [0])


def test_brute_force_guard_message():
    X = gaussian(0, (30, 40))
    bound = math.comb(40, 5) * math.comb(30, 5)
    with pytest.raises(CombinatorialGuardError, match=str(bound)):
        brute_force_cur(X, 5, 5)


@given(st.integers(0, 2**20), st.integers(1, 3), st.integers(1, 3))
def test_oracle_lower_bounds_every_method(seed, k1, k2):
    X = gaussian(seed, (6, 7))
    _, opt = brute_force_cur(X, k1, k2)
    decs = [
        solve(X, SolverConfig(k1, k2, seed=seed))[0],
        sp_independent_cur(X, k1, k2, seed=seed),
        leverage_cur(X, k1, k2, seed=seed),
        random_cur(X, k1, k2, seed=seed),
    ]
    for d in decs:
        assert reconstruction_error(X, d.col_indices, d.row_indices) >= opt - 1e-10
        assert len(set(d.col_indices)) == k1 and len(set(d.row_indices)) == k2
        assert all(0 <= c < 7 for c in d.col_indices) and all(0 <= r < 6 for r in d.row_indices)
