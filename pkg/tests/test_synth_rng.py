import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twsp.numkit import singular_values
from twsp.rng import Rng
from twsp.synth import DEFAULT_NOISE_RATIO, SynthSpec, low_rank_plus_noise


def test_box_muller_matches_scalar_oracle():
    ref = np.random.Generator(np.random.PCG64(17)).random(6)
    expected = []
    for a, b in zip(ref[0::2], ref[1::2]):
        r = math.sqrt(-2.0 * math.log(1.0 - a))
        expected += [r * math.cos(2 * math.pi * b), r * math.sin(2 * math.pi * b)]
    np.testing.assert_allclose(Rng(17).normal(5), expected[:5], rtol=1e-14)


def test_fisher_yates_matches_oracle():
    gen = np.random.Generator(np.random.PCG64(5))
    pool = list(range(10, 20))
    for t in range(4):
        j = t + int(gen.integers(0, 10 - t))
        pool[t], pool[j] = pool[j], pool[t]
    assert Rng(5).sample(range(10, 20), 4) == pool[:4]


def test_rng_validation():
    with pytest.raises(ValueError):
        Rng(-1)
    with pytest.raises(ValueError):
        Rng(2**64)
    with pytest.raises(ValueError):
        Rng(0).below(0)
    with pytest.raises(ValueError):
        Rng(0).sample([1, 2], 3)
    with pytest.raises(ValueError):
        Rng(0).weighted_sample([1.0, 0.0], 2)
    with pytest.raises(ValueError):
        Rng(0).weighted_sample([1.0, -1.0], 1)


@given(st.integers(0, 2**64 - 1), st.integers(1, 30), st.data())
def test_sample_distinct_and_reproducible(seed, n, data):
    k = data.draw(st.integers(0, n))
    a = Rng(seed).sample(range(n), k)
    assert a == Rng(seed).sample(range(n), k)
    assert len(set(a)) == k and all(0 <= x < n for x in a)


@given(st.integers(0, 2**32), st.lists(st.floats(0, 10), min_size=1, max_size=12))
def test_weighted_sample_uses_positive_weights_only(seed, w):
    k = int(np.count_nonzero(w))
    picks = Rng(seed).weighted_sample(w, k)
    assert sorted(picks) == sorted(np.flatnonzero(w).tolist())


def test_weighted_sample_frequencies():
    rng = Rng(1)
    counts = np.zeros(3)
    for _ in range(6000):
        counts[rng.weighted_sample([1.0, 2.0, 3.0], 1)[0]] += 1
    np.testing.assert_allclose(counts / 6000, [1 / 6, 2 / 6, 3 / 6], atol=0.02)


def test_spec_validation_and_default_sigma():
    with pytest.raises(ValueError):
        SynthSpec(3, 4, 5)
    with pytest.raises(ValueError):
        SynthSpec(3, 4, 0)
    with pytest.raises(ValueError):
        SynthSpec(3, 4, 2, noise_sigma=-0.1)
    assert SynthSpec(10, 10, 4).sigma == pytest.approx(DEFAULT_NOISE_RATIO * 2)
    assert SynthSpec.with_noise_ratio(10, 10, 9, 0.5).sigma == pytest.approx(1.5)


def test_noiseless_rank():
    X = low_rank_plus_noise(SynthSpec(30, 40, 5, noise_sigma=0.0, seed=3))
    s = singular_values(X)
    assert int(np.sum(s > 1e-8 * s[0])) == 5


def test_determinism_and_draw_order():
    spec = SynthSpec(6, 7, 2, noise_sigma=0.3, seed=9)
    X = low_rank_plus_noise(spec)
    assert np.array_equal(X, low_rank_plus_noise(spec))
    rng = Rng(9)
    A, B, G = rng.normal((6, 2)), rng.normal((7, 2)), rng.normal((6, 7))
    np.testing.assert_array_equal(X, A @ B.T + 0.3 * G)


def test_full_benchmark_shape():
    assert low_rank_plus_noise(SynthSpec(1000, 2000, 30, seed=1)).shape == (1000, 2000)


@pytest.mark.parametrize("rank,sigma", [(1, 0.0), (5, 0.5), (10, 2.0)])
def test_mean_square_concentration(rank, sigma):
    X = low_rank_plus_noise(SynthSpec(150, 200, rank, noise_sigma=sigma, seed=rank))
    assert np.mean(X**2) == pytest.approx(rank + sigma**2, rel=0.2)


def test_noise_ratio_is_about_target():
    spec = SynthSpec.with_noise_ratio(200, 400, 10, 0.1, seed=0)
    X = low_rank_plus_noise(spec)
    clean = low_rank_plus_noise(SynthSpec(200, 400, 10, noise_sigma=0.0, seed=0))
    ratio = np.linalg.norm(X - clean) / np.linalg.norm(clean)
    assert ratio == pytest.approx(0.1, rel=0.25)
