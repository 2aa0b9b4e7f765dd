import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def gaussian(seed, shape):
    return np.random.default_rng(seed).standard_normal(shape)


def low_rank(seed, n, m, r):
    g = np.random.default_rng(seed)
    return g.standard_normal((n, r)) @ g.standard_normal((r, m))


@st.composite
def matrices(draw, max_rows=12, max_cols=12, min_rows=1, min_cols=1):
    n = draw(st.integers(min_rows, max_rows))
    m = draw(st.integers(min_cols, max_cols))
    seed = draw(st.integers(0, 2**32 - 1))
    return gaussian(seed, (n, m))


@st.composite
def finite_arrays(draw, max_side=20):
    n = draw(st.integers(1, max_side))
    m = draw(st.integers(1, max_side))
    return draw(arrays(np.float64, (n, m),
                       elements=st.floats(allow_nan=False, allow_infinity=False, width=64)))


@pytest.fixture
def rank1():
    c = np.array([1.0, -2.0, 0.5, 3.0])
    r = np.array([2.0, 0.0, -1.0, 4.0, 1.5])
    return np.outer(c, r)
