import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specconvex import majorization, sampling
from specconvex.errors import DimensionMismatch

finite_floats = st.floats(min_value=-100, max_value=100, allow_nan=False)
small_vectors = st.lists(finite_floats, min_size=2, max_size=5)


def test_top_k_sum_examples():
    assert majorization.top_k_sum([3.0, 1.0, 2.0], 2) == 5.0
    assert majorization.top_k_sum([1.0, 1.0, 1.0], 3) == 3.0
    with pytest.raises(ValueError):
        majorization.top_k_sum([1.0, 2.0], 3)


@settings(max_examples=100, deadline=None)
@given(small_vectors, small_vectors, st.integers(min_value=1, max_value=5))
def test_top_k_sum_subadditive(p, q, k):
    if len(p) != len(q) or k > len(p):
        return
    p, q = np.array(p), np.array(q)
    lhs = majorization.top_k_sum(p + q, k)
    rhs = majorization.top_k_sum(p, k) + majorization.top_k_sum(q, k)
    assert lhs <= rhs + 1e-9 * max(1.0, np.abs(p).max(), np.abs(q).max())


def test_majorizes_examples():
    assert majorization.majorizes([3.0, 0.0, 0.0], [1.0, 1.0, 1.0])
    assert majorization.majorizes([2.0, 1.0, 0.0], [2.0, 1.0, 0.0])
    assert not majorization.majorizes([2.0, 1.0, 0.0], [2.0, 2.0, -1.0])
    with pytest.raises(DimensionMismatch):
        majorization.majorizes([1.0], [1.0, 2.0])


@settings(max_examples=100, deadline=None)
@given(small_vectors)
def test_majorizes_permutation_invariant(p):
    p = np.array(p)
    assert majorization.majorizes(p, p[::-1].copy())
    mean = np.full(p.size, p.mean())
    assert majorization.majorizes(p, mean)


def test_majorizes_transitive_on_samples():
    rng = sampling.philox(20)
    for _ in range(100):
        d = int(rng.integers(2, 6))
        p = rng.standard_normal(d)
        q = sampling.random_majorized(rng, p)
        r = sampling.random_majorized(rng, q)
        assert majorization.majorizes(p, q)
        assert majorization.majorizes(q, r)
        assert majorization.majorizes(p, r)


def test_doubly_stochastic_oracle():
    rng = sampling.philox(21)
    for _ in range(200):
        d = int(rng.integers(2, 7))
        p = rng.standard_normal(d) * float(rng.uniform(0.5, 4.0))
        D = sampling.random_doubly_stochastic(rng, d)
        assert np.allclose(D.sum(axis=0), 1.0) and np.allclose(D.sum(axis=1), 1.0)
        assert majorization.majorizes(p, D @ p)


def test_permutahedron_examples():
    assert majorization.permutahedron_contains([1.0, 0.0], [0.5, 0.5])
    assert not majorization.permutahedron_contains([1.0, 0.0], [1.1, -0.1])
    p = np.array([3.0, 2.0, 1.0])
    for perm in itertools.permutations(p):
        assert majorization.permutahedron_contains(p, np.array(perm))


def test_orbit_halfspace_examples():
    assert majorization.orbit_halfspace_contains(
        [1.0, 0.0, 0.0], 1.0, [0.5, -2.0, 0.0]
    )
    # sorted pairing gives <(1,-1), (2,1)> = 1 > 0
    assert not majorization.orbit_halfspace_contains([1.0, -1.0], 0.0, [1.0, 2.0])


def test_orbit_halfspace_matches_brute_force():
    rng = sampling.philox(22)
    for _ in range(500):
        d = int(rng.integers(2, 6))
        a = rng.standard_normal(d)
        x = rng.standard_normal(d)
        b = float(rng.uniform(-1, 2))
        brute = max(float(np.dot(np.array(s), x)) for s in itertools.permutations(a))
        assert majorization.orbit_inner_max(a, x) == pytest.approx(brute, abs=1e-10)
        assert majorization.orbit_halfspace_contains(a, b, x) == (
            brute <= b + majorization._eff_tol(majorization.DEFAULT_TOL, a)
        )
