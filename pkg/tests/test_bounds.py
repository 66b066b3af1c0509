import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import optimize

from rwattach.bounds import (bounds_table, drift_lower_bernoulli, drift_upper_bernoulli,
                             leaf_increment_bound, leaf_increment_bound_from_mean, threshold_lower_root,
                             threshold_upper)
from rwattach.graph import build_g0
from rwattach.growth import BernoulliWalk, FixedWalk, Preferential, Uniform, grow
from rwattach.rng import Xoshiro256

GRID = [i / 20 for i in range(21)]


def root_oracle(p):
    """Smaller root of the cleared quadratic, via numpy, and by bracketing the drift itself."""
    a, b = 1 + 7 * p, -(2 + 18 * p)
    quad = min(np.roots([a, b, a]).real)
    if p == 0:
        return quad, 1.0
    bracket = optimize.brentq(lambda x: drift_lower_bernoulli(x, p), 0.0, 1.0 / (1 + p) + 1e-9, xtol=1e-14)
    return quad, bracket


def test_degree_mix_bound_examples():
    assert leaf_increment_bound({1: 1.0}, 5, 3) == 0
    assert math.isclose(leaf_increment_bound({2: 1.0}, 0, 4), 0.1)
    assert math.isclose(leaf_increment_bound({1: 0.5, 2: 0.5}, 0, 4), 0.05)


def test_degree_mix_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        leaf_increment_bound({1: 1.2, 2: -0.2}, 0, 4)
    with pytest.raises(ValueError):
        leaf_increment_bound({1: 0.5}, 0, 4)


def test_mean_degree_bound_examples():
    assert math.isclose(leaf_increment_bound_from_mean(0.5, 0, 4, 3), 1 / 16)
    n = 10**9
    assert math.isclose(leaf_increment_bound_from_mean(0.0, n, 4, 4), 1 / (2 * (n + 1)) / 4)
    with pytest.raises(ValueError):
        leaf_increment_bound_from_mean(1.0, 3, 4, 3)


def test_mean_degree_bound_can_exceed_degree_mix_bound_before_n_reaches_v0():
    # path(4) at n=0: the mean-degree form uses 2(n+1)=2 where the degree-mix form uses n+v0+1=5
    mix = leaf_increment_bound({1: 0.5, 2: 0.5}, 0, 4)
    mean = leaf_increment_bound_from_mean(0.5, 0, 4, 3)
    assert mean > mix


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["path:4", "cycle:5", "star:3", "complete_bipartite:2,3", "path:2"]),
       st.sampled_from([FixedWalk(1), FixedWalk(2), BernoulliWalk(0.5), Preferential(), Uniform()]),
       st.integers(0, 300), st.integers(0, 2**32))
def test_mean_degree_bound_below_degree_mix_bound(spec, rule, extra, seed):
    g0 = build_g0(spec)
    steps = g0.v0 - 1 + extra  # the ordering needs n + 1 >= v0
    g, _ = grow(g0, rule, steps, Xoshiro256(seed))
    L = g.leaf_count / g.n_vertices
    if L == 1.0:
        return
    props = {d: c / g.n_vertices for d, c in g.degree_histogram().items()}
    assert leaf_increment_bound_from_mean(L, steps, g.v0, g.e0) <= leaf_increment_bound(props, steps, g.v0) + 1e-15


def test_drift_lower_examples():
    assert drift_lower_bernoulli(0, 0) == 1 / 8
    for p in GRID:
        assert math.isclose(drift_lower_bernoulli(1, p), -p, abs_tol=1e-15)


def test_drift_upper_examples():
    assert drift_upper_bernoulli(0, 0.3) == 1
    assert math.isclose(drift_upper_bernoulli(1 / 1.5, 0.5), 0, abs_tol=1e-15)
    assert drift_upper_bernoulli(1, 1) == -1


def test_threshold_examples():
    assert threshold_lower_root(0) == 1
    assert threshold_lower_root(1) == 0.5
    assert math.isclose(threshold_lower_root(0.5), (5.5 - 2 * math.sqrt(2.5)) / 4.5, rel_tol=1e-15)
    assert math.isclose(threshold_lower_root(0.5), 0.519493853295916, rel_tol=1e-12)
    assert threshold_upper(0) == 1 and threshold_upper(1) == 0.5
    assert math.isclose(threshold_upper(0.5), 2 / 3)


@pytest.mark.parametrize("p", GRID)
def test_root_matches_independent_oracles(p):
    quad, bracket = root_oracle(p)
    assert math.isclose(threshold_lower_root(p), quad, abs_tol=1e-7)  # double root at p=0
    assert math.isclose(threshold_lower_root(p), bracket, abs_tol=1e-10)
    assert abs(drift_lower_bernoulli(threshold_lower_root(p), p)) < 1e-10


@pytest.mark.parametrize("p", GRID[1:])
def test_drift_sign_patterns(p):
    root, upper = threshold_lower_root(p), threshold_upper(p)
    for lam in np.linspace(0, 1, 401):
        if lam < root - 1e-9:
            assert drift_lower_bernoulli(lam, p) > 0
        elif lam > root + 1e-9:
            assert drift_lower_bernoulli(lam, p) < 0
        assert (drift_upper_bernoulli(lam, p) > 0) == (lam < upper)


def test_threshold_ordering_and_range():
    for p in GRID:
        lo, hi = threshold_lower_root(p), threshold_upper(p)
        assert lo <= hi + 1e-15 and lo <= 1
        if p in (0, 1):
            assert abs(hi - lo) < 1e-12
        else:
            assert hi - lo > 0 and lo < 1


def test_bounds_table_rows():
    rows = bounds_table([0, 0.25, 0.5, 0.75, 1])
    assert len(rows) == 5
    assert abs(rows[0][3]) < 1e-12 and abs(rows[-1][3]) < 1e-12
