from collections import Counter, defaultdict
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from rwattach import core
from rwattach.graph import Graph, cycle, path, star
from rwattach.growth import (BernoulliWalk, FixedWalk, Preferential, StepTrace, Uniform, grow,
                             leaf_transition_check, select_target)
from rwattach.rng import Xoshiro256
from rwattach.runner import replica_seeds
from rwattach.stats import two_sample_ks


def exact_target_law(edges, n, length):
    """Exact law of the walk endpoint by enumeration: uniform start, then ``length`` uniform steps."""
    nbrs = defaultdict(list)
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    law = {v: Fraction(1, n) for v in range(n)}
    for _ in range(length):
        nxt = defaultdict(Fraction)
        for v, pr in law.items():
            for u in nbrs[v]:
                nxt[u] += pr / len(nbrs[v])
        law = dict(nxt)
    return law


def exact_leaf_fraction_after_one_step(edges, n, length):
    deg = Counter(x for e in edges for x in e)
    leaves = sum(1 for v in range(n) if deg[v] == 1)
    return sum(pr * Fraction(leaves + 1 - (deg[w] == 1), n + 1)
               for w, pr in exact_target_law(edges, n, length).items())


def test_enumeration_oracle_values():
    law = exact_target_law([(0, 1), (1, 2)], 3, 1)
    assert law == {1: Fraction(2, 3), 0: Fraction(1, 6), 2: Fraction(1, 6)}
    assert exact_leaf_fraction_after_one_step([(0, 1), (1, 2)], 3, 1) == Fraction(2, 3)


def test_fixed_walk_zero_stays_put():
    g, r = cycle(5), Xoshiro256(1)
    for _ in range(50):
        v, length, w = select_target(g, FixedWalk(0), r)
        assert v == w and length == 0


@pytest.mark.parametrize("rule, expected", [
    (FixedWalk(1), [Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)]),
    (Preferential(), [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]),
    (Uniform(), [Fraction(1, 3)] * 3),
    (BernoulliWalk(1.0), [Fraction(1, 3)] * 3),
    (BernoulliWalk(0.0), [Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)]),
])
def test_select_target_law_on_path3(rule, expected):
    g, r = path(3), Xoshiro256(11)
    counts = np.bincount([select_target(g, rule, r)[2] for _ in range(60_000)], minlength=3)
    assert stats.chisquare(counts, np.array(expected, dtype=float) * counts.sum()).pvalue > 0.001


def test_bernoulli_realized_length_frequency():
    g, r = path(5), Xoshiro256(12)
    zeros = sum(select_target(g, BernoulliWalk(0.3), r)[1] == 0 for _ in range(20_000))
    assert stats.binomtest(zeros, 20_000, 0.3).pvalue > 0.001


def test_preferential_records_v_equal_w():
    g, r = star(4), Xoshiro256(2)
    for _ in range(20):
        v, length, w = select_target(g, Preferential(), r)
        assert v == w and length == 0


def test_grow_zero_steps_is_identity():
    g0 = path(4)
    g, traces = grow(g0, FixedWalk(1), 0, Xoshiro256(0))
    assert traces == [] and g.edges() == g0.edges() and g.degree == g0.degree


def test_grow_deterministic():
    a = grow(path(4), BernoulliWalk(0.4), 300, Xoshiro256(77))[1]
    b = grow(path(4), BernoulliWalk(0.4), 300, Xoshiro256(77))[1]
    assert a == b
    assert a != grow(path(4), BernoulliWalk(0.4), 300, Xoshiro256(78))[1]


def test_grow_debug_and_observers():
    seen = []
    g, traces = grow(cycle(4), FixedWalk(2), 50, Xoshiro256(3), observers=[lambda g, t: seen.append(t.n)],
                     debug=True)
    assert seen == list(range(1, 51)) and g.n_vertices == 54
    assert all(t.new_vertex == 4 + i for i, t in enumerate(traces))


def test_first_step_mean_leaf_fraction_path3():
    expected = exact_leaf_fraction_after_one_step([(0, 1), (1, 2)], 3, 1)
    edges = np.array([(0, 1), (1, 2)], dtype=np.int64)
    seeds = replica_seeds(2024, 100_000)
    leaves = core.simulate_undirected(edges, 3, core.RULE_FIXED, 1, 0.0, 1, seeds,
                                      np.array([1], dtype=np.int64))["leaves"][:, 0]
    L = leaves / 4
    se = L.std(ddof=1) / np.sqrt(len(L))
    assert abs(L.mean() - float(expected)) < 3 * se


def test_leaf_transition_leaf_start():
    before = path(4)
    after = before.copy()
    new = after.attach_new_vertex(1)
    assert after.leaf_count - before.leaf_count == 1
    assert leaf_transition_check(before, StepTrace(1, 0, 1, 1, new), after) == []


def test_leaf_transition_no_leaves_in_cycle():
    before = cycle(4)
    after = before.copy()
    new = after.attach_new_vertex(2)
    assert after.leaf_count - before.leaf_count == 1
    assert leaf_transition_check(before, StepTrace(1, 1, 1, 2, new), after) == []


def test_leaf_transition_nonleaf_start_onto_leaf():
    before = path(4)
    after = before.copy()
    new = after.attach_new_vertex(0)
    assert after.leaf_count == before.leaf_count
    assert leaf_transition_check(before, StepTrace(1, 1, 1, 0, new), after) == []


def test_leaf_transition_reports_violation():
    before = path(4)
    after = before.copy()
    new = after.attach_new_vertex(0)
    # claims the start was leaf 3 walking to 0, which is not a neighbor and loses the +1
    failures = leaf_transition_check(before, StepTrace(1, 3, 1, 0, new), after)
    assert any("expected +1" in f for f in failures)
    assert any("not a neighbor" in f for f in failures)


def test_sharpened_nonleaf_hit_probability():
    # conditional on start degree d, P(endpoint is not a leaf) >= 1/d
    rng = Xoshiro256(8)
    hits, totals = Counter(), Counter()
    for _ in range(300):
        g = path(5)
        for _ in range(30):
            v, length, w = select_target(g, FixedWalk(1), rng)
            d = g.degree[v]
            if d >= 2:
                totals[d] += 1
                hits[d] += g.degree[w] != 1
            g.attach_new_vertex(w)
    for d, n in totals.items():
        if n >= 200:
            p = hits[d] / n
            assert p >= 1 / d - 3 * np.sqrt(p * (1 - p) / n), (d, p, n)


def test_submartingale_drift_per_checkpoint():
    edges = np.array([(0, 1), (1, 2), (2, 3)], dtype=np.int64)
    cps = np.array([1, 2, 4, 8, 16, 32, 64, 128, 256], dtype=np.int64)
    leaves = core.simulate_undirected(edges, 4, core.RULE_FIXED, 1, 0.0, 256, replica_seeds(9, 4000),
                                      cps)["leaves"]
    L = leaves / (4 + cps)
    diff = np.diff(L, axis=1)
    se = diff.std(axis=0, ddof=1) / np.sqrt(len(L))
    assert np.all(diff.mean(axis=0) >= -3 * se)


@pytest.mark.parametrize("p, other", [(1.0, core.RULE_UNIFORM), (0.0, core.RULE_FIXED)])
def test_bernoulli_endpoints_match_in_distribution(p, other):
    edges = np.array([(0, 1), (1, 2), (2, 3)], dtype=np.int64)
    cps = np.array([2000], dtype=np.int64)
    a = core.simulate_undirected(edges, 4, core.RULE_BERNOULLI, 0, p, 2000, replica_seeds(1, 1500),
                                 cps)["leaves"][:, 0]
    b = core.simulate_undirected(edges, 4, other, 1, 0.0, 2000, replica_seeds(2, 1500), cps)["leaves"][:, 0]
    assert two_sample_ks(a, b)[1] > 0.001


def test_trace_length_invariant():
    g, traces = grow(path(4), BernoulliWalk(0.5), 200, Xoshiro256(4), copy=True)
    adjacency = g.adjacency
    for t in traces:
        if t.realized_length == 0:
            assert t.w == t.v
        else:
            assert t.w in adjacency[t.v]


def test_invalid_rules():
    with pytest.raises(ValueError):
        FixedWalk(-1)
    with pytest.raises(ValueError):
        BernoulliWalk(1.5)
    with pytest.raises(TypeError):
        select_target(Graph(2, [(0, 1)]), "walk", Xoshiro256(0))
