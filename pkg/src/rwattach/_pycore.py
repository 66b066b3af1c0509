"""Pure-Python backend with the same entry points and random-draw order as ``_core``."""

import numpy as np

from .coloring import KColoring, TwoColoring, kcolor_grow_step
from .graph import DirectedGraph, Graph
from .growth import BernoulliWalk, FixedWalk, Preferential, Uniform, select_target
from .rng import Xoshiro256, splitmix64_mix
from .urns import UrnRule, UrnState, urn_step

RULE_FIXED = 0
RULE_BERNOULLI = 1
RULE_PREFERENTIAL = 2
RULE_UNIFORM = 3
URN_POLYA = 0
URN_FRIEDMAN01 = 1


def mix64(z):
    return splitmix64_mix(z)


def raw_stream(seed, count):
    rng = Xoshiro256(seed)
    return [rng.next64() for _ in range(count)]


def _rule(code, ell, p):
    if code == RULE_FIXED:
        return FixedWalk(int(ell))
    if code == RULE_BERNOULLI:
        return BernoulliWalk(float(p))
    if code == RULE_PREFERENTIAL:
        return Preferential()
    if code == RULE_UNIFORM:
        return Uniform()
    raise ValueError(f"unknown rule code {code}")


def simulate_undirected(edges, v0, rule, ell, p, steps, seeds, checkpoints,
                        colors=None, want_hist=False, want_trace=False):
    edges = [tuple(e) for e in np.asarray(edges).tolist()]
    rule_obj = _rule(rule, ell, p)
    checkpoints = [int(c) for c in checkpoints]
    R, C = len(seeds), len(checkpoints)
    leaves = np.zeros((R, C), dtype=np.int64)
    red = np.zeros((R, C), dtype=np.int64)
    trace = np.zeros((3, steps if want_trace else 1), dtype=np.int64)
    hists = []
    for r, seed in enumerate(seeds):
        g = Graph(v0, edges)
        coloring = TwoColoring(np.asarray(colors).tolist()) if colors is not None else None
        rng = Xoshiro256(int(seed))
        replica_hists = []
        n = 0
        for ci in range(C + 1):
            target = checkpoints[ci] if ci < C else steps
            while n < target:
                v, length, w = select_target(g, rule_obj, rng)
                new = g.attach_new_vertex(w)
                if coloring is not None:
                    coloring.color.append(1 - coloring.color[w])
                    coloring.red_count += coloring.color[new] == 0
                if want_trace:
                    trace[:, n] = (v, length, w)
                n += 1
            if ci == C:
                break
            leaves[r, ci] = g.leaf_count
            if coloring is not None:
                red[r, ci] = coloring.red_count
            if want_hist:
                replica_hists.append(np.bincount(g.degree).astype(np.int64))
        hists.append(replica_hists)
    out = {"leaves": leaves}
    if colors is not None:
        out["red"] = red
    if want_hist:
        out["hist"] = hists
    if want_trace:
        out["trace"] = trace
    return out


def simulate_directed(edges, v0, ell, steps, seeds, checkpoints, colors, k, want_trace=False):
    edges = [tuple(e) for e in np.asarray(edges).tolist()]
    checkpoints = [int(c) for c in checkpoints]
    R, C = len(seeds), len(checkpoints)
    counts = np.zeros((R, C, k), dtype=np.int64)
    trace = np.zeros((2, steps if want_trace else 1), dtype=np.int64)
    for r, seed in enumerate(seeds):
        dg = DirectedGraph(v0, edges)
        coloring = KColoring(k, np.asarray(colors).tolist())
        rng = Xoshiro256(int(seed))
        n = 0
        for ci in range(C + 1):
            target = checkpoints[ci] if ci < C else steps
            while n < target:
                v, w, _ = kcolor_grow_step(dg, coloring, ell, rng)
                if want_trace:
                    trace[:, n] = (v, w)
                n += 1
            if ci < C:
                counts[r, ci] = coloring.counts
    out = {"counts": counts}
    if want_trace:
        out["trace"] = trace
    return out


def urn_ensemble(red0, blue0, rule, steps, seeds, checkpoints):
    rule_obj = UrnRule.POLYA if rule == URN_POLYA else UrnRule.FRIEDMAN01
    checkpoints = [int(c) for c in checkpoints]
    out = np.zeros((len(seeds), len(checkpoints)), dtype=np.int64)
    for r, seed in enumerate(seeds):
        rng = Xoshiro256(int(seed))
        state = UrnState(red0, blue0)
        n = 0
        for ci, target in enumerate(checkpoints):
            while n < target:
                state = urn_step(state, rule_obj, rng)
                n += 1
            out[r, ci] = state.red
    return out
