"""Step-by-step structural audit of a growth run (slow; pure Python)."""

from .coloring import KColoring, bipartite_2color, directed_kcolor, kcolor_grow_step
from .graph import GraphError, InvariantViolation, build_g0
from .growth import FixedWalk, StepTrace, leaf_transition_check, select_target
from .rng import Xoshiro256
from .stats import nonleaf_mean_degree, nonleaf_mean_degree_closed_form


def audit_run(g0_spec, rule, steps, seed, coloring=True):
    """Grow ``steps`` steps, checking every invariant after each one.

    Checks bookkeeping (counts, degree sum, half-edge multiset), proper
    2-coloring, the leaf-transition clauses, and that the non-leaf mean
    degree equals its closed form.  Raises :class:`InvariantViolation`
    naming the step; returns the number of steps audited.
    """
    g = build_g0(g0_spec)
    col = bipartite_2color(g) if coloring else None
    rng = Xoshiro256(seed)
    for n in range(1, steps + 1):
        before = g.copy()
        v, length, w = select_target(g, rule, rng)
        new = g.attach_new_vertex(w)
        trace = StepTrace(n, v, length, w, new)
        try:
            g.check_invariants()
            if g.n_vertices != g.v0 + n or g.n_edges != g.e0 + n:
                raise InvariantViolation("vertex/edge count does not match step count")
            if col is not None:
                col.propagate(trace)
                col.check_proper(g)
            if isinstance(rule, FixedWalk) and rule.length == 1:
                failures = leaf_transition_check(before, trace, g)
            else:
                failures = [f for f in leaf_transition_check(before, trace, g) if "start vertex" not in f]
            if failures:
                raise InvariantViolation("; ".join(failures))
            if g.leaf_count < g.n_vertices:
                L = g.leaf_count / g.n_vertices
                direct = nonleaf_mean_degree(g)
                closed = nonleaf_mean_degree_closed_form(L, n, g.v0, g.e0)
                if abs(direct - closed) > 1e-9:
                    raise InvariantViolation(f"non-leaf mean degree {direct} != closed form {closed}")
                nonleaf = [d for d in g.degree if d >= 2]
                if 2 * sum(1 for d in nonleaf if d <= 2 * direct) < len(nonleaf):
                    raise InvariantViolation("fewer than half the non-leaves have degree <= twice the mean")
        except (InvariantViolation, GraphError) as exc:
            raise InvariantViolation(f"step {n}: {exc}") from exc
    return steps


def audit_kcolor_run(g0_spec, k, length, steps, seed):
    """k-color analogue: every directed edge must step the color up by one."""
    dg = build_g0(g0_spec, directed=True)
    coloring: KColoring = directed_kcolor(dg, k)
    rng = Xoshiro256(seed)
    for n in range(1, steps + 1):
        kcolor_grow_step(dg, coloring, length, rng)
        try:
            coloring.check_proper(dg)
        except ValueError as exc:
            raise InvariantViolation(f"step {n}: {exc}") from exc
        if sum(coloring.counts) != dg.n_vertices or min(dg.out_degree) < 1:
            raise InvariantViolation(f"step {n}: color counts or out-degrees inconsistent")
    return steps
