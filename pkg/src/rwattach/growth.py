"""Attachment rules and the sequential growth loop.

Random draws per step, in order:

* ``FixedWalk(l)``: start vertex, then one neighbor choice per walk step.
* ``BernoulliWalk(p)``: one uniform double (walk length 0 if it is below
  ``p``, else 1), then as ``FixedWalk``.
* ``Preferential``: one uniform half-edge index.
* ``Uniform``: one uniform vertex.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple


@dataclass(frozen=True)
class FixedWalk:
    length: int = 1

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"walk length must be >= 0, got {self.length}")


@dataclass(frozen=True)
class BernoulliWalk:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability out of range: p={self.p}")


@dataclass(frozen=True)
class Preferential:
    pass


@dataclass(frozen=True)
class Uniform:
    pass


GrowthRule = FixedWalk | BernoulliWalk | Preferential | Uniform


class StepTrace(NamedTuple):
    n: int
    v: int
    realized_length: int
    w: int
    new_vertex: int


def select_target(g, rule, rng):
    """Return ``(v, realized_length, w)``; the new vertex will attach to ``w``.

    For Preferential there is no start vertex, so ``v`` is recorded as ``w``.
    """
    if isinstance(rule, FixedWalk):
        v = g.uniform_vertex(rng)
        return v, rule.length, g.random_walk(v, rule.length, rng)
    if isinstance(rule, BernoulliWalk):
        length = 0 if rng.random() < rule.p else 1
        v = g.uniform_vertex(rng)
        return v, length, g.random_walk(v, length, rng)
    if isinstance(rule, Preferential):
        w = g.degree_proportional_vertex(rng)
        return w, 0, w
    if isinstance(rule, Uniform):
        v = g.uniform_vertex(rng)
        return v, 0, v
    raise TypeError(f"not a growth rule: {rule!r}")


def grow(g0, rule, steps, rng, observers: Iterable[Callable] = (), debug=False, copy=True):
    """Apply ``steps`` attachment steps; return ``(graph, traces)``.

    Each observer is called as ``observer(graph, trace)`` after every step.
    With ``debug`` the graph invariants are audited after each step.
    """
    g = g0.copy() if copy else g0
    observers = list(observers)
    traces = []
    for _ in range(steps):
        v, length, w = select_target(g, rule, rng)
        new = g.attach_new_vertex(w)
        trace = StepTrace(g.steps_taken, v, length, w, new)
        traces.append(trace)
        if debug:
            g.check_invariants()
        for obs in observers:
            obs(g, trace)
    return g, traces


def leaf_transition_check(before, trace, after):
    """Check the leaf-count bookkeeping of one length-1 walk step.

    Returns a list of violated clauses; an empty list means the step is
    consistent.  The "leaf start adds a leaf" clause only applies when
    ``before`` is not a star.
    """
    failures = []
    delta = after.leaf_count - before.leaf_count
    if abs(delta) > 1:
        failures.append(f"|leaf delta| = {abs(delta)} > 1")
    if not before.is_star() and before.degree[trace.v] == 1 and delta != 1:
        failures.append(f"start vertex {trace.v} was a leaf but leaf delta = {delta}, expected +1")
    if trace.realized_length == 0 and trace.w != trace.v:
        failures.append(f"length-0 walk ended at {trace.w} != start {trace.v}")
    if trace.realized_length == 1 and trace.w not in before.adjacency[trace.v]:
        failures.append(f"length-1 walk ended at {trace.w}, not a neighbor of {trace.v}")
    return failures
