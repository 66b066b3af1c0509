"""Growing simple graphs with the sampling primitives used by the growth rules.

Vertex ids are dense integers in creation order; the initial graph owns
``0..v0-1`` and the vertex added at step ``n`` (1-based) gets ``v0 + n - 1``.
Neighbor lists keep insertion order, which fixes which neighbor a given random
draw selects and keeps traces reproducible across backends.
"""

from collections import Counter


class GraphError(ValueError):
    """Invalid initial graph or reference to a vertex that does not exist."""


class InvariantViolation(RuntimeError):
    """A structural invariant failed during growth."""


class Graph:
    """Undirected simple graph that only ever grows by pendant vertices."""

    def __init__(self, n_vertices, edges):
        edges = [(int(u), int(v)) for u, v in edges]
        if n_vertices <= 0 or not edges:
            raise GraphError("empty graph")
        adjacency = [[] for _ in range(n_vertices)]
        seen = set()
        for u, v in edges:
            if u < 0 or v < 0 or u >= n_vertices or v >= n_vertices:
                raise GraphError(f"edge ({u}, {v}) references a vertex outside 0..{n_vertices - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adjacency[u].append(v)
            adjacency[v].append(u)
        isolated = [v for v in range(n_vertices) if not adjacency[v]]
        if isolated:
            raise GraphError(f"isolated vertex {isolated[0]} (degree 0)")

        self.v0 = n_vertices
        self.e0 = len(edges)
        self.adjacency = adjacency
        self.degree = [len(a) for a in adjacency]
        self.half_edges = [x for e in edges for x in e]
        self.steps_taken = 0
        self.leaf_count = sum(1 for d in self.degree if d == 1)
        self.initial_edges = edges

    @property
    def n_vertices(self):
        return self.v0 + self.steps_taken

    @property
    def n_edges(self):
        return self.e0 + self.steps_taken

    def copy(self):
        g = object.__new__(Graph)
        g.v0, g.e0, g.steps_taken = self.v0, self.e0, self.steps_taken
        g.adjacency = [list(a) for a in self.adjacency]
        g.degree = list(self.degree)
        g.half_edges = list(self.half_edges)
        g.leaf_count = self.leaf_count
        g.initial_edges = self.initial_edges
        return g

    def edges(self):
        """All edges ``(u, v)`` with ``u < v``."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def _check_vertex(self, v):
        if not 0 <= v < self.n_vertices:
            raise GraphError(f"unknown vertex {v}")

    # sampling primitives

    def uniform_vertex(self, rng):
        return rng.randbelow(self.n_vertices)

    def random_walk(self, start, length, rng):
        """Endpoint of a simple random walk of ``length`` steps from ``start``."""
        self._check_vertex(start)
        v = start
        adjacency = self.adjacency
        for _ in range(length):
            nbrs = adjacency[v]
            v = nbrs[rng.randbelow(len(nbrs))]
        return v

    def degree_proportional_vertex(self, rng):
        return self.half_edges[rng.randbelow(len(self.half_edges))]

    def attach_new_vertex(self, target):
        """Add a vertex joined to ``target`` by one edge and return its id."""
        self._check_vertex(target)
        new = self.n_vertices
        if self.degree[target] == 1:
            self.leaf_count -= 1
        self.adjacency[target].append(new)
        self.adjacency.append([target])
        self.degree[target] += 1
        self.degree.append(1)
        self.half_edges.append(target)
        self.half_edges.append(new)
        self.leaf_count += 1
        self.steps_taken += 1
        return new

    # queries

    def is_star(self):
        n = self.n_vertices
        hubs = [d for d in self.degree if d == n - 1]
        others = [d for d in self.degree if d != n - 1]
        if n == 2:
            return True
        return len(hubs) == 1 and all(d == 1 for d in others)

    def degree_histogram(self):
        return dict(sorted(Counter(self.degree).items()))

    def check_invariants(self):
        """Raise :class:`InvariantViolation` if any bookkeeping identity fails."""
        n, m = self.n_vertices, self.n_edges
        problems = []
        if len(self.adjacency) != n or len(self.degree) != n:
            problems.append(f"vertex count {len(self.adjacency)} != v0 + n = {n}")
        if sum(self.degree) != 2 * m:
            problems.append(f"degree sum {sum(self.degree)} != 2(e0 + n) = {2 * m}")
        if len(self.half_edges) != 2 * m:
            problems.append(f"half-edge count {len(self.half_edges)} != {2 * m}")
        if Counter(self.half_edges) != Counter({v: d for v, d in enumerate(self.degree)}):
            problems.append("half-edge multiset differs from degree sequence")
        for v, nbrs in enumerate(self.adjacency):
            if len(nbrs) != self.degree[v]:
                problems.append(f"degree[{v}] = {self.degree[v]} but {len(nbrs)} neighbors")
            if v in nbrs:
                problems.append(f"self-loop at {v}")
            if len(set(nbrs)) != len(nbrs):
                problems.append(f"multi-edge at {v}")
            if not nbrs:
                problems.append(f"isolated vertex {v}")
        leaves = sum(1 for d in self.degree if d == 1)
        if leaves != self.leaf_count:
            problems.append(f"cached leaf count {self.leaf_count} != {leaves}")
        if problems:
            raise InvariantViolation("; ".join(problems))


class DirectedGraph:
    """Directed graph where each new vertex gets exactly one out-edge."""

    def __init__(self, n_vertices, edges):
        edges = [(int(u), int(v)) for u, v in edges]
        if n_vertices <= 0 or not edges:
            raise GraphError("empty graph")
        out = [[] for _ in range(n_vertices)]
        seen = set()
        for u, v in edges:
            if u < 0 or v < 0 or u >= n_vertices or v >= n_vertices:
                raise GraphError(f"edge ({u}, {v}) references a vertex outside 0..{n_vertices - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            out[u].append(v)
        sinks = [v for v in range(n_vertices) if not out[v]]
        if sinks:
            raise GraphError(f"vertex {sinks[0]} has out-degree 0")
        self.v0 = n_vertices
        self.e0 = len(edges)
        self.out_adjacency = out
        self.out_degree = [len(a) for a in out]
        self.steps_taken = 0
        self.initial_edges = edges

    @property
    def n_vertices(self):
        return self.v0 + self.steps_taken

    def uniform_vertex(self, rng):
        return rng.randbelow(self.n_vertices)

    def random_walk(self, start, length, rng):
        if not 0 <= start < self.n_vertices:
            raise GraphError(f"unknown vertex {start}")
        v = start
        for _ in range(length):
            nbrs = self.out_adjacency[v]
            v = nbrs[rng.randbelow(len(nbrs))]
        return v

    def attach_new_vertex(self, target):
        """Add a vertex with the single out-edge ``new -> target``."""
        if not 0 <= target < self.n_vertices:
            raise GraphError(f"unknown vertex {target}")
        new = self.n_vertices
        self.out_adjacency.append([target])
        self.out_degree.append(1)
        self.steps_taken += 1
        return new

    def edges(self):
        return [(u, v) for u, nbrs in enumerate(self.out_adjacency) for v in nbrs]


# initial graphs

def path(n):
    if n < 2:
        raise GraphError("path needs at least 2 vertices")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    if leaves < 2:
        raise GraphError("star needs at least 2 leaves")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(r, b):
    """K_{r,b}: vertices ``0..r-1`` on one side, ``r..r+b-1`` on the other."""
    if r < 1 or b < 1:
        raise GraphError("complete_bipartite needs r >= 1 and b >= 1")
    return Graph(r + b, [(i, r + j) for i in range(r) for j in range(b)])


def directed_cycle(n):
    if n < 2:
        raise GraphError("directed cycle needs at least 2 vertices")
    return DirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def read_edge_list(path_):
    """Parse an edge-list file: one ``u v`` pair per line, 0-indexed."""
    edges = []
    with open(path_, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise GraphError(f"{path_}:{lineno}: expected two non-negative integers, got {line.rstrip()!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if not edges:
        raise GraphError(f"{path_}: empty graph")
    return edges


GENERATORS = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "star": (star, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "directed_cycle": (directed_cycle, 1),
}


def build_g0(spec, directed=False):
    """Build an initial graph from ``name:args`` or ``file:PATH``.

    Examples: ``path:4``, ``cycle:6``, ``star:5``, ``complete_bipartite:2,3``,
    ``directed_cycle:3``, ``file:edges.txt``.  File input is read as
    directed when ``directed`` is set.
    """
    name, _, arg = spec.partition(":")
    name = name.strip()
    if name == "file":
        edges = read_edge_list(arg)
        n = max(max(e) for e in edges) + 1
        return DirectedGraph(n, edges) if directed else Graph(n, edges)
    if name not in GENERATORS:
        raise GraphError(f"unknown graph generator {name!r}")
    fn, arity = GENERATORS[name]
    try:
        args = [int(a) for a in arg.split(",")] if arg else []
    except ValueError:
        raise GraphError(f"non-integer parameter in {spec!r}") from None
    if len(args) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s), got {len(args)}")
    g = fn(*args)
    if directed != isinstance(g, DirectedGraph):
        kind = "directed" if directed else "undirected"
        raise GraphError(f"{spec!r} does not describe a {kind} graph")
    return g
