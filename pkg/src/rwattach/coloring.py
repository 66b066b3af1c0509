"""Red/blue tracking on bipartite graphs and k-color tracking on directed graphs."""

from collections import deque

from .graph import GraphError

RED, BLUE = 0, 1


class NotBipartite(GraphError):
    pass


class TwoColoring:
    """Proper 2-coloring; ``color[v]`` is ``RED`` (0) or ``BLUE`` (1)."""

    def __init__(self, color):
        self.color = list(color)
        self.red_count = sum(1 for c in self.color if c == RED)

    @property
    def red_fraction(self):
        return self.red_count / len(self.color)

    def propagate(self, trace):
        """Color the vertex added by ``trace`` opposite to its attachment target."""
        c = 1 - self.color[trace.w]
        if trace.new_vertex != len(self.color):
            raise ValueError(f"trace adds vertex {trace.new_vertex}, coloring has {len(self.color)}")
        self.color.append(c)
        if c == RED:
            self.red_count += 1

    def __call__(self, g, trace):
        # lets a coloring be passed straight to grow() as an observer
        self.propagate(trace)

    def check_proper(self, g):
        bad = [(u, v) for u, v in g.edges() if self.color[u] == self.color[v]]
        if bad:
            raise GraphError(f"edge {bad[0]} joins two vertices of the same color")
        if self.red_count != self.color.count(RED):
            raise GraphError("cached red count is stale")


def bipartite_2color(g):
    """Breadth-first 2-coloring; the lowest id of every component is red."""
    color = [-1] * g.n_vertices
    for root in range(g.n_vertices):
        if color[root] != -1:
            continue
        color[root] = RED
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    raise NotBipartite(f"odd cycle through edge ({u}, {v}); graph is not bipartite")
    return TwoColoring(color)


class KColoring:
    """Colors in ``0..k-1`` with every edge ``u -> v`` satisfying ``c(v) = c(u) + 1 mod k``."""

    def __init__(self, k, color):
        if k < 2:
            raise ValueError(f"k must be >= 2, got {k}")
        self.k = k
        self.color = list(color)
        self.counts = [0] * k
        for c in self.color:
            self.counts[c] += 1

    def proportions(self):
        n = len(self.color)
        return [c / n for c in self.counts]

    def check_proper(self, dg):
        for u, v in dg.edges():
            if self.color[v] != (self.color[u] + 1) % self.k:
                raise GraphError(f"edge {u}->{v} goes from color {self.color[u]} to {self.color[v]}")


def directed_kcolor(dg, k):
    """Derive the unique cyclic coloring with vertex 0 (and each component anchor) at color 0."""
    n = dg.n_vertices
    undirected = [[] for _ in range(n)]
    for u, v in dg.edges():
        undirected[u].append((v, 1))
        undirected[v].append((u, -1))
    color = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, step in undirected[u]:
                want = (color[u] + step) % k
                if color[v] == -1:
                    color[v] = want
                    queue.append(v)
                elif color[v] != want:
                    raise GraphError(f"no consistent {k}-coloring: conflict at vertex {v}")
    return KColoring(k, color)


def kcolor_grow_step(dg, coloring, length, rng):
    """One k-color growth step; returns ``(v, w, new_vertex)``.

    The new vertex gets color ``c(w) - 1 mod k`` and the edge ``new -> w``,
    which is the only choice keeping every edge color-increasing.
    """
    v = dg.uniform_vertex(rng)
    w = dg.random_walk(v, length, rng)
    new = dg.attach_new_vertex(w)
    c = (coloring.color[w] - 1) % coloring.k
    coloring.color.append(c)
    coloring.counts[c] += 1
    return v, w, new
