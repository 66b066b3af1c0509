# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled growth, k-color and urn loops.

Consumes random numbers in exactly the same order as ``_pycore`` so the two
backends produce identical results for identical seeds.
"""

from libc.stdint cimport uint64_t, uint32_t, int64_t, int32_t, int8_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

import numpy as np

cdef enum:
    C_FIXED = 0
    C_BERNOULLI = 1
    C_PREFERENTIAL = 2
    C_UNIFORM = 3
    C_POLYA = 0

RULE_FIXED = C_FIXED
RULE_BERNOULLI = C_BERNOULLI
RULE_PREFERENTIAL = C_PREFERENTIAL
RULE_UNIFORM = C_UNIFORM
URN_POLYA = 0
URN_FRIEDMAN01 = 1


cdef struct Rng:
    uint64_t s0, s1, s2, s3


cdef inline uint64_t mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline void rng_seed(Rng* r, uint64_t seed) noexcept nogil:
    cdef uint64_t x = seed
    x += 0x9E3779B97F4A7C15ULL
    r.s0 = mix(x)
    x += 0x9E3779B97F4A7C15ULL
    r.s1 = mix(x)
    x += 0x9E3779B97F4A7C15ULL
    r.s2 = mix(x)
    x += 0x9E3779B97F4A7C15ULL
    r.s3 = mix(x)


cdef inline uint64_t rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t next64(Rng* r) noexcept nogil:
    cdef uint64_t result = rotl(r.s1 * 5, 7) * 9
    cdef uint64_t t = r.s1 << 17
    r.s2 ^= r.s0
    r.s3 ^= r.s1
    r.s1 ^= r.s2
    r.s0 ^= r.s3
    r.s2 ^= t
    r.s3 = rotl(r.s3, 45)
    return result


cdef inline uint32_t randbelow(Rng* r, uint32_t n) noexcept nogil:
    cdef uint64_t m = (next64(r) >> 32) * <uint64_t>n
    cdef uint32_t low = <uint32_t>m
    cdef uint32_t t
    if low < n:
        t = (<uint32_t>(0 - n)) % n
        while low < t:
            m = (next64(r) >> 32) * <uint64_t>n
            low = <uint32_t>m
    return <uint32_t>(m >> 32)


cdef inline double uniform01(Rng* r) noexcept nogil:
    return (next64(r) >> 11) * (1.0 / 9007199254740992.0)


def mix64(uint64_t z):
    return mix(z)


def raw_stream(uint64_t seed, int count):
    """First ``count`` raw outputs for ``seed`` (cross-backend checks)."""
    cdef Rng r
    rng_seed(&r, seed)
    return [next64(&r) for _ in range(count)]


# Pool-backed adjacency: each vertex owns a block [start, start+cap) of
# ``pool``; a full block is moved to the end of the pool at double size.
cdef struct Adjacency:
    int32_t* pool
    int64_t size
    int64_t capacity
    int64_t* start
    int32_t* cap


cdef int adj_reserve(Adjacency* a, int64_t extra) noexcept nogil:
    cdef int64_t newcap
    cdef int32_t* p
    if a.size + extra <= a.capacity:
        return 0
    newcap = a.capacity * 2
    while newcap < a.size + extra:
        newcap *= 2
    p = <int32_t*>realloc(a.pool, newcap * sizeof(int32_t))
    if p == NULL:
        return -1
    a.pool = p
    a.capacity = newcap
    return 0


cdef inline int adj_push(Adjacency* a, int32_t* deg, int32_t v, int32_t u) noexcept nogil:
    cdef int32_t c
    if deg[v] == a.cap[v]:
        c = a.cap[v] * 2 if a.cap[v] > 0 else 2
        if adj_reserve(a, c) != 0:
            return -1
        memcpy(a.pool + a.size, a.pool + a.start[v], deg[v] * sizeof(int32_t))
        a.start[v] = a.size
        a.cap[v] = c
        a.size += c
    a.pool[a.start[v] + deg[v]] = u
    return 0


cdef struct Growth:
    int rule
    int64_t ell
    double p
    bint use_adj
    bint use_half
    bint use_color
    bint want_trace
    int64_t n
    int64_t nv
    int64_t ne
    int64_t leaves
    int64_t red
    int32_t* deg
    int8_t* col
    int32_t* half
    int64_t* trace
    int64_t trace_stride
    Adjacency adj
    Rng rng


cdef int advance(Growth* g, int64_t target) noexcept nogil:
    """Run steps until ``g.n == target``; returns -1 on allocation failure."""
    cdef int64_t length, k
    cdef int32_t v, w, new
    cdef int32_t* deg = g.deg
    while g.n < target:
        if g.rule == C_FIXED:
            length = g.ell
            v = <int32_t>randbelow(&g.rng, <uint32_t>g.nv)
        elif g.rule == C_BERNOULLI:
            length = 0 if uniform01(&g.rng) < g.p else 1
            v = <int32_t>randbelow(&g.rng, <uint32_t>g.nv)
        elif g.rule == C_PREFERENTIAL:
            length = 0
            v = g.half[randbelow(&g.rng, <uint32_t>(2 * g.ne))]
        else:
            length = 0
            v = <int32_t>randbelow(&g.rng, <uint32_t>g.nv)
        w = v
        for k in range(length):
            w = g.adj.pool[g.adj.start[w] + randbelow(&g.rng, <uint32_t>deg[w])]
        new = <int32_t>g.nv
        if deg[w] == 1:
            g.leaves -= 1
        if g.use_adj:
            if adj_push(&g.adj, deg, w, new) != 0:
                return -1
            g.adj.start[new] = g.adj.size
            g.adj.cap[new] = 0
            deg[new] = 0
            if adj_push(&g.adj, deg, new, w) != 0:
                return -1
        deg[w] += 1
        deg[new] = 1
        if g.use_half:
            g.half[2 * g.ne] = w
            g.half[2 * g.ne + 1] = new
        g.leaves += 1
        if g.use_color:
            g.col[new] = 1 - g.col[w]
            if g.col[new] == 0:
                g.red += 1
        if g.want_trace:
            g.trace[g.n] = v
            g.trace[g.trace_stride + g.n] = length
            g.trace[2 * g.trace_stride + g.n] = w
        g.n += 1
        g.nv += 1
        g.ne += 1
    return 0


cdef void reset(Growth* g, const int64_t[:, :] edges, int64_t v0, const int8_t[:] col0,
                uint64_t seed) noexcept nogil:
    cdef int64_t e0 = edges.shape[0]
    cdef int64_t i, u, x
    cdef int32_t* deg = g.deg
    for i in range(v0):
        deg[i] = 0
    for i in range(e0):
        deg[edges[i, 0]] += 1
        deg[edges[i, 1]] += 1
    g.adj.size = 0
    if g.use_adj:
        for i in range(v0):
            g.adj.start[i] = g.adj.size
            g.adj.cap[i] = deg[i]
            g.adj.size += deg[i]
            deg[i] = 0
        for i in range(e0):
            u = edges[i, 0]
            x = edges[i, 1]
            g.adj.pool[g.adj.start[u] + deg[u]] = <int32_t>x
            deg[u] += 1
            g.adj.pool[g.adj.start[x] + deg[x]] = <int32_t>u
            deg[x] += 1
    if g.use_half:
        for i in range(e0):
            g.half[2 * i] = <int32_t>edges[i, 0]
            g.half[2 * i + 1] = <int32_t>edges[i, 1]
    g.leaves = 0
    g.red = 0
    for i in range(v0):
        if deg[i] == 1:
            g.leaves += 1
        if g.use_color:
            g.col[i] = col0[i]
            if col0[i] == 0:
                g.red += 1
    g.n = 0
    g.nv = v0
    g.ne = e0
    rng_seed(&g.rng, seed)


def simulate_undirected(const int64_t[:, :] edges, int64_t v0, int rule, int64_t ell, double p,
                        int64_t steps, const uint64_t[:] seeds, const int64_t[:] checkpoints,
                        colors=None, bint want_hist=False, bint want_trace=False):
    cdef int64_t e0 = edges.shape[0]
    cdef int64_t n_total = v0 + steps
    cdef Py_ssize_t R = seeds.shape[0]
    cdef Py_ssize_t C = checkpoints.shape[0]
    cdef Py_ssize_t r, ci
    cdef int64_t target
    cdef int rc = 0
    cdef Growth g
    cdef const int8_t[:] col0 = np.ascontiguousarray(
        colors if colors is not None else np.zeros(v0), dtype=np.int8)

    leaves_out = np.zeros((R, C), dtype=np.int64)
    red_out = np.zeros((R, C), dtype=np.int64)
    cdef int64_t[:, :] leaves_mv = leaves_out
    cdef int64_t[:, :] red_mv = red_out
    trace_arr = np.zeros((3, steps if want_trace else 1), dtype=np.int64)
    cdef int64_t[:, ::1] trace_mv = trace_arr
    hists = [] if want_hist else None

    g.rule = rule
    g.ell = ell
    g.p = p
    g.use_adj = rule == C_BERNOULLI or (rule == C_FIXED and ell > 0)
    g.use_half = rule == C_PREFERENTIAL
    g.use_color = colors is not None
    g.want_trace = want_trace
    g.trace = &trace_mv[0, 0]
    g.trace_stride = trace_mv.shape[1]
    g.deg = <int32_t*>malloc(n_total * sizeof(int32_t))
    g.col = <int8_t*>malloc(n_total * sizeof(int8_t))
    g.half = <int32_t*>malloc(2 * (e0 + steps) * sizeof(int32_t)) if g.use_half else NULL
    g.adj.start = <int64_t*>malloc(n_total * sizeof(int64_t))
    g.adj.cap = <int32_t*>malloc(n_total * sizeof(int32_t))
    g.adj.capacity = 4 * (e0 + steps) + 16
    g.adj.pool = <int32_t*>malloc(g.adj.capacity * sizeof(int32_t))
    try:
        if g.deg == NULL or g.col == NULL or g.adj.start == NULL or g.adj.cap == NULL \
                or g.adj.pool == NULL or (g.use_half and g.half == NULL):
            raise MemoryError()
        for r in range(R):
            replica_hists = []
            with nogil:
                reset(&g, edges, v0, col0, seeds[r])
            for ci in range(C + 1):
                target = checkpoints[ci] if ci < C else steps
                with nogil:
                    rc = advance(&g, target)
                if rc != 0:
                    raise MemoryError("adjacency pool allocation failed")
                if ci == C:
                    break
                leaves_mv[r, ci] = g.leaves
                red_mv[r, ci] = g.red
                if want_hist:
                    replica_hists.append(
                        np.bincount(np.asarray(<int32_t[:g.nv]>g.deg)).astype(np.int64))
            if want_hist:
                hists.append(replica_hists)
    finally:
        free(g.deg)
        free(g.col)
        free(g.half)
        free(g.adj.start)
        free(g.adj.cap)
        free(g.adj.pool)

    out = {"leaves": leaves_out}
    if g.use_color:
        out["red"] = red_out
    if want_hist:
        out["hist"] = hists
    if want_trace:
        out["trace"] = trace_arr
    return out


def simulate_directed(const int64_t[:, :] edges, int64_t v0, int64_t ell, int64_t steps,
                      const uint64_t[:] seeds, const int64_t[:] checkpoints, colors, int k,
                      bint want_trace=False):
    cdef int64_t e0 = edges.shape[0]
    cdef int64_t n_total = v0 + steps
    cdef Py_ssize_t R = seeds.shape[0]
    cdef Py_ssize_t C = checkpoints.shape[0]
    cdef const int32_t[:] col0 = np.ascontiguousarray(colors, dtype=np.int32)

    counts_out = np.zeros((R, C, k), dtype=np.int64)
    cdef int64_t[:, :, :] counts_mv = counts_out
    trace_arr = np.zeros((2, steps if want_trace else 0), dtype=np.int64)
    cdef int64_t[:, :] trace_mv = trace_arr

    # CSR out-adjacency; G0 rows keep edge order, new rows hold one target each
    cdef int64_t* off = <int64_t*>malloc((n_total + 1) * sizeof(int64_t))
    cdef int32_t* tgt = <int32_t*>malloc((e0 + steps) * sizeof(int32_t))
    cdef int32_t* col = <int32_t*>malloc(n_total * sizeof(int32_t))
    cdef int64_t* cnt = <int64_t*>malloc(k * sizeof(int64_t))
    cdef int64_t* fill = <int64_t*>malloc(v0 * sizeof(int64_t))

    cdef Rng rng
    cdef Py_ssize_t r, ci
    cdef int64_t i, n, nv, j, u
    cdef int32_t v, w, c

    try:
        if off == NULL or tgt == NULL or col == NULL or cnt == NULL or fill == NULL:
            raise MemoryError()
        with nogil:
            for i in range(v0 + 1):
                off[i] = 0
            for i in range(e0):
                off[edges[i, 0] + 1] += 1
            for i in range(v0):
                off[i + 1] += off[i]
                fill[i] = off[i]
            for i in range(e0):
                u = edges[i, 0]
                tgt[fill[u]] = <int32_t>edges[i, 1]
                fill[u] += 1
            for r in range(R):
                for j in range(k):
                    cnt[j] = 0
                for i in range(v0):
                    col[i] = col0[i]
                    cnt[col[i]] += 1
                nv = v0
                rng_seed(&rng, seeds[r])
                ci = 0
                n = 0
                while ci < C and checkpoints[ci] == 0:
                    for j in range(k):
                        counts_mv[r, ci, j] = cnt[j]
                    ci += 1
                while n < steps:
                    n += 1
                    v = <int32_t>randbelow(&rng, <uint32_t>nv)
                    w = v
                    for j in range(ell):
                        w = tgt[off[w] + randbelow(&rng, <uint32_t>(off[w + 1] - off[w]))]
                    tgt[off[nv]] = w
                    off[nv + 1] = off[nv] + 1
                    c = (col[w] + k - 1) % k
                    col[nv] = c
                    cnt[c] += 1
                    if want_trace:
                        trace_mv[0, n - 1] = v
                        trace_mv[1, n - 1] = w
                    nv += 1
                    while ci < C and checkpoints[ci] == n:
                        for j in range(k):
                            counts_mv[r, ci, j] = cnt[j]
                        ci += 1
    finally:
        free(off)
        free(tgt)
        free(col)
        free(cnt)
        free(fill)

    out = {"counts": counts_out}
    if want_trace:
        out["trace"] = trace_arr
    return out


def urn_ensemble(int64_t red0, int64_t blue0, int rule, int64_t steps,
                 const uint64_t[:] seeds, const int64_t[:] checkpoints):
    cdef Py_ssize_t R = seeds.shape[0]
    cdef Py_ssize_t C = checkpoints.shape[0]
    red_out = np.zeros((R, C), dtype=np.int64)
    cdef int64_t[:, :] red_mv = red_out
    cdef Rng rng
    cdef Py_ssize_t r, ci
    cdef int64_t n, red, blue
    cdef bint drew_red
    with nogil:
        for r in range(R):
            red = red0
            blue = blue0
            rng_seed(&rng, seeds[r])
            ci = 0
            n = 0
            while ci < C and checkpoints[ci] == 0:
                red_mv[r, ci] = red
                ci += 1
            while n < steps:
                n += 1
                drew_red = randbelow(&rng, <uint32_t>(red + blue)) < red
                if drew_red == (rule == C_POLYA):
                    red += 1
                else:
                    blue += 1
                while ci < C and checkpoints[ci] == n:
                    red_mv[r, ci] = red
                    ci += 1
    return red_out
