"""Ensemble execution and CSV output.

Every replica draws from its own stream seeded by
``derive_replica_seed(master_seed, replica_index)``, and replicas are split
into contiguous chunks, so results do not depend on the thread count.
"""

import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import core
from .rng import derive_replica_seed
from .stats import checkpoint_schedule, summarize, EnsembleSummary

RULE_CODES = {
    "fixed_walk": core.RULE_FIXED,
    "bernoulli_walk": core.RULE_BERNOULLI,
    "preferential": core.RULE_PREFERENTIAL,
    "uniform": core.RULE_UNIFORM,
}
URN_CODES = {"polya": core.URN_POLYA, "friedman": core.URN_FRIEDMAN01}


def resolve_threads(threads=None):
    if threads is None:
        threads = int(os.environ.get("RWA_THREADS", "1") or 1)
    return max(1, int(threads))


def replica_seeds(master_seed, replicas):
    return np.array([derive_replica_seed(master_seed, i) for i in range(replicas)], dtype=np.uint64)


def _chunked(fn, seeds, threads):
    """Run ``fn(seed_chunk)`` over contiguous chunks and return results in order."""
    if threads == 1 or len(seeds) < 2:
        return [fn(seeds)]
    size = max(1, -(-len(seeds) // (threads * 4)))
    chunks = [seeds[i:i + size] for i in range(0, len(seeds), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


@dataclass
class EnsembleResult:
    checkpoints: list
    v0: int
    e0: int
    leaves: np.ndarray | None = None        # replicas x checkpoints
    red: np.ndarray | None = None           # replicas x checkpoints
    color_counts: np.ndarray | None = None  # replicas x checkpoints x k
    hists: list | None = None               # [replica][checkpoint] -> counts by degree
    trace: np.ndarray | None = None         # rows v, length, w (undirected) or v, w
    summary: EnsembleSummary | None = None

    @property
    def vertices(self):
        return self.v0 + np.asarray(self.checkpoints)

    @property
    def edges(self):
        return self.e0 + np.asarray(self.checkpoints)


def run_ensemble(cfg, threads=None, want_trace=False):
    from .config import load_initial

    threads = resolve_threads(threads if threads is not None else cfg.threads)
    g, coloring = load_initial(cfg)
    cps = checkpoint_schedule(cfg.steps, cfg.checkpoints)
    cps_arr = np.array(cps, dtype=np.int64)
    edges = np.array(g.initial_edges, dtype=np.int64).reshape(-1, 2)
    seeds = replica_seeds(cfg.seed, cfg.replicas)
    trace = want_trace and cfg.replicas == 1
    res = EnsembleResult(cps, g.v0, g.e0)
    verts = res.vertices.astype(float)

    if cfg.coloring == "kcolor":
        colors = np.array(coloring.color, dtype=np.int32)

        def work(chunk):
            return core.simulate_directed(edges, g.v0, cfg.l, cfg.steps, chunk, cps_arr, colors,
                                          cfg.k, trace)

        parts = _chunked(work, seeds, threads)
        res.color_counts = np.concatenate([part["counts"] for part in parts])
        if trace:
            res.trace = parts[0]["trace"]
        observables = {f"color{j}": res.color_counts[:, :, j] / verts for j in range(cfg.k)}
    else:
        colors = np.array(coloring.color, dtype=np.int8) if coloring is not None else None
        code = RULE_CODES[cfg.rule]
        p = float(cfg.p) if cfg.p is not None else 0.0

        def work(chunk):
            return core.simulate_undirected(edges, g.v0, code, cfg.l, p, cfg.steps, chunk, cps_arr,
                                            colors, cfg.degrees, trace)

        parts = _chunked(work, seeds, threads)
        res.leaves = np.concatenate([part["leaves"] for part in parts])
        observables = {"L": res.leaves / verts}
        if colors is not None:
            res.red = np.concatenate([part["red"] for part in parts])
            observables["R"] = res.red / verts
        if cfg.degrees:
            res.hists = [h for part in parts for h in part["hist"]]
        if trace:
            res.trace = parts[0]["trace"]

    res.summary = EnsembleSummary(cps, cfg.replicas,
                                  {k: summarize(v, cfg.keep_samples) for k, v in observables.items()})
    return res


@dataclass
class UrnResult:
    checkpoints: list
    total0: int
    red: np.ndarray  # replicas x checkpoints
    summary: EnsembleSummary

    @property
    def fractions(self):
        return self.red / (self.total0 + np.asarray(self.checkpoints))


def run_urn(red, blue, rule, steps, replicas, seed, threads=None, extra_checkpoints=(),
            keep_samples=False):
    if rule not in URN_CODES:
        raise ValueError(f"urn rule must be one of {', '.join(URN_CODES)}, got {rule!r}")
    if red < 0 or blue < 0 or red + blue < 1:
        raise ValueError(f"empty urn ({red}, {blue})")
    cps = checkpoint_schedule(steps, extra_checkpoints)
    cps_arr = np.array(cps, dtype=np.int64)
    seeds = replica_seeds(seed, replicas)
    parts = _chunked(lambda chunk: core.urn_ensemble(red, blue, URN_CODES[rule], steps, chunk, cps_arr),
                     seeds, resolve_threads(threads))
    reds = np.concatenate(parts)
    frac = reds / (red + blue + cps_arr)
    summary = EnsembleSummary(cps, replicas, {"R": summarize(frac, keep_samples)})
    return UrnResult(cps, red + blue, reds, summary)


# CSV output

def fmt(x):
    """17 significant digits for floats; integers verbatim; empty for missing."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if np.isnan(x):
        return ""
    return format(x, ".17g")


def write_csv(path, header, rows):
    """Write atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(fmt(x) for x in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


SUMMARY_HEADER = ["n", "observable", "mean", "variance", "se", "min", "max", "replicas"]
TRAJECTORY_HEADER = ["replica", "n", "vertices", "edges", "leaves", "L", "red", "R"]


def summary_rows(summary):
    for i, n in enumerate(summary.checkpoints):
        for name, s in summary.observables.items():
            yield (n, name, s.mean[i], s.variance[i], s.se[i], s.min[i], s.max[i], summary.replicas)


def write_summary(path, summary):
    write_csv(path, SUMMARY_HEADER, summary_rows(summary))


def trajectory_rows(res):
    verts, edges = res.vertices, res.edges
    for r in range(len(res.leaves) if res.leaves is not None else len(res.color_counts)):
        for i, n in enumerate(res.checkpoints):
            leaves = res.leaves[r, i] if res.leaves is not None else None
            red = res.red[r, i] if res.red is not None else None
            yield (r, n, verts[i], edges[i], leaves,
                   None if leaves is None else leaves / verts[i],
                   red, None if red is None else red / verts[i])


def write_trajectories(path, res):
    write_csv(path, TRAJECTORY_HEADER, trajectory_rows(res))


def write_degrees(path, res):
    def rows():
        for r, per_cp in enumerate(res.hists):
            for n, counts in zip(res.checkpoints, per_cp):
                for d in np.flatnonzero(counts):
                    yield (r, n, d, counts[d])

    write_csv(path, ["replica", "n", "degree", "count"], rows())


def write_colors(path, res):
    def rows():
        for r in range(res.color_counts.shape[0]):
            for i, n in enumerate(res.checkpoints):
                for j, c in enumerate(res.color_counts[r, i]):
                    yield (r, n, j, c)

    write_csv(path, ["replica", "n", "color", "count"], rows())


def write_trace(path, res):
    t = res.trace
    if t.shape[0] == 3:
        rows = ((n + 1, t[0, n], t[1, n], t[2, n], res.v0 + n) for n in range(t.shape[1]))
        write_csv(path, ["n", "v", "length", "w", "new_vertex"], rows)
    else:
        rows = ((n + 1, t[0, n], t[1, n], res.v0 + n) for n in range(t.shape[1]))
        write_csv(path, ["n", "v", "w", "new_vertex"], rows)


def write_urn_trajectories(path, res):
    def rows():
        for r in range(res.red.shape[0]):
            for i, n in enumerate(res.checkpoints):
                total = res.total0 + n
                yield (r, n, total, None, None, None, res.red[r, i], res.red[r, i] / total)

    write_csv(path, TRAJECTORY_HEADER, rows())


def write_bounds(path, rows):
    write_csv(path, ["p", "threshold_lower_root", "threshold_upper", "gap"], rows)
