"""Checkpoint schedules, ensemble moments, and the statistical tests used on ensembles."""

from dataclasses import dataclass, field

import numpy as np
from scipy import stats as sps


def checkpoint_schedule(total_steps, extra=()):
    """Powers of two up to ``total_steps`` plus ``total_steps`` itself (and ``extra``)."""
    if total_steps < 1:
        raise ValueError("total_steps must be >= 1")
    marks = {total_steps}
    k = 1
    while k <= total_steps:
        marks.add(k)
        k *= 2
    marks.update(e for e in extra if 1 <= e <= total_steps)
    return sorted(marks)


@dataclass
class ObservableSummary:
    mean: np.ndarray
    variance: np.ndarray  # NaN when only one replica
    se: np.ndarray
    min: np.ndarray
    max: np.ndarray
    samples: np.ndarray | None = None  # replicas x checkpoints


@dataclass
class EnsembleSummary:
    checkpoints: list
    replicas: int
    observables: dict = field(default_factory=dict)

    @property
    def variance_defined(self):
        return self.replicas > 1

    def __getitem__(self, name):
        return self.observables[name]

    def at(self, name, n):
        """Summary of ``name`` at checkpoint ``n`` as a plain dict."""
        i = self.checkpoints.index(n)
        s = self.observables[name]
        return {k: getattr(s, k)[i] for k in ("mean", "variance", "se", "min", "max")}


def aggregate(checkpoints, records, keep_samples=False):
    """Reduce per-replica records to ensemble moments.

    ``records`` is a sequence of ``(checkpoints, {observable: values})`` pairs,
    one per replica, with values aligned to that replica's checkpoints.
    """
    checkpoints = list(checkpoints)
    if not records:
        raise ValueError("no replicas to aggregate")
    names = list(records[0][1])
    for i, (cps, obs) in enumerate(records):
        if list(cps) != checkpoints:
            raise ValueError(f"replica {i} has a different checkpoint schedule")
        if list(obs) != names:
            raise ValueError(f"replica {i} tracks different observables")
    r = len(records)
    summary = EnsembleSummary(checkpoints, r)
    for name in names:
        x = np.array([np.asarray(obs[name], dtype=float) for _, obs in records])
        summary.observables[name] = summarize(x, keep_samples)
    return summary


def summarize(x, keep_samples=False):
    """Moments of a replicas x checkpoints array."""
    r = x.shape[0]
    mean = x.mean(axis=0)
    if r > 1:
        var = x.var(axis=0, ddof=1)
        se = np.sqrt(var / r)
    else:
        var = np.full(x.shape[1], np.nan)
        se = np.full(x.shape[1], np.nan)
    return ObservableSummary(mean, var, se, x.min(axis=0), x.max(axis=0), x if keep_samples else None)


def two_sample_ks(a, b):
    """Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / a.size
    cdf_b = np.searchsorted(b, grid, side="right") / b.size
    d = float(np.max(np.abs(cdf_a - cdf_b)))
    ne = a.size * b.size / (a.size + b.size)
    return d, float(sps.kstwobign.sf(np.sqrt(ne) * d))


def chi_square_uniformity(counts, probabilities):
    """Pearson chi-square p-value of observed ``counts`` against ``probabilities``."""
    counts = np.asarray(counts, dtype=float)
    expected = counts.sum() * np.asarray(probabilities, dtype=float)
    return float(sps.chisquare(counts, expected).pvalue)


def nonleaf_mean_degree(g):
    """Average degree over vertices of degree >= 2."""
    nonleaves = g.n_vertices - g.leaf_count
    if nonleaves == 0:
        raise ValueError("every vertex is a leaf")
    return (2 * g.n_edges - g.leaf_count) / nonleaves


def nonleaf_mean_degree_closed_form(L, n, v0, e0):
    """Same quantity written through the leaf fraction ``L`` alone."""
    return (2 - L) / (1 - L) + 2 * (e0 - v0) / ((n + v0) * (1 - L))
