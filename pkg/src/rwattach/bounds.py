"""Closed-form drift bounds and thresholds for the leaf fraction.

``lam`` is the current leaf fraction, ``p`` the probability of a zero-length
walk.  The drift functions return the bracketed numerators only; multiply by
``1 / (n + v0 + 1)`` for the per-step expected change.
"""

import math


def leaf_increment_bound(proportions, n, v0):
    """Lower bound on the expected one-step leaf-fraction gain from the degree mix.

    A start vertex of degree ``d`` reaches a non-leaf with probability at least
    ``1/d``, giving ``sum_{d>=2} p(d) / ((n + v0 + 1) d)``.
    """
    if any(q < 0 for q in proportions.values()):
        raise ValueError("negative proportion")
    total = sum(proportions.values())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"proportions sum to {total}, not 1")
    return sum(q / ((n + v0 + 1) * d) for d, q in proportions.items() if d >= 2)


def leaf_increment_bound_from_mean(L, n, v0, e0):
    """Weaker bound using only ``L``: half the non-leaves have degree at most twice the mean.

    Evaluated exactly as ``(1-L)/(2(n+1)) * [2 * mean_nonleaf_degree]^-1``.
    """
    if L >= 1.0:
        raise ValueError("leaf fraction 1 leaves no non-leaves; bound undefined")
    mean_deg = (2 - L) / (1 - L) + 2 * (e0 - v0) / ((n + v0) * (1 - L))
    return (1 - L) / (2 * (n + 1)) / (2 * mean_deg)


def drift_lower_bernoulli(lam, p):
    return p * (1 - 2 * lam) + (1 - p) * (1 - lam) ** 2 / (4 * (2 - lam))


def drift_upper_bernoulli(lam, p):
    return 1 - lam * (1 + p)


def threshold_lower_root(p):
    """Smaller root in ``lam`` of ``drift_lower_bernoulli``.

    Clearing the denominator gives ``(1+7p) lam^2 - (2+18p) lam + (1+7p) = 0``.
    """
    return (1 + 9 * p - 2 * math.sqrt(8 * p * p + p)) / (1 + 7 * p)


def threshold_upper(p):
    return 1 / (1 + p)


def bounds_table(ps):
    """Rows ``(p, lower_root, upper, upper - lower_root)``."""
    rows = []
    for p in ps:
        lo, hi = threshold_lower_root(p), threshold_upper(p)
        rows.append((p, lo, hi, hi - lo))
    return rows
