"""Bottleneck and p-Wasserstein distances between persistence diagrams.

Both metrics match points of one fixed homology dimension, with the diagonal
available at infinite multiplicity: the (n+m)-by-(m+n) augmented cost matrix
pairs every point either with a point of the other diagram (L-inf ground
cost) or with its diagonal projection (half its persistence), diagonal to
diagonal being free.  Points with infinite death form a separate layer
matched by birth; diagrams whose infinite-point counts differ are infinitely
far apart.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import kernels


def _split(dgm, dim: int):
    pts = dgm.in_dimension(dim)
    finite = pts[np.isfinite(pts[:, 1])]
    inf_births = np.sort(pts[~np.isfinite(pts[:, 1]), 0])
    return finite, inf_births


def _augmented_cost(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(n+m) x (m+n) matrix: direct L-inf costs, diagonal projections at half
    persistence, diagonal-to-diagonal free."""
    n, m = len(a), len(b)
    c = np.zeros((n + m, m + n))
    if n and m:
        c[:n, :m] = np.maximum(
            np.abs(a[:, 0, None] - b[None, :, 0]), np.abs(a[:, 1, None] - b[None, :, 1])
        )
    if n:
        c[:n, m:] = ((a[:, 1] - a[:, 0]) / 2.0)[:, None]
    if m:
        c[n:, :m] = ((b[:, 1] - b[:, 0]) / 2.0)[None, :]
    return c


def bottleneck(a, b, dim: int, backend=None) -> float:
    """Exact bottleneck distance between the dimension-`dim` points of two
    diagrams.

    The optimum is one of the finitely many candidate costs (direct costs and
    half-persistences), found by binary search with a maximum-bipartite-
    matching feasibility test at each probed candidate.
    """
    fa, ia = _split(a, dim)
    fb, ib = _split(b, dim)
    if len(ia) != len(ib):
        return math.inf
    d_inf = float(np.max(np.abs(ia - ib))) if len(ia) else 0.0

    n, m = len(fa), len(fb)
    if n == 0 and m == 0:
        return d_inf
    cost = _augmented_cost(fa, fb)
    size = n + m
    candidates = np.unique(cost)
    lo, hi = 0, len(candidates) - 1
    # candidates[hi] is always feasible (every edge allowed).
    while lo < hi:
        mid = (lo + hi) // 2
        if kernels.max_matching_under(cost, float(candidates[mid]), backend=backend) == size:
            hi = mid
        else:
            lo = mid + 1
    return max(float(candidates[lo]), d_inf)


def wasserstein(a, b, dim: int, p: float = 1.0) -> float:
    """Exact p-Wasserstein distance (p >= 1, finite) between the
    dimension-`dim` points of two diagrams, via an optimal-assignment solver
    on the augmented cost matrix."""
    if not (p >= 1.0 and math.isfinite(p)):
        raise ValueError(f"p must be finite and >= 1, got {p}")
    fa, ia = _split(a, dim)
    fb, ib = _split(b, dim)
    # Canonical argument order keeps the float summation order, and hence the
    # result, exactly symmetric.
    if (len(fa), fa.tobytes(), ia.tobytes()) > (len(fb), fb.tobytes(), ib.tobytes()):
        fa, fb, ia, ib = fb, fa, ib, ia
    if len(ia) != len(ib):
        return math.inf
    total = float(np.sum(np.abs(ia - ib) ** p)) if len(ia) else 0.0

    n, m = len(fa), len(fb)
    if n or m:
        cost = _augmented_cost(fa, fb) ** p
        rows, cols = linear_sum_assignment(cost)
        total += float(cost[rows, cols].sum())
    return total ** (1.0 / p)


def pairwise_distance_matrix(diagrams, metric: str = "bottleneck", dim: int = 1, p: float = 1.0) -> np.ndarray:
    """Symmetric zero-diagonal matrix of pairwise diagram distances."""
    if metric == "bottleneck":
        dist = lambda x, y: bottleneck(x, y, dim)
    elif metric == "wasserstein":
        dist = lambda x, y: wasserstein(x, y, dim, p)
    else:
        raise ValueError(f"unknown metric {metric!r} (use 'bottleneck' or 'wasserstein')")
    k = len(diagrams)
    out = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = dist(diagrams[i], diagrams[j])
    return out
