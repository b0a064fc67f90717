"""Minimal enclosing ball of a small point set via Welzl's randomized recursion.

Move-to-front variant with deterministic seeding.  Intended for the vertex
sets of candidate simplices (a handful of points in dimension <= ~10), so the
linear algebra is done with hand-rolled Gaussian elimination on tiny systems
rather than numpy calls, which dominate at this size.
"""
from __future__ import annotations

import random

import numpy as np

_EPS = 1e-10


def _circumball(R):
    """Ball with all points of R on its boundary and center in their affine
    hull.  Returns (center, radius) or None when R is degenerate (affinely
    dependent points admit no such ball)."""
    k = len(R)
    if k == 0:
        return None
    p0 = R[0]
    d = len(p0)
    if k == 1:
        return (list(p0), 0.0)
    # Solve M lam = rhs, M[i][j] = 2 (p_{i+1}-p0).(p_{j+1}-p0),
    # rhs[i] = |p_{i+1}-p0|^2; center = p0 + sum lam_j (p_{j+1}-p0).
    vecs = [[R[i + 1][t] - p0[t] for t in range(d)] for i in range(k - 1)]
    m = k - 1
    M = [[2.0 * sum(vecs[i][t] * vecs[j][t] for t in range(d)) for j in range(m)] for i in range(m)]
    rhs = [sum(v * v for v in vecs[i]) for i in range(m)]
    # Gaussian elimination with partial pivoting.
    for col in range(m):
        piv = max(range(col, m), key=lambda r: abs(M[r][col]))
        if abs(M[piv][col]) < 1e-14:
            return None
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1.0 / M[col][col]
        for r in range(col + 1, m):
            f = M[r][col] * inv
            if f != 0.0:
                for c in range(col, m):
                    M[r][c] -= f * M[col][c]
                rhs[r] -= f * rhs[col]
    lam = [0.0] * m
    for r in range(m - 1, -1, -1):
        s = rhs[r] - sum(M[r][c] * lam[c] for c in range(r + 1, m))
        lam[r] = s / M[r][r]
    center = [p0[t] + sum(lam[j] * vecs[j][t] for j in range(m)) for t in range(d)]
    radius = max(
        sum((center[t] - q[t]) ** 2 for t in range(d)) for q in R
    ) ** 0.5
    # All boundary points must actually sit on the sphere.
    for q in R:
        dq = sum((center[t] - q[t]) ** 2 for t in range(d)) ** 0.5
        if abs(dq - radius) > 1e-7 * (1.0 + radius):
            return None
    return (center, radius)


def _inside(p, ball):
    if ball is None:
        return False
    c, r = ball
    d2 = sum((p[t] - c[t]) ** 2 for t in range(len(p)))
    return d2 <= (r + _EPS * (1.0 + r)) ** 2


def _welzl(pts, R, dim):
    if not pts or len(R) == dim + 1:
        return _circumball(R)
    ball = _welzl(pts[1:], R, dim)
    if ball is not None and _inside(pts[0], ball):
        return ball
    return _welzl(pts[1:], R + [pts[0]], dim)


def minimal_enclosing_ball(points, seed: int = 0):
    """Center and radius of the smallest ball containing all points.

    Exact within ~1e-9 for dimension <= 10.  The point order is shuffled with
    a seed derived from the input so results are reproducible and independent
    of caller iteration order.
    """
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.shape[0] == 0:
        raise ValueError("minimal_enclosing_ball of an empty set")
    uniq = np.unique(arr, axis=0)
    pts = [tuple(row) for row in uniq]
    dim = len(pts[0])
    if len(pts) == 1:
        return np.asarray(pts[0]), 0.0
    for attempt in range(3):
        rng = random.Random((seed, attempt, len(pts), pts[0]).__repr__())
        order = pts[:]
        rng.shuffle(order)
        ball = None
        for i, p in enumerate(order):
            if not _inside(p, ball):
                ball = _welzl(order[:i], [p], dim)
        if ball is not None:
            c, r = ball
            worst = max(sum((p[t] - c[t]) ** 2 for t in range(dim)) for p in pts) ** 0.5
            if worst <= r + 1e-7 * (1.0 + r):
                return np.asarray(c), max(r, worst)
    raise ArithmeticError("minimal enclosing ball did not converge (degenerate input?)")


def enclosing_radius(points, seed: int = 0) -> float:
    """Radius of the minimal enclosing ball (closed-form for 1 or 2 points)."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.shape[0] == 1:
        return 0.0
    if arr.shape[0] == 2:
        return float(np.linalg.norm(arr[1] - arr[0]) / 2.0)
    return float(minimal_enclosing_ball(arr, seed=seed)[1])
