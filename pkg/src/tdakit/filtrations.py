"""Simplicial complexes, filtration constructors and 1-D covers.

A simplex is a tuple of strictly increasing vertex ids.  A filtered complex
stores (simplex, value) pairs sorted by (value, dimension, vertices); that
order is a valid filtration order whenever values are monotone under
inclusion, and ties broken this way make downstream reduction deterministic.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .metric import DissimilarityMatrix, PointCloud, _as_coords
from .miniball import enclosing_radius

Simplex = tuple  # tuple[int, ...], vertices strictly increasing


def simplex(vertices) -> Simplex:
    """Normalize to a sorted tuple of unique vertex ids."""
    vs = tuple(sorted(int(v) for v in vertices))
    if len(vs) == 0:
        raise ValueError("a simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise ValueError(f"duplicate vertices in simplex {vertices}")
    return vs


def facets(s: Simplex):
    """The codimension-1 faces of a simplex (empty for vertices)."""
    if len(s) == 1:
        return
    for i in range(len(s)):
        yield s[:i] + s[i + 1 :]


def _sort_key(item):
    s, v = item
    return (v, len(s), s)


@dataclass
class FilteredComplex:
    """A finite filtered simplicial complex.

    Invariants: closed under faces, monotone (a face never appears after a
    coface), and stored in sorted (value, dimension, vertices) order.
    """

    simplices: list = field(default_factory=list)  # list[(Simplex, float)]

    def __post_init__(self):
        self.simplices = sorted(((simplex(s), float(v)) for s, v in self.simplices), key=_sort_key)

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    @property
    def n_vertices(self) -> int:
        return sum(1 for s, _ in self.simplices if len(s) == 1)

    @property
    def max_dim(self) -> int:
        return max((len(s) - 1 for s, _ in self.simplices), default=-1)

    @property
    def max_value(self) -> float:
        return max((v for _, v in self.simplices), default=0.0)

    def validate(self) -> None:
        """Raise ValueError on any violated invariant (closure, monotonicity,
        sort order)."""
        values = {}
        prev_key = None
        for s, v in self.simplices:
            key = (v, len(s))
            if prev_key is not None and key < prev_key:
                raise ValueError(f"filtration not sorted at {s}")
            prev_key = key
            if s in values:
                raise ValueError(f"duplicate simplex {s}")
            values[s] = v
        for s, v in self.simplices:
            for f in facets(s):
                if f not in values:
                    raise ValueError(f"complex not closed under faces: {f} missing (face of {s})")
                if values[f] > v + 1e-12:
                    raise ValueError(f"non-monotone filtration: value({f}) > value({s})")

    def simplices_at(self, alpha: float) -> set:
        """The simplex set of the sublevel complex at scale alpha."""
        return {s for s, v in self.simplices if v <= alpha}

    def save(self, path) -> None:
        """One line per simplex: `value v0 v1 ... vk`, filtration order."""
        with open(path, "w") as fh:
            for s, v in self.simplices:
                fh.write(f"{v:.17g} " + " ".join(str(x) for x in s) + "\n")

    @classmethod
    def load(cls, path) -> "FilteredComplex":
        items = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                items.append((tuple(int(x) for x in parts[1:]), float(parts[0])))
        return cls(items)


def _distance_matrix(data) -> np.ndarray:
    if isinstance(data, DissimilarityMatrix):
        return data.values
    if isinstance(data, PointCloud):
        return data.distance_matrix()
    return PointCloud(_as_coords(data)).distance_matrix()


def _clamp_dim(max_dim: int, n: int) -> int:
    if max_dim > n - 1:
        warnings.warn(f"max_dim={max_dim} exceeds n-1={n - 1}; clamped", stacklevel=3)
        return n - 1
    return max_dim


def rips_filtration(data, max_edge: float, max_dim: int) -> FilteredComplex:
    """Vietoris-Rips filtration up to the given scale and dimension.

    A simplex enters at the largest pairwise distance among its vertices;
    vertices enter at 0.  Accepts a point cloud or a dissimilarity matrix.
    """
    if max_edge < 0:
        raise ValueError(f"max_edge must be >= 0, got {max_edge}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be >= 0, got {max_dim}")
    D = _distance_matrix(data)
    n = D.shape[0]
    max_dim = _clamp_dim(max_dim, n)

    items = [((i,), 0.0) for i in range(n)]
    if max_dim == 0 or n == 1:
        return FilteredComplex(items)

    # Upper-neighbor lists: nbrs[i] = sorted j > i with D[i, j] <= max_edge.
    nbrs = []
    for i in range(n):
        js = np.nonzero(D[i, i + 1 :] <= max_edge)[0] + i + 1
        nbrs.append(js.astype(np.int64))

    # Depth-first clique expansion; value grows incrementally.
    stack = [((i,), 0.0, nbrs[i]) for i in range(n - 1, -1, -1)]
    while stack:
        s, val, cand = stack.pop()
        if len(s) - 1 >= max_dim:
            continue
        for v in cand:
            new_val = max(val, float(D[list(s), v].max()))
            if new_val > max_edge:
                continue
            t = s + (int(v),)
            items.append((t, new_val))
            if len(t) - 1 < max_dim:
                inter = np.intersect1d(cand, nbrs[v], assume_unique=True)
                stack.append((t, new_val, inter))
    return FilteredComplex(items)


def cech_filtration(data, max_radius: float, max_dim: int, seed: int = 0) -> FilteredComplex:
    """Cech filtration: a simplex enters at the minimal enclosing ball radius
    of its vertices (the radius at which their closed balls first share a
    point).  Ball radii come from a seeded randomized Welzl recursion."""
    if max_radius < 0:
        raise ValueError(f"max_radius must be >= 0, got {max_radius}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be >= 0, got {max_dim}")
    pts = _as_coords(data)
    if isinstance(data, DissimilarityMatrix):
        raise TypeError("cech_filtration needs point coordinates, not a dissimilarity matrix")
    n = pts.shape[0]
    max_dim = _clamp_dim(max_dim, n)
    D = PointCloud(pts).distance_matrix()

    items = [((i,), 0.0) for i in range(n)]
    if max_dim == 0 or n == 1:
        return FilteredComplex(items)

    # Candidates are cliques at pairwise distance <= 2 * max_radius; the ball
    # radius is monotone under subsets, so pruning a branch is safe.
    nbrs = []
    for i in range(n):
        js = np.nonzero(D[i, i + 1 :] <= 2.0 * max_radius)[0] + i + 1
        nbrs.append(js.astype(np.int64))

    stack = [((i,), nbrs[i]) for i in range(n - 1, -1, -1)]
    while stack:
        s, cand = stack.pop()
        if len(s) - 1 >= max_dim:
            continue
        for v in cand:
            t = s + (int(v),)
            if len(t) == 2:
                r = float(D[t[0], t[1]]) / 2.0
            else:
                r = enclosing_radius(pts[list(t)], seed=seed)
            if r > max_radius:
                continue
            items.append((t, r))
            if len(t) - 1 < max_dim:
                inter = np.intersect1d(cand, nbrs[v], assume_unique=True)
                stack.append((t, inter))
    return FilteredComplex(items)


def lower_star_filtration(complex_simplices, vertex_values) -> FilteredComplex:
    """Sublevel-set filtration of a vertex function extended by max.

    Every simplex receives the maximum of its vertex values.  The input
    complex must be closed under faces and every vertex must have a value.
    """
    simps = [simplex(s) for s in complex_simplices]
    have = set(simps)
    for s in simps:
        for f in facets(s):
            if f not in have:
                raise ValueError(f"complex not closed under faces: {f} missing (face of {s})")
    items = []
    for s in simps:
        try:
            v = max(float(vertex_values[u]) for u in s)
        except KeyError as exc:
            raise ValueError(f"missing vertex value for vertex {exc.args[0]}")
        items.append((s, v))
    return FilteredComplex(items)


def nerve(cover_sets, max_dim: int) -> list:
    """Nerve of a cover: simplex [i0..ik] present iff the k+1 member sets
    share a common element.  Dimension capped at max_dim.  Closed under
    faces by construction."""
    sets = [frozenset(s) for s in cover_sets]
    for i, s in enumerate(sets):
        if not s:
            raise ValueError(f"cover set {i} is empty")
    out = [(i,) for i in range(len(sets))]
    if max_dim == 0:
        return out
    # Grow simplices with their running intersections.
    frontier = [((i,), sets[i]) for i in range(len(sets))]
    while frontier:
        nxt = []
        for s, inter in frontier:
            if len(s) - 1 >= max_dim:
                continue
            for j in range(s[-1] + 1, len(sets)):
                shared = inter & sets[j]
                if shared:
                    t = s + (j,)
                    out.append(t)
                    nxt.append((t, shared))
        frontier = nxt
    return sorted(out, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class Cover1D:
    """Regularly spaced overlapping intervals covering a range of filter
    values.  Consecutive intervals of length `resolution` overlap by the
    fraction `gain`; gain below 0.5 keeps every point in at most two
    intervals, so the pull-back nerve is a graph."""

    intervals: tuple  # tuple[(lo, hi), ...]
    resolution: float
    gain: float

    @property
    def n_intervals(self) -> int:
        return len(self.intervals)

    @property
    def span(self):
        return (self.intervals[0][0], self.intervals[-1][1])

    def membership(self, values) -> list:
        """For each interval, the indices of values it contains."""
        v = np.asarray(values, dtype=np.float64)
        return [np.nonzero((v >= lo) & (v <= hi))[0] for lo, hi in self.intervals]


def build_cover_1d(lo: float, hi: float, resolution: float, gain: float) -> Cover1D:
    """Cover [lo, hi] with intervals of length `resolution`, consecutive
    starts spaced resolution*(1-gain), first start at lo, last interval
    covering hi."""
    if hi <= lo:
        raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
    if resolution <= 0:
        raise ValueError(f"resolution must be > 0, got {resolution}")
    if not 0.0 < gain < 1.0:
        raise ValueError(f"gain must be in (0, 1), got {gain}")
    step = resolution * (1.0 - gain)
    tol = 1e-12 * max(1.0, abs(hi - lo))
    starts = [lo]
    while starts[-1] + resolution < hi - tol:
        starts.append(starts[-1] + step)
    return Cover1D(
        intervals=tuple((s, s + resolution) for s in starts),
        resolution=resolution,
        gain=gain,
    )


def cover_for_intervals(lo: float, hi: float, n_intervals: int, gain: float) -> Cover1D:
    """Resolution that tiles [lo, hi] with exactly `n_intervals` intervals at
    the given gain, then the corresponding cover."""
    if n_intervals < 1:
        raise ValueError("n_intervals must be >= 1")
    r = (hi - lo) / (1.0 + (n_intervals - 1) * (1.0 - gain))
    cover = build_cover_1d(lo, hi, r * (1.0 + 1e-9), gain)
    return cover
