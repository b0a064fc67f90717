"""Persistence landscapes: tent functions, k-max overlays, averaging.

A diagram point (b, d) contributes the tent rising from b to half its
persistence at the midpoint and back down to d; the k-th landscape level at t
is the k-th largest tent value there.  Landscapes live on a uniform grid over
[0, T] so they can be averaged and fed to statistics as plain arrays.
"""
from __future__ import annotations

import logging

import numpy as np

from .filtrations import rips_filtration
from .metric import DissimilarityMatrix, PointCloud, _as_coords
from .persistence import PersistenceDiagram, compute_persistence

logger = logging.getLogger(__name__)


def tent(birth: float, death: float, t):
    """Piecewise-linear hat of a diagram point: t-birth on [birth, midpoint],
    death-t on (midpoint, death], else 0.  Vectorized over t."""
    if death < birth:
        raise ValueError(f"death {death} < birth {birth}")
    if not (np.isfinite(birth) and np.isfinite(death)):
        raise ValueError("tent needs finite birth and death; truncate infinite deaths first")
    t = np.asarray(t, dtype=np.float64)
    out = np.maximum(0.0, np.minimum(t - birth, death - t))
    return out if out.ndim else float(out)


class Landscape:
    """K landscape levels discretized on a shared uniform grid over [0, T].

    values[k-1, j] is the k-th level at grid node j.  Levels are
    non-negative, pointwise non-increasing in k, and 1-Lipschitz in t up to
    grid discretization.
    """

    def __init__(self, grid, values):
        grid = np.asarray(grid, dtype=np.float64).ravel()
        values = np.atleast_2d(np.asarray(values, dtype=np.float64))
        if values.shape[1] != grid.shape[0]:
            raise ValueError(f"values shape {values.shape} does not match grid length {len(grid)}")
        if len(grid) < 2:
            raise ValueError("grid needs at least 2 nodes")
        self.grid = grid
        self.values = values

    @property
    def num_levels(self) -> int:
        return self.values.shape[0]

    @property
    def tmax(self) -> float:
        return float(self.grid[-1])

    def __eq__(self, other):
        return (
            isinstance(other, Landscape)
            and np.array_equal(self.grid, other.grid)
            and np.array_equal(self.values, other.values)
        )

    def validate(self) -> None:
        if np.any(self.values < 0):
            raise ValueError("landscape values must be non-negative")
        if np.any(self.values[1:] > self.values[:-1] + 1e-12):
            raise ValueError("landscape levels must be pointwise non-increasing in k")
        dt = np.diff(self.grid)
        if np.any(np.abs(np.diff(self.values, axis=1)) > dt + 1e-12):
            raise ValueError("landscape levels must be 1-Lipschitz up to the grid step")

    def same_grid(self, other: "Landscape") -> bool:
        return self.num_levels == other.num_levels and np.array_equal(self.grid, other.grid)

    def save_csv(self, path) -> None:
        """Header row of t-grid nodes, then one row per level."""
        with open(path, "w", newline="") as fh:
            fh.write(",".join(f"{t:.17g}" for t in self.grid) + "\n")
            for row in self.values:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")

    @classmethod
    def load_csv(cls, path) -> "Landscape":
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rows.append([float(c) for c in line.split(",")])
        if len(rows) < 2:
            raise ValueError(f"{path}: landscape file needs a grid row and at least one level row")
        return cls(np.array(rows[0]), np.array(rows[1:]))


def landscape_from_diagram(
    dgm: PersistenceDiagram, dim: int, levels: int = 3, tmax: float = None, grid_size: int = 1000
) -> Landscape:
    """Landscape of the dimension-`dim` points of a diagram.

    Infinite deaths are truncated to tmax before tenting (logged).  Levels
    beyond the point count are zero.  tmax defaults to the largest finite
    death in the requested dimension.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    pts = dgm.in_dimension(dim)
    if tmax is None:
        finite = pts[np.isfinite(pts[:, 1]), 1]
        tmax = float(finite.max()) if len(finite) else 1.0
    if tmax <= 0:
        raise ValueError("tmax must be > 0")
    grid = np.linspace(0.0, tmax, grid_size)
    values = np.zeros((levels, grid_size))
    if len(pts):
        n_inf = int(np.sum(~np.isfinite(pts[:, 1])))
        if n_inf:
            logger.info("truncating %d infinite death(s) to tmax=%g", n_inf, tmax)
        births = pts[:, 0]
        deaths = np.minimum(pts[:, 1], tmax)
        tents = np.maximum(0.0, np.minimum(grid[None, :] - births[:, None], deaths[:, None] - grid[None, :]))
        k = min(levels, len(pts))
        # k-th largest per column
        top = -np.sort(-tents, axis=0)[:k]
        values[:k] = top
    return Landscape(grid, values)


def average_landscape(landscapes) -> Landscape:
    """Pointwise arithmetic mean of landscapes on the same grid and level
    count."""
    landscapes = list(landscapes)
    if not landscapes:
        raise ValueError("need at least one landscape")
    first = landscapes[0]
    for ls in landscapes[1:]:
        if not first.same_grid(ls):
            raise ValueError("landscape grids / level counts do not match")
    return Landscape(first.grid, np.mean([ls.values for ls in landscapes], axis=0))


def _draw_subsample(data, size: int, rng: np.random.Generator):
    """Indices of an i.i.d. size-`size` draw from the empirical measure
    (sampling with replacement)."""
    n = data.n if hasattr(data, "n") else len(_as_coords(data))
    return rng.integers(0, n, size=size)


def _take(data, idx):
    if isinstance(data, DissimilarityMatrix):
        return DissimilarityMatrix(data.values[np.ix_(idx, idx)])
    return _as_coords(data)[idx]


def subsample_average_landscape(
    data,
    subsample_size: int,
    num_subsamples: int,
    *,
    hom_dim: int = 1,
    max_edge: float,
    max_dim: int = 2,
    levels: int = 3,
    tmax: float,
    grid_size: int = 1000,
    seed: int = 0,
) -> Landscape:
    """Average landscape over repeated subsamples of the data.

    Each of the `num_subsamples` replicates draws `subsample_size` points
    i.i.d. from the empirical measure, runs Rips -> persistence -> landscape,
    and the results are averaged pointwise.  The RNG is split per replicate
    index, so the output is reproducible and independent of execution order.
    """
    n = data.n if hasattr(data, "n") else len(_as_coords(data))
    if subsample_size > n:
        raise ValueError(f"subsample size {subsample_size} exceeds data size {n}")
    if num_subsamples < 1:
        raise ValueError("need at least one subsample")
    seeds = np.random.SeedSequence(seed).spawn(num_subsamples)
    out = []
    for s in seeds:
        idx = _draw_subsample(data, subsample_size, np.random.default_rng(s))
        fc = rips_filtration(_take(data, idx), max_edge=max_edge, max_dim=max_dim)
        dgm = compute_persistence(fc, max_hom_dim=hom_dim)
        out.append(landscape_from_diagram(dgm, hom_dim, levels=levels, tmax=tmax, grid_size=grid_size))
    return average_landscape(out)


def feature_vector(dgm: PersistenceDiagram, dims=(0, 1), levels: int = 3, grid_size: int = 1000, tmax: float = None) -> np.ndarray:
    """Flat landscape feature vector: for each dimension in order, `levels`
    rows of `grid_size` samples, concatenated row-major (len(dims) * levels *
    grid_size entries)."""
    if tmax is None:
        finite = dgm.deaths[np.isfinite(dgm.deaths) & np.isin(dgm.dims, list(dims))]
        tmax = float(finite.max()) if len(finite) else 1.0
    parts = [
        landscape_from_diagram(dgm, d, levels=levels, tmax=tmax, grid_size=grid_size).values.ravel()
        for d in dims
    ]
    return np.concatenate(parts)
