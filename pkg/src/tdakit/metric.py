"""Point clouds, dissimilarity matrices, Hausdorff distance and distance-to-measure.

Input data enters the toolkit through one of two containers: a
:class:`PointCloud` (coordinates in Euclidean space) or a
:class:`DissimilarityMatrix` (pairwise dissimilarities, not required to
satisfy the triangle inequality).  Everything downstream accepts either.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist


class PointCloud:
    """An ordered set of points in R^d, optionally labelled.

    Parameters
    ----------
    points : array-like, shape (n, d)
        One point per row.  All coordinates must be finite.
    labels : sequence of str, optional
        One label per point.
    """

    def __init__(self, points, labels=None):
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {pts.shape}")
        n, d = pts.shape
        if n < 1 or d < 1:
            raise ValueError(f"need at least one point with dimension >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} labels for {n} points")
        pts = pts.copy()
        pts.flags.writeable = False
        self.points = pts
        self.labels = labels
        self._dmat = None

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, dim={self.dim})"

    # matrices up to this size are cached on the instance (134 MB at the cap)
    _CACHE_LIMIT = 4096

    def distance_matrix(self) -> np.ndarray:
        if self._dmat is not None:
            return self._dmat
        d = cdist(self.points, self.points)
        d = (d + d.T) / 2.0
        if self.n <= self._CACHE_LIMIT:
            d.flags.writeable = False
            self._dmat = d
        return d

    @classmethod
    def from_csv_text(cls, text, origin="<text>") -> "PointCloud":
        """Parse CSV text, one point per row.  A non-numeric first row is
        treated as a header and skipped."""
        rows = []
        for row in csv.reader(io.StringIO(text)):
            row = [c for c in (c.strip() for c in row) if c]
            if row:
                rows.append(row)
        if not rows:
            raise ValueError(f"{origin}: empty point-cloud file")
        try:
            [float(c) for c in rows[0]]
        except ValueError:
            rows = rows[1:]
            if not rows:
                raise ValueError(f"{origin}: header but no data rows")
        try:
            pts = np.array([[float(c) for c in row] for row in rows])
        except ValueError as exc:
            raise ValueError(f"{origin}: non-numeric entry in point cloud ({exc})")
        return cls(pts)

    @classmethod
    def from_csv(cls, path) -> "PointCloud":
        with open(path, newline="") as fh:
            return cls.from_csv_text(fh.read(), origin=str(path))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for row in self.points:
                w.writerow([f"{x:.17g}" for x in row])


class DissimilarityMatrix:
    """A symmetric n-by-n matrix of non-negative finite dissimilarities with
    zero diagonal.  The triangle inequality is *not* required (dissimilarities
    such as one-minus-absolute-correlation may violate it)."""

    def __init__(self, values):
        m = np.asarray(values, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"dissimilarity matrix must be square, got shape {m.shape}")
        if m.shape[0] < 1:
            raise ValueError("dissimilarity matrix must be non-empty")
        if not np.all(np.isfinite(m)):
            raise ValueError("dissimilarity entries must be finite")
        if np.any(m < 0):
            raise ValueError("dissimilarity entries must be non-negative")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-9):
            raise ValueError("dissimilarity matrix must be symmetric")
        if np.any(np.abs(np.diag(m)) > 1e-12):
            raise ValueError("dissimilarity matrix must have zero diagonal")
        m = m.copy()
        m.flags.writeable = False
        self.values = m

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"DissimilarityMatrix(n={self.n})"

    def distance_matrix(self) -> np.ndarray:
        return self.values

    @classmethod
    def from_text(cls, text, origin="<text>") -> "DissimilarityMatrix":
        """Parse a square matrix from whitespace- or comma-delimited text
        with no header (entries are kept exactly as parsed)."""
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.replace(",", " ").split()
            rows.append([float(p) for p in parts])
        if not rows:
            raise ValueError(f"{origin}: empty matrix file")
        lengths = {len(r) for r in rows}
        if len(lengths) != 1 or lengths.pop() != len(rows):
            raise ValueError(f"{origin}: not a square matrix")
        return cls(np.array(rows))

    @classmethod
    def from_file(cls, path) -> "DissimilarityMatrix":
        with open(path) as fh:
            return cls.from_text(fh.read(), origin=str(path))

    def to_file(self, path) -> None:
        with open(path, "w") as fh:
            for row in self.values:
                fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def _as_coords(obj) -> np.ndarray:
    if isinstance(obj, PointCloud):
        return obj.points
    a = np.asarray(obj, dtype=np.float64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return a


def hausdorff(a, b) -> float:
    """Hausdorff distance between two finite point sets in the same R^d.

    Equals max(sup_{x in a} d(x, b), sup_{y in b} d(y, a)) for the Euclidean
    metric, i.e. the sup-norm gap between the two distance functions.
    """
    pa, pb = _as_coords(a), _as_coords(b)
    if pa.size == 0 or pb.size == 0:
        raise ValueError("hausdorff requires two nonempty point sets")
    if pa.shape[1] != pb.shape[1]:
        raise ValueError(f"ambient dimensions differ: {pa.shape[1]} vs {pb.shape[1]}")
    d = cdist(pa, pb)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass(frozen=True)
class DtmField:
    """Distance-to-measure evaluator for the empirical measure of a sample.

    The value at a query x is the power mean of the k smallest Euclidean
    distances from x to the sample, with k = ceil(mass * n):

        dtm(x) = ( (1/k) * sum_{j=1}^{k} |x - X|_(j)^power )^(1/power)

    where |x - X|_(j) is the j-th smallest query-to-sample distance.  This is
    the k-nearest-neighbor plug-in for the distance to the underlying measure
    at mass parameter m; it is robust to outliers, unlike the plain distance
    to the sample.
    """

    sample: PointCloud
    mass: float
    power: float = 2.0

    def __post_init__(self):
        if not isinstance(self.sample, PointCloud):
            object.__setattr__(self, "sample", PointCloud(self.sample))
        if not 0.0 < self.mass <= 1.0:
            raise ValueError(f"mass must be in (0, 1], got {self.mass}")
        if self.power < 1.0:
            raise ValueError(f"power must be >= 1, got {self.power}")

    @property
    def k(self) -> int:
        """Neighbor count ceil(mass * n); always in [1, n]."""
        return min(self.sample.n, int(math.ceil(self.mass * self.sample.n - 1e-12)))

    def __call__(self, queries) -> np.ndarray:
        q = _as_coords(queries)
        if q.shape[1] != self.sample.dim:
            raise ValueError(f"query dimension {q.shape[1]} != sample dimension {self.sample.dim}")
        d = cdist(q, self.sample.points)
        k = self.k
        if k < self.sample.n:
            d = np.partition(d, k - 1, axis=1)[:, :k]
        return (np.mean(d**self.power, axis=1)) ** (1.0 / self.power)


def dtem_value(field: DtmField, query) -> float:
    """Distance to the empirical measure at a single query point."""
    return float(field(np.atleast_2d(np.asarray(query, dtype=np.float64)))[0])


def dtm_lipschitz_check(field: DtmField, pairs) -> float:
    """Max over (x, y) pairs of |dtm(x) - dtm(y)| - |x - y|.

    A correct distance-to-measure is 1-Lipschitz, so the result is <= 0 up
    to floating-point noise (1e-9).  Used as a regularity harness.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one pair")
    xs = np.array([np.ravel(np.asarray(p[0], dtype=np.float64)) for p in pairs])
    ys = np.array([np.ravel(np.asarray(p[1], dtype=np.float64)) for p in pairs])
    fx, fy = field(xs), field(ys)
    gaps = np.abs(fx - fy) - np.linalg.norm(xs - ys, axis=1)
    return float(gaps.max())
