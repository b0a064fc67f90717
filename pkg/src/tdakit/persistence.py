"""Persistent homology of filtered complexes with Z/2 coefficients.

The reduction pairs simplices of consecutive dimensions; each pair (i, j)
with value(i) < value(j) contributes a diagram point (dim(i), value(i),
value(j)), unpaired simplices contribute essential classes with death +inf,
and zero-length pairs are dropped from the diagram but kept in `raw_pairs`
for debugging.  Merges follow the elder rule: of two classes meeting at a
death simplex, the younger one dies.
"""
from __future__ import annotations

import csv
import math

import numpy as np

from . import kernels
from .filtrations import FilteredComplex

_INF = math.inf


class PersistenceDiagram:
    """Multiset of (dimension, birth, death) points, death possibly +inf.

    Points are kept sorted by (dim, birth, death) so serialized output is
    stable.  The diagonal is implicit and never stored.
    """

    def __init__(self, dims, births, deaths, source=None, raw_pairs=None):
        dims = np.asarray(dims, dtype=np.int64).ravel()
        births = np.asarray(births, dtype=np.float64).ravel()
        deaths = np.asarray(deaths, dtype=np.float64).ravel()
        if not (dims.shape == births.shape == deaths.shape):
            raise ValueError("dims, births, deaths must have equal length")
        if np.any(deaths < births):
            raise ValueError("every death must be >= its birth")
        order = np.lexsort((deaths, births, dims))
        self.dims = dims[order]
        self.births = births[order]
        self.deaths = deaths[order]
        self.source = source
        self.raw_pairs = raw_pairs  # (m, 3) array incl. zero-length pairs, or None

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(zip(self.dims.tolist(), self.births.tolist(), self.deaths.tolist()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PersistenceDiagram)
            and np.array_equal(self.dims, other.dims)
            and np.array_equal(self.births, other.births)
            and np.array_equal(self.deaths, other.deaths)
        )

    def __repr__(self) -> str:
        return f"PersistenceDiagram({len(self)} points, dims<= {self.max_dim})"

    @property
    def max_dim(self) -> int:
        return int(self.dims.max()) if len(self.dims) else -1

    def in_dimension(self, dim: int) -> np.ndarray:
        """(m, 2) array of (birth, death) for the requested dimension."""
        mask = self.dims == dim
        return np.column_stack([self.births[mask], self.deaths[mask]])

    def save_csv(self, path) -> None:
        """CSV `dim,birth,death` with `inf` for +inf, full precision."""
        with open(path, "w", newline="") as fh:
            fh.write("dim,birth,death\n")
            for d, b, de in self:
                ds = "inf" if math.isinf(de) else f"{de:.17g}"
                fh.write(f"{d},{b:.17g},{ds}\n")

    @classmethod
    def load_csv(cls, path) -> "PersistenceDiagram":
        dims, births, deaths = [], [], []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                row = [c.strip() for c in row if c.strip()]
                if not row:
                    continue
                if row[0].lower() == "dim":
                    continue
                if len(row) != 3:
                    raise ValueError(f"{path}: diagram rows need dim,birth,death, got {row}")
                dims.append(int(row[0]))
                births.append(float(row[1]))
                deaths.append(_INF if row[2].lower() in ("inf", "+inf", "infinity") else float(row[2]))
        return cls(dims, births, deaths, source=str(path))


def _boundary_columns(fc: FilteredComplex, keep_dim: int):
    """CSR boundary columns in filtration order, validating monotone sorted
    closure on the way.  Simplices above keep_dim+1 cannot affect homology up
    to keep_dim and are skipped."""
    simps = [(s, v) for s, v in fc.simplices if len(s) - 1 <= keep_dim + 1]
    index = {}
    dims = np.empty(len(simps), dtype=np.int64)
    ptr = np.empty(len(simps) + 1, dtype=np.int64)
    rows_out = []
    ptr[0] = 0
    prev = None
    for j, (s, v) in enumerate(simps):
        key = (v, len(s))
        if prev is not None and key < prev:
            raise ValueError("not a valid filtration: simplices out of (value, dimension) order")
        prev = key
        dims[j] = len(s) - 1
        if len(s) > 1:
            try:
                face_idx = sorted(index[s[:i] + s[i + 1 :]] for i in range(len(s)))
            except KeyError:
                raise ValueError(f"not a valid filtration: missing face of {s}")
            rows_out.extend(face_idx)
        ptr[j + 1] = len(rows_out)
        index[s] = j
    return simps, dims, ptr, np.asarray(rows_out, dtype=np.int64)


def compute_persistence(fc: FilteredComplex, max_hom_dim=None, backend=None) -> PersistenceDiagram:
    """Persistence diagram of a filtered complex, all dimensions up to
    max_hom_dim (default: the complex dimension)."""
    if max_hom_dim is None:
        max_hom_dim = fc.max_dim
    if max_hom_dim < 0:
        raise ValueError("max_hom_dim must be >= 0")
    simps, dims, ptr, rows = _boundary_columns(fc, max_hom_dim)
    lows = np.asarray(kernels.reduce_lows(dims, ptr, rows, backend=backend), dtype=np.int64)

    n = len(simps)
    killed = np.zeros(n, dtype=bool)
    pts = []  # (dim, birth, death)
    raw = []
    for j in range(n):
        i = lows[j]
        if i < 0:
            continue
        killed[i] = True
        b, d = simps[i][1], simps[j][1]
        k = len(simps[i][0]) - 1
        raw.append((k, b, d))
        if d > b:
            pts.append((k, b, d))
    for i in range(n):
        if lows[i] < 0 and not killed[i]:
            k = len(simps[i][0]) - 1
            if k <= max_hom_dim:
                b = simps[i][1]
                raw.append((k, b, _INF))
                pts.append((k, b, _INF))

    pts_arr = np.array(pts, dtype=np.float64).reshape(-1, 3)
    raw_arr = np.array(raw, dtype=np.float64).reshape(-1, 3)
    return PersistenceDiagram(
        pts_arr[:, 0], pts_arr[:, 1], pts_arr[:, 2], source=getattr(fc, "source", None), raw_pairs=raw_arr
    )


def betti_numbers(dgm: PersistenceDiagram, at: float, max_dim=None) -> list:
    """Betti numbers at a scale: beta_k counts points of dimension k whose
    half-open life interval [birth, death) contains `at`."""
    if at < 0:
        raise ValueError("scale must be >= 0")
    if max_dim is None:
        max_dim = max(dgm.max_dim, 0)
    alive = (dgm.births <= at) & (dgm.deaths > at)
    return [int(np.sum(alive & (dgm.dims == k))) for k in range(max_dim + 1)]


def persistent_betti_rank(dgm: PersistenceDiagram, k: int, r: float, s: float) -> int:
    """Rank of the map H_k(F_r) -> H_k(F_s) induced by inclusion: the number
    of dimension-k points born by r and still alive strictly after s."""
    if r > s:
        raise ValueError(f"need r <= s, got r={r} > s={s}")
    return int(np.sum((dgm.dims == k) & (dgm.births <= r) & (dgm.deaths > s)))
