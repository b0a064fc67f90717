"""Resampling-based confidence machinery for persistence output.

Three procedures: a subsampling Hausdorff quantile for diagram bands, a
bottleneck bootstrap against the empirical measure, and a multiplier
bootstrap for uniform confidence bands around a mean landscape.  All are
reproducible: every replicate runs on its own RNG stream spawned from the
seed, so results do not depend on execution order.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .diagram_distances import bottleneck
from .filtrations import rips_filtration
from .landscapes import Landscape
from .metric import DissimilarityMatrix, PointCloud, _as_coords, hausdorff
from .persistence import PersistenceDiagram, compute_persistence

MATRIX_RESAMPLING_CAVEAT = (
    "joint row/column resampling of a dissimilarity matrix: bootstrap validity "
    "has not been established for this variant"
)


@dataclass
class ConfidenceBand:
    """A confidence statement at level alpha.

    For kind 'diagram-band', eta is a bottleneck radius: a diagram point is
    deemed significant when its persistence exceeds 2*eta.  For kind
    'landscape-band', eta holds per-grid-node half-widths of a uniform band
    around the mean landscape.
    """

    kind: str
    alpha: float
    eta: object  # float or ndarray of half-widths
    method: str
    replicates: int
    seed: int
    caveat: str = None

    def __post_init__(self):
        if self.kind not in ("diagram-band", "landscape-band"):
            raise ValueError(f"unknown band kind {self.kind!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if np.any(np.asarray(self.eta) < 0):
            raise ValueError("band half-width must be >= 0")

    def significant(self, dgm: PersistenceDiagram, dim: int = None) -> np.ndarray:
        """Boolean mask over the diagram points (optionally one dimension):
        True where persistence exceeds 2*eta, i.e. the point lies outside the
        diagonal band."""
        if self.kind != "diagram-band":
            raise ValueError("significance predicate applies to diagram bands")
        mask = np.ones(len(dgm), dtype=bool) if dim is None else (dgm.dims == dim)
        return mask & (dgm.deaths - dgm.births > 2.0 * float(self.eta))

    def to_json(self) -> str:
        eta = self.eta.tolist() if isinstance(self.eta, np.ndarray) else self.eta
        obj = {
            "kind": self.kind,
            "alpha": self.alpha,
            "eta": eta,
            "method": self.method,
            "replicates": self.replicates,
            "seed": self.seed,
        }
        if self.caveat:
            obj["caveat"] = self.caveat
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def from_json(cls, text: str) -> "ConfidenceBand":
        obj = json.loads(text)
        eta = obj["eta"]
        if isinstance(eta, list):
            eta = np.asarray(eta, dtype=np.float64)
        return cls(
            kind=obj["kind"],
            alpha=obj["alpha"],
            eta=eta,
            method=obj["method"],
            replicates=obj["replicates"],
            seed=obj["seed"],
            caveat=obj.get("caveat"),
        )


def _upper_quantile(values, alpha: float) -> float:
    """Conservative empirical (1-alpha)-quantile: the order statistic at rank
    ceil((1-alpha)*N)."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    n = len(v)
    rank = min(n, max(1, math.ceil((1.0 - alpha) * n)))
    return float(v[rank - 1])


def _replicate_rngs(seed: int, replicates: int):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(replicates)]


def subsampling_eta(
    data, subsample_size: int, alpha: float = 0.05, replicates: int = 100, seed: int = 0
) -> ConfidenceBand:
    """Diagram band from the subsampling approach: draw subsamples of size b
    without replacement, record Hausdorff(subsample, full sample), and take
    eta = 2 * empirical (1-alpha)-quantile."""
    pts = _as_coords(data)
    n = len(pts)
    if not 1 <= subsample_size <= n:
        raise ValueError(f"subsample size must be in [1, {n}], got {subsample_size}")
    if replicates < 20:
        warnings.warn(f"only {replicates} replicates; the quantile estimate is unstable", stacklevel=2)
    dists = np.empty(replicates)
    for i, rng in enumerate(_replicate_rngs(seed, replicates)):
        idx = rng.choice(n, size=subsample_size, replace=False)
        dists[i] = 0.0 if subsample_size == n else hausdorff(pts[idx], pts)
    return ConfidenceBand(
        kind="diagram-band",
        alpha=alpha,
        eta=2.0 * _upper_quantile(dists, alpha),
        method="subsampling-hausdorff",
        replicates=replicates,
        seed=seed,
    )


def default_subsample_size(n: int) -> int:
    """Heuristic b = ceil(n / (2 log n)); small relative to n / log n."""
    return max(1, min(n, math.ceil(n / (2.0 * math.log(max(n, 3))))))


def _resample(data, rng: np.random.Generator):
    if isinstance(data, DissimilarityMatrix):
        idx = rng.integers(0, data.n, size=data.n)
        return DissimilarityMatrix(data.values[np.ix_(idx, idx)])
    pts = _as_coords(data)
    idx = rng.integers(0, len(pts), size=len(pts))
    return pts[idx]


def bottleneck_bootstrap(
    data,
    *,
    max_edge: float,
    max_dim: int = 2,
    dims=(0, 1),
    alpha: float = 0.05,
    replicates: int = 100,
    seed: int = 0,
) -> ConfidenceBand:
    """Diagram band from the bottleneck bootstrap: resample n points (or,
    for a dissimilarity matrix, rows and columns jointly) with replacement,
    rebuild the Rips diagram, and take eta as the (1-alpha)-quantile of the
    bottleneck distances to the original diagram (max over the requested
    dimensions)."""
    if replicates < 20:
        raise ValueError(f"bottleneck bootstrap needs >= 20 replicates, got {replicates}")
    dims = tuple(dims)
    base = compute_persistence(rips_filtration(data, max_edge, max_dim), max_hom_dim=max(dims))
    dists = np.empty(replicates)
    for i, rng in enumerate(_replicate_rngs(seed, replicates)):
        boot = compute_persistence(
            rips_filtration(_resample(data, rng), max_edge, max_dim), max_hom_dim=max(dims)
        )
        dists[i] = max(bottleneck(base, boot, d) for d in dims)
    return ConfidenceBand(
        kind="diagram-band",
        alpha=alpha,
        eta=_upper_quantile(dists, alpha),
        method="bottleneck-bootstrap",
        replicates=replicates,
        seed=seed,
        caveat=MATRIX_RESAMPLING_CAVEAT if isinstance(data, DissimilarityMatrix) else None,
    )


def landscape_band(landscapes, alpha: float = 0.05, replicates: int = 1000, seed: int = 0) -> ConfidenceBand:
    """Uniform multiplier-bootstrap band for the expected landscape.

    With landscapes L_1..L_n and mean Lbar, each replicate draws standard
    Gaussian multipliers xi_i and records sup_t |n^{-1/2} sum_i xi_i (L_i(t)
    - Lbar(t))|; the band half-width is the (1-alpha)-quantile of these sups
    divided by sqrt(n), constant across the grid.
    """
    landscapes = list(landscapes)
    if len(landscapes) < 2:
        raise ValueError("landscape band needs at least 2 landscapes")
    first = landscapes[0]
    for ls in landscapes[1:]:
        if not first.same_grid(ls):
            raise ValueError("landscape grids / level counts do not match")
    stack = np.stack([ls.values for ls in landscapes])  # (n, K, G)
    n = stack.shape[0]
    centered = stack - stack.mean(axis=0)
    sups = np.empty(replicates)
    for i, rng in enumerate(_replicate_rngs(seed, replicates)):
        xi = rng.standard_normal(n)
        sups[i] = np.abs(np.tensordot(xi, centered, axes=(0, 0))).max() / math.sqrt(n)
    half_width = _upper_quantile(sups, alpha) / math.sqrt(n)
    return ConfidenceBand(
        kind="landscape-band",
        alpha=alpha,
        eta=np.full_like(first.values, half_width),
        method="multiplier-bootstrap",
        replicates=replicates,
        seed=seed,
    )


def band_contains(band: ConfidenceBand, center: Landscape, candidate: Landscape) -> bool:
    """Whether a candidate mean landscape lies within the band around the
    observed mean at every grid node."""
    if band.kind != "landscape-band":
        raise ValueError("band_contains applies to landscape bands")
    return bool(np.all(np.abs(center.values - candidate.values) <= np.asarray(band.eta) + 1e-12))
