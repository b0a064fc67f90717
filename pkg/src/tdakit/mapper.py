"""The Mapper algorithm: filter, pull back a 1-D cover, cluster each
preimage, and return the nerve of the resulting refined cover as a graph.

Nodes are (interval, cluster) pairs with their member point ids and filter
statistics; an edge joins two nodes exactly when they share at least one
point.  With cover gain below 0.5 no three intervals overlap, so the nerve
is a genuine graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .filtrations import Cover1D
from .metric import DissimilarityMatrix, PointCloud, _as_coords

FILTER_KINDS = ("eccentricity", "centrality", "coordinate", "distance_to_point", "density")


def _distance_matrix(data) -> np.ndarray:
    if isinstance(data, DissimilarityMatrix):
        return data.values
    if isinstance(data, PointCloud):
        return data.distance_matrix()
    return PointCloud(_as_coords(data)).distance_matrix()


def filter_values(data, kind: str, *, axis: int = None, point=None, bandwidth: float = None) -> np.ndarray:
    """Evaluate a built-in filter on every data point.

    Kinds: 'eccentricity' (max distance to the rest), 'centrality' (sum of
    distances), 'coordinate' (needs axis), 'distance_to_point' (needs point),
    'density' (Gaussian kernel sum, needs bandwidth).
    """
    if kind == "eccentricity":
        return _distance_matrix(data).max(axis=1)
    if kind == "centrality":
        return _distance_matrix(data).sum(axis=1)
    if kind == "coordinate":
        pts = _as_coords(data)
        if axis is None:
            raise ValueError("coordinate filter needs axis")
        if not -pts.shape[1] <= axis < pts.shape[1]:
            raise ValueError(f"axis {axis} out of range for dimension {pts.shape[1]}")
        return pts[:, axis].astype(np.float64)
    if kind == "distance_to_point":
        if point is None:
            raise ValueError("distance_to_point filter needs point")
        pts = _as_coords(data)
        p = np.asarray(point, dtype=np.float64).ravel()
        if p.shape[0] != pts.shape[1]:
            raise ValueError(f"point dimension {p.shape[0]} != data dimension {pts.shape[1]}")
        return np.linalg.norm(pts - p, axis=1)
    if kind == "density":
        if bandwidth is None or bandwidth <= 0:
            raise ValueError("density filter needs bandwidth > 0")
        d = _distance_matrix(data)
        return np.exp(-(d**2) / (2.0 * bandwidth**2)).sum(axis=1)
    raise ValueError(f"unknown filter kind {kind!r}; expected one of {FILTER_KINDS}")


@dataclass(frozen=True)
class ClusteringConfig:
    """Preimage clustering strategy.

    'eps': connected components of the epsilon-neighborhood graph (the
    global graph induced on the preimage equals the graph built on the
    preimage alone).  'knn': components of the globally built symmetrized
    k-nearest-neighbor graph induced on the preimage.  'linkage': single
    linkage cut at `threshold` (components of the threshold-neighborhood
    graph within the preimage).
    """

    strategy: str = "eps"
    epsilon: float = None
    k: int = None
    threshold: float = None

    def __post_init__(self):
        if self.strategy not in ("eps", "knn", "linkage"):
            raise ValueError(f"unknown clustering strategy {self.strategy!r}")
        if self.strategy == "eps" and self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.strategy == "knn" and (self.k is None or self.k < 1):
            raise ValueError("knn clustering needs k >= 1")
        if self.strategy == "linkage" and (self.threshold is None or self.threshold <= 0):
            raise ValueError("linkage clustering needs threshold > 0")

    def as_dict(self) -> dict:
        out = {"strategy": self.strategy}
        for key in ("epsilon", "k", "threshold"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        return out


def default_epsilon(data) -> float:
    """Fallback neighborhood radius: three times the largest
    nearest-neighbor distance, a scale at which every point has company."""
    d = _distance_matrix(data).copy()
    np.fill_diagonal(d, np.inf)
    if not np.isfinite(d).any():
        return 1.0
    return 3.0 * float(d.min(axis=1).max())


def _components(ids, adjacency) -> list:
    """Connected components (as sorted id tuples) of the boolean adjacency
    matrix over the given ids, ordered by smallest member."""
    k = len(ids)
    label = [-1] * k
    comps = []
    for start in range(k):
        if label[start] >= 0:
            continue
        comp = [start]
        label[start] = len(comps)
        queue = [start]
        while queue:
            u = queue.pop()
            for v in np.nonzero(adjacency[u])[0]:
                if label[v] < 0:
                    label[v] = label[start]
                    comp.append(int(v))
                    queue.append(int(v))
        comps.append(tuple(sorted(int(ids[i]) for i in comp)))
    return sorted(comps)


def _knn_adjacency(D: np.ndarray, k: int) -> np.ndarray:
    n = D.shape[0]
    k = min(k, n - 1)
    adj = np.zeros((n, n), dtype=bool)
    if k < 1:
        return adj
    d = D.copy()
    np.fill_diagonal(d, np.inf)
    nearest = np.argpartition(d, k - 1, axis=1)[:, :k]
    rows = np.repeat(np.arange(n), k)
    adj[rows, nearest.ravel()] = True
    return adj | adj.T


def cluster_preimage(data, ids, config: ClusteringConfig) -> list:
    """Partition the points with the given ids; see ClusteringConfig for the
    strategies.  Returns sorted tuples of ids, ordered by smallest member."""
    ids = np.asarray(list(ids), dtype=np.int64)
    if len(ids) == 0:
        raise ValueError("cluster_preimage needs a nonempty point set")
    if config.strategy == "knn":
        adj = _knn_adjacency(_distance_matrix(data), config.k)[np.ix_(ids, ids)]
    else:
        eps = config.epsilon if config.strategy == "eps" else config.threshold
        if eps is None:
            eps = default_epsilon(data)
        sub = _distance_matrix(data)[np.ix_(ids, ids)]
        adj = sub <= eps
        np.fill_diagonal(adj, False)
    return _components(ids, adj)


@dataclass(frozen=True)
class MapperNode:
    id: int
    interval: int
    cluster: int
    members: tuple
    filter_min: float
    filter_mean: float
    filter_max: float

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class MapperGraph:
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (source, target, weight)
    params: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "id": n.id,
                    "interval": n.interval,
                    "cluster": n.cluster,
                    "size": n.size,
                    "members": list(n.members),
                    "filter": {"min": n.filter_min, "mean": n.filter_mean, "max": n.filter_max},
                }
                for n in self.nodes
            ],
            "edges": [{"source": s, "target": t, "weight": w} for s, t, w in self.edges],
            "params": self.params,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, obj) -> "MapperGraph":
        nodes = [
            MapperNode(
                id=n["id"],
                interval=n["interval"],
                cluster=n["cluster"],
                members=tuple(n["members"]),
                filter_min=n["filter"]["min"],
                filter_mean=n["filter"]["mean"],
                filter_max=n["filter"]["max"],
            )
            for n in obj["nodes"]
        ]
        edges = [(e["source"], e["target"], e["weight"]) for e in obj["edges"]]
        return cls(nodes=nodes, edges=edges, params=dict(obj.get("params", {})))

    def to_dot(self) -> str:
        lines = ["graph mapper {"]
        for n in self.nodes:
            lines.append(
                f'  n{n.id} [label="{n.interval}/{n.cluster} ({n.size})", width={0.2 + 0.05 * n.size:.2f}];'
            )
        for s, t, w in self.edges:
            lines.append(f"  n{s} -- n{t} [penwidth={w}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def degrees(self) -> dict:
        deg = {n.id: 0 for n in self.nodes}
        for s, t, _ in self.edges:
            deg[s] += 1
            deg[t] += 1
        return deg

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = {n.id: [] for n in self.nodes}
        for s, t, _ in self.edges:
            adj[s].append(t)
            adj[t].append(s)
        seen = {self.nodes[0].id}
        queue = [self.nodes[0].id]
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(self.nodes)


def mapper(data, filt, cover: Cover1D, clustering: ClusteringConfig = None, filter_name: str = "") -> MapperGraph:
    """Run the Mapper pipeline on precomputed filter values.

    For each cover interval, the points whose filter value falls inside are
    clustered; every nonempty cluster becomes a node, and nodes sharing a
    point are joined by an edge weighted with the shared-point count.  Empty
    preimages are skipped.
    """
    f = np.asarray(filt, dtype=np.float64).ravel()
    n = _distance_matrix(data).shape[0]
    if len(f) != n:
        raise ValueError(f"filter has {len(f)} values for {n} points")
    lo, hi = cover.span
    tol = 1e-9 * max(1.0, hi - lo)
    if f.min() < lo - tol or f.max() > hi + tol:
        raise ValueError(
            f"cover [{lo}, {hi}] does not span the filter range [{f.min()}, {f.max()}]"
        )
    if clustering is None:
        clustering = ClusteringConfig()
    if clustering.strategy == "eps" and clustering.epsilon is None:
        clustering = ClusteringConfig(strategy="eps", epsilon=default_epsilon(data))

    nodes = []
    for iv, ids in enumerate(cover.membership(f)):
        if len(ids) == 0:
            continue
        for ci, members in enumerate(cluster_preimage(data, ids, clustering)):
            vals = f[list(members)]
            nodes.append(
                MapperNode(
                    id=len(nodes),
                    interval=iv,
                    cluster=ci,
                    members=members,
                    filter_min=float(vals.min()),
                    filter_mean=float(vals.mean()),
                    filter_max=float(vals.max()),
                )
            )

    owner = {}  # point id -> node ids containing it
    for node in nodes:
        for p in node.members:
            owner.setdefault(p, []).append(node.id)
    counts = {}
    for node_ids in owner.values():
        for i in range(len(node_ids)):
            for j in range(i + 1, len(node_ids)):
                key = (node_ids[i], node_ids[j])
                counts[key] = counts.get(key, 0) + 1
    edges = [(s, t, w) for (s, t), w in sorted(counts.items())]

    params = {
        "filter": filter_name,
        "resolution": cover.resolution,
        "gain": cover.gain,
        "n_intervals": cover.n_intervals,
        "clustering": clustering.as_dict(),
        "n_points": n,
    }
    return MapperGraph(nodes=nodes, edges=edges, params=params)
