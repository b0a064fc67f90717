import json

import numpy as np
import pytest

from tdakit.filtrations import build_cover_1d, cover_for_intervals
from tdakit.mapper import (
    ClusteringConfig,
    MapperGraph,
    cluster_preimage,
    default_epsilon,
    filter_values,
    mapper,
)
from tdakit.metric import DissimilarityMatrix


def circle(n=100, seed=0, radius=1.0):
    rng = np.random.default_rng(seed)
    ang = 2 * np.pi * (np.arange(n) + rng.uniform(0, 0.5, n)) / n
    return radius * np.column_stack([np.cos(ang), np.sin(ang)])


class TestFilters:
    def test_eccentricity_two_points(self):
        np.testing.assert_allclose(filter_values([[0.0], [2.0]], "eccentricity"), [2.0, 2.0])

    def test_centrality_collinear(self):
        np.testing.assert_allclose(filter_values([[0.0], [1.0], [2.0]], "centrality"), [3.0, 2.0, 3.0])

    def test_coordinate_verbatim(self):
        pts = np.random.default_rng(1).normal(size=(7, 2))
        np.testing.assert_array_equal(filter_values(pts, "coordinate", axis=0), pts[:, 0])
        np.testing.assert_array_equal(filter_values(pts, "coordinate", axis=-1), pts[:, -1])

    def test_distance_to_point(self):
        got = filter_values([[0.0, 0.0], [3.0, 4.0]], "distance_to_point", point=[0.0, 0.0])
        np.testing.assert_allclose(got, [0.0, 5.0])

    def test_density_orders_by_crowding(self):
        pts = np.array([[0.0], [0.1], [0.2], [5.0]])
        f = filter_values(pts, "density", bandwidth=0.5)
        assert f[1] == f.max() and f[3] == f.min()

    def test_works_on_dissimilarity_matrix(self):
        m = DissimilarityMatrix([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
        np.testing.assert_allclose(filter_values(m, "eccentricity"), [2.0, 1.0, 2.0])

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError, match="unknown filter"):
            filter_values([[0.0]], "sparsity")
        with pytest.raises(ValueError):
            filter_values([[0.0]], "coordinate", axis=3)
        with pytest.raises(ValueError):
            filter_values([[0.0]], "density", bandwidth=0.0)
        with pytest.raises(ValueError):
            filter_values([[0.0]], "coordinate")


class TestClusterPreimage:
    def test_two_far_groups(self):
        pts = np.array([[0.0], [0.5], [10.0], [10.5]])
        got = cluster_preimage(pts, [0, 1, 2, 3], ClusteringConfig("eps", epsilon=1.0))
        assert got == [(0, 1), (2, 3)]

    def test_epsilon_at_diameter_single_cluster(self):
        pts = np.array([[0.0], [2.0], [4.0]])
        got = cluster_preimage(pts, [0, 1, 2], ClusteringConfig("eps", epsilon=4.0))
        assert got == [(0, 1, 2)]

    def test_hand_example(self):
        pts = np.array([[0.0], [1.0], [5.0]])
        got = cluster_preimage(pts, [0, 1, 2], ClusteringConfig("eps", epsilon=2.0))
        assert got == [(0, 1), (2,)]

    def test_subset_only(self):
        pts = np.array([[0.0], [1.0], [1.5], [5.0]])
        got = cluster_preimage(pts, [0, 2, 3], ClusteringConfig("eps", epsilon=1.6))
        assert got == [(0, 2), (3,)]

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            ClusteringConfig("eps", epsilon=-1.0)
        with pytest.raises(ValueError):
            ClusteringConfig("mean-shift")
        with pytest.raises(ValueError):
            cluster_preimage(np.zeros((2, 1)), [], ClusteringConfig("eps", epsilon=1.0))

    def test_knn_uses_global_graph(self):
        # 1-NN graph built globally: 1's nearest neighbor is 2, which sits
        # outside the preimage {0, 1, 3}, so 0 and 1 stay joined only if the
        # global graph links them.  Here 0<->1 are mutual nearest neighbors.
        pts = np.array([[0.0], [1.0], [1.2], [9.0]])
        got = cluster_preimage(pts, [0, 1, 3], ClusteringConfig("knn", k=1))
        assert got == [(0, 1), (3,)]

    def test_linkage_threshold(self):
        pts = np.array([[0.0], [1.0], [3.0]])
        got = cluster_preimage(pts, [0, 1, 2], ClusteringConfig("linkage", threshold=1.5))
        assert got == [(0, 1), (2,)]


class TestMapperGraph:
    def circle_graph(self, gain=0.3, eps=0.4, intervals=4):
        pts = circle(100, seed=5)
        f = filter_values(pts, "coordinate", axis=1)
        cover = cover_for_intervals(f.min(), f.max(), intervals, gain)
        return mapper(pts, f, cover, ClusteringConfig("eps", epsilon=eps), filter_name="height")

    def test_circle_gives_cycle(self):
        g = self.circle_graph()
        assert len(g.nodes) == len(g.edges)
        assert g.is_connected()
        assert set(g.degrees().values()) == {2}

    def test_tight_cluster_gives_path(self):
        # one dense blob: every interval holds one cluster and consecutive
        # intervals overlap, so the nerve is a path
        xs = np.linspace(0.0, 1.0, 101)
        pts = np.column_stack([xs, np.zeros_like(xs)])
        f = filter_values(pts, "coordinate", axis=0)
        cover = cover_for_intervals(0.0, 1.0, 5, 0.3)
        g = mapper(pts, f, cover, ClusteringConfig("eps", epsilon=1.0))
        assert len(g.nodes) == 5
        assert len(g.edges) == 4
        degs = sorted(g.degrees().values())
        assert degs == [1, 1, 2, 2, 2]

    def test_low_gain_nerve_is_graph(self):
        g = self.circle_graph(gain=0.25)
        # no point sits in three intervals, so edges only join consecutive
        # intervals and no triple intersection exists
        by_interval = {}
        for n in g.nodes:
            for m in n.members:
                by_interval.setdefault(m, set()).add(n.interval)
        assert max(len(v) for v in by_interval.values()) <= 2
        for s, t, _ in g.edges:
            ds = abs(g.nodes[s].interval - g.nodes[t].interval)
            assert ds == 1

    def test_nodes_partition_interval_preimage(self):
        g = self.circle_graph()
        pts = circle(100, seed=5)
        f = filter_values(pts, "coordinate", axis=1)
        cover = cover_for_intervals(f.min(), f.max(), 4, 0.3)
        for iv, ids in enumerate(cover.membership(f)):
            members = sorted(m for n in g.nodes if n.interval == iv for m in n.members)
            assert members == sorted(ids.tolist())

    def test_union_covers_all_points(self):
        g = self.circle_graph()
        assert set().union(*(set(n.members) for n in g.nodes)) == set(range(100))

    def test_deterministic_json(self):
        a = self.circle_graph().to_json()
        b = self.circle_graph().to_json()
        assert a == b

    def test_json_roundtrip(self):
        g = self.circle_graph()
        again = MapperGraph.from_json_dict(json.loads(g.to_json()))
        assert again.to_json() == g.to_json()

    def test_empty_preimage_skipped(self):
        pts = np.array([[0.0], [0.1], [5.0], [5.1]])
        f = filter_values(pts, "coordinate", axis=0)
        cover = build_cover_1d(0.0, 5.1, resolution=1.0, gain=0.2)
        g = mapper(pts, f, cover, ClusteringConfig("eps", epsilon=0.5))
        # the empty middle intervals yield no node; points near 5 fall in the
        # two last overlapping intervals
        assert cover.n_intervals == 7
        assert sorted({n.interval for n in g.nodes}) == [0, 5, 6]
        assert len(g.edges) == 1

    def test_cover_must_span_filter(self):
        pts = np.array([[0.0], [10.0]])
        f = filter_values(pts, "coordinate", axis=0)
        cover = build_cover_1d(0.0, 5.0, resolution=1.0, gain=0.2)
        with pytest.raises(ValueError, match="span"):
            mapper(pts, f, cover)

    def test_filter_length_checked(self):
        with pytest.raises(ValueError, match="filter has"):
            mapper(np.zeros((3, 1)), [0.0, 1.0], build_cover_1d(0, 1, 0.5, 0.25))

    def test_edge_weights_count_shared_points(self):
        g = self.circle_graph()
        pts = circle(100, seed=5)
        f = filter_values(pts, "coordinate", axis=1)
        for s, t, w in g.edges:
            shared = set(g.nodes[s].members) & set(g.nodes[t].members)
            assert w == len(shared) >= 1

    def test_params_echo(self):
        g = self.circle_graph()
        assert g.params["filter"] == "height"
        assert g.params["gain"] == 0.3
        assert g.params["clustering"] == {"strategy": "eps", "epsilon": 0.4}
        assert g.params["n_points"] == 100

    def test_dot_export(self):
        dot = self.circle_graph().to_dot()
        assert dot.startswith("graph mapper {")
        assert "--" in dot


def test_default_epsilon_connects_circle():
    pts = circle(80, seed=3)
    eps = default_epsilon(pts)
    got = cluster_preimage(pts, range(80), ClusteringConfig("eps", epsilon=eps))
    assert len(got) == 1
