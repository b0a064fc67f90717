import itertools
import math

import numpy as np
import pytest

from tdakit.filtrations import (
    FilteredComplex,
    lower_star_filtration,
    rips_filtration,
)
from tdakit.persistence import (
    PersistenceDiagram,
    betti_numbers,
    compute_persistence,
    persistent_betti_rank,
)

INF = math.inf


def circle_points(n, seed=0, noise=0.0, radius=1.0):
    # jittered even spacing keeps the largest angular gap below 1.5 * 2pi/n
    rng = np.random.default_rng(seed)
    ang = 2 * np.pi * (np.arange(n) + rng.uniform(0, 0.5, size=n)) / n
    pts = radius * np.column_stack([np.cos(ang), np.sin(ang)])
    if noise:
        pts += rng.normal(scale=noise, size=pts.shape)
    return pts


def diagram_multiset(dgm):
    return sorted((int(d), round(b, 12), round(de, 12) if math.isfinite(de) else INF) for d, b, de in dgm)


class TestComputePersistence:
    def test_single_vertex(self):
        dgm = compute_persistence(FilteredComplex([((0,), 0.0)]))
        assert list(dgm) == [(0, 0.0, INF)]

    def test_function_on_path(self):
        # three local minima at 1 < 2 < 3, merges at 4 and 5, global max 6
        values = {0: 1.0, 1: 4.0, 2: 3.0, 3: 5.0, 4: 2.0, 5: 6.0, 6: 7.0}
        simps = [(i,) for i in range(7)] + [(i, i + 1) for i in range(6)]
        dgm = compute_persistence(lower_star_filtration(simps, values))
        assert diagram_multiset(dgm) == [(0, 1.0, INF), (0, 2.0, 5.0), (0, 3.0, 4.0)]

    def test_unit_square_h1(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        dgm = compute_persistence(rips_filtration(pts, 1.5, 2), max_hom_dim=1)
        h1 = dgm.in_dimension(1)
        assert h1.shape == (1, 2)
        assert abs(h1[0, 0] - 1.0) <= 1e-12
        assert abs(h1[0, 1] - math.sqrt(2)) <= 1e-12

    def test_elder_rule_minimum_birth_survives(self):
        # H0 essential class of a connected complex is born at the minimum
        # vertex value
        values = {0: 5.0, 1: 1.0, 2: 3.0}
        dgm = compute_persistence(
            lower_star_filtration([(0,), (1,), (2,), (0, 1), (1, 2)], values)
        )
        essential = [(d, b) for d, b, de in dgm if math.isinf(de)]
        assert essential == [(0, 1.0)]

    def test_zero_length_pairs_dropped_but_raw(self):
        values = {0: 1.0, 1: 1.0, 2: 2.0}
        dgm = compute_persistence(
            lower_star_filtration([(0,), (1,), (2,), (0, 1), (1, 2)], values)
        )
        assert diagram_multiset(dgm) == [(0, 1.0, INF)]
        raw = sorted(map(tuple, dgm.raw_pairs.tolist()))
        assert (0.0, 1.0, 1.0) in raw  # the dropped zero-length pair
        assert len(raw) == 3

    def test_invalid_filtration_rejected(self):
        bad = FilteredComplex([((0,), 0.0), ((1,), 0.0)])
        bad.simplices = [((0,), 0.0), ((1,), 0.0), ((0, 1), 0.5), ((2,), 1.0), ((1, 2), 0.7)]
        with pytest.raises(ValueError, match="order"):
            compute_persistence(bad)
        missing = FilteredComplex([((0,), 0.0)])
        missing.simplices = [((0,), 0.0), ((0, 1), 1.0)]
        with pytest.raises(ValueError, match="missing face"):
            compute_persistence(missing)

    def test_connected_components_match_infinite_h0(self):
        # graph-traversal oracle for number of components of the full complex
        rng = np.random.default_rng(11)
        for _ in range(15):
            pts = rng.normal(size=(rng.integers(3, 12), 2))
            fc = rips_filtration(pts, max_edge=0.9, max_dim=1)
            dgm = compute_persistence(fc)
            inf_h0 = int(np.sum((dgm.dims == 0) & ~np.isfinite(dgm.deaths)))
            parent = list(range(len(pts)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for s, _ in fc:
                if len(s) == 2:
                    parent[find(s[0])] = find(s[1])
            assert inf_h0 == len({find(i) for i in range(len(pts))})

    def test_euler_characteristic(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            pts = rng.normal(size=(rng.integers(3, 9), 2))
            fc = rips_filtration(pts, max_edge=1.4, max_dim=len(pts) - 1)
            dgm = compute_persistence(fc)  # all dimensions, nothing dropped
            chi_simplices = sum((-1) ** (len(s) - 1) for s, _ in fc)
            betti = betti_numbers(dgm, at=fc.max_value + 1.0, max_dim=fc.max_dim)
            chi_betti = sum((-1) ** k * b for k, b in enumerate(betti))
            assert chi_simplices == chi_betti

    def test_tie_break_equivalent_orders_same_diagram(self):
        # permuting simplices within an equal (value, dimension) block is a
        # permissible filtration order and must not change the diagram
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        fc = rips_filtration(pts, 1.5, 2)
        base = diagram_multiset(compute_persistence(fc))
        rng = np.random.default_rng(3)
        for _ in range(5):
            items = list(fc.simplices)
            blocks = {}
            for s, v in items:
                blocks.setdefault((round(v, 12), len(s)), []).append((s, v))
            shuffled = []
            for key in sorted(blocks):
                blk = blocks[key]
                rng.shuffle(blk)
                shuffled.extend(blk)
            alt = FilteredComplex([])
            alt.simplices = shuffled  # bypass canonical re-sort
            assert diagram_multiset(compute_persistence(alt)) == base

    def test_backends_identical(self):
        pts = np.random.default_rng(5).normal(size=(12, 3))
        fc = rips_filtration(pts, 1.6, 3)
        a = compute_persistence(fc, backend="python")
        b = compute_persistence(fc, backend="c")
        assert a == b


def gf2_rank(rows, width):
    rank = 0
    pivots = []
    for r in rows:
        cur = r
        for p, pr in pivots:
            if cur >> p & 1:
                cur ^= pr
        if cur:
            p = cur.bit_length() - 1
            pivots.append((p, cur))
            rank += 1
    return rank


def oracle_betti(fc, at, max_dim):
    """Dense Z/2 Gaussian elimination on boundary operators of the sublevel
    complex: beta_k = #k-simplices - rank d_k - rank d_(k+1)."""
    simps = [s for s, v in fc if v <= at]
    by_dim = {}
    for s in simps:
        by_dim.setdefault(len(s) - 1, []).append(s)
    index = {d: {s: i for i, s in enumerate(ss)} for d, ss in by_dim.items()}
    ranks = {}
    for d in range(1, max_dim + 2):
        rows = []
        for s in by_dim.get(d, []):
            mask = 0
            for i in range(len(s)):
                mask |= 1 << index[d - 1][s[:i] + s[i + 1 :]]
            rows.append(mask)
        ranks[d] = gf2_rank(rows, len(by_dim.get(d - 1, [])))
    out = []
    for k in range(max_dim + 1):
        nk = len(by_dim.get(k, []))
        out.append(nk - ranks.get(k, 0) - ranks.get(k + 1, 0) if nk else 0)
    return out


def test_betti_matches_gf2_elimination_oracle():
    rng = np.random.default_rng(17)
    for _ in range(25):
        pts = rng.normal(size=(rng.integers(3, 7), 2))
        full = rips_filtration(pts, max_edge=2.2, max_dim=min(3, len(pts) - 1))
        head = FilteredComplex([])
        head.simplices = full.simplices[: min(len(full), 8)]  # prefix stays a complex
        dgm = compute_persistence(head)
        for _, v in head:
            got = betti_numbers(dgm, at=v, max_dim=head.max_dim)
            assert got == oracle_betti(head, v, head.max_dim)


class TestBettiQueries:
    def test_circle_betti(self):
        pts = circle_points(60, seed=1, noise=0.01)
        dgm = compute_persistence(rips_filtration(pts, 1.2, 2), max_hom_dim=1)
        assert betti_numbers(dgm, at=0.4, max_dim=1) == [1, 1]

    def test_below_every_birth(self):
        dgm = PersistenceDiagram([0, 1], [0.5, 1.0], [2.0, 3.0])
        assert betti_numbers(dgm, at=0.2, max_dim=1) == [0, 0]

    def test_rank_trivial_cases(self):
        dgm = PersistenceDiagram([1], [0.0], [INF])
        assert persistent_betti_rank(dgm, k=1, r=1.0, s=4.0) == 1
        dgm2 = PersistenceDiagram([1], [1.0], [1.4])
        assert persistent_betti_rank(dgm2, k=1, r=0.5, s=2.0) == 0
        with pytest.raises(ValueError):
            persistent_betti_rank(dgm, k=1, r=2.0, s=1.0)

    def test_circle_rank_window(self):
        pts = circle_points(100, seed=2, noise=0.02)
        dgm = compute_persistence(rips_filtration(pts, 1.0, 2), max_hom_dim=1)
        r = 0.2
        assert persistent_betti_rank(dgm, k=1, r=r, s=4 * r) == 1


def test_stability_under_function_perturbation():
    # d_b(dgm_k(f), dgm_k(g)) <= |f - g|_inf for lower-star filtrations of two
    # vertex functions on the same complex (checked at every dimension)
    from tdakit.diagram_distances import bottleneck

    rng = np.random.default_rng(19)
    for _ in range(20):
        pts = rng.normal(size=(7, 2))
        skeleton = [s for s, _ in rips_filtration(pts, 2.5, 2)]
        f = {i: float(rng.uniform(0, 2)) for i in range(7)}
        delta = float(rng.uniform(0, 0.4))
        g = {i: f[i] + float(rng.uniform(-delta, delta)) for i in f}
        sup = max(abs(f[i] - g[i]) for i in f)
        dgm_f = compute_persistence(lower_star_filtration(skeleton, f))
        dgm_g = compute_persistence(lower_star_filtration(skeleton, g))
        for k in range(3):
            assert bottleneck(dgm_f, dgm_g, k) <= sup + 1e-9


class TestDiagramIO:
    def test_csv_roundtrip(self, tmp_path):
        dgm = PersistenceDiagram([0, 0, 1], [0.0, 0.1, 1 / 3], [INF, 0.25, math.sqrt(2)])
        path = tmp_path / "dgm.csv"
        dgm.save_csv(path)
        again = PersistenceDiagram.load_csv(path)
        assert again == dgm
        text = path.read_text()
        assert text.splitlines()[0] == "dim,birth,death"
        assert "inf" in text

    def test_sorted_stable(self):
        dgm = PersistenceDiagram([1, 0, 0], [3.0, 1.0, 0.0], [4.0, 2.0, 1.0])
        assert list(dgm) == [(0, 0.0, 1.0), (0, 1.0, 2.0), (1, 3.0, 4.0)]

    def test_death_before_birth_rejected(self):
        with pytest.raises(ValueError):
            PersistenceDiagram([0], [1.0], [0.5])
