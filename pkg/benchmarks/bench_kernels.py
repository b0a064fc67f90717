"""Benchmark the compiled kernels against the pure-Python fallbacks.

Usage: python benchmarks/bench_kernels.py [--quick]

Times the boundary-matrix reduction on Rips filtrations of sampled tori and
the bottleneck matching on pairs of noisy-circle diagrams, once per backend.
"""
import argparse
import time

import numpy as np

from tdakit import kernels
from tdakit.diagram_distances import bottleneck
from tdakit.filtrations import rips_filtration
from tdakit.persistence import _boundary_columns, compute_persistence


def torus(n, seed):
    rng = np.random.default_rng(seed)
    u = rng.uniform(0, 2 * np.pi, n)
    v = rng.uniform(0, 2 * np.pi, n)
    return np.column_stack(
        [(1 + 0.3 * np.cos(v)) * np.cos(u), (1 + 0.3 * np.cos(v)) * np.sin(u), 0.3 * np.sin(v)]
    )


def circle_diagram(n, seed):
    rng = np.random.default_rng(seed)
    ang = rng.uniform(0, 2 * np.pi, n)
    pts = np.column_stack([np.cos(ang), np.sin(ang)]) + rng.normal(scale=0.05, size=(n, 2))
    return compute_persistence(rips_filtration(pts, 1.2, 2), max_hom_dim=1)


def time_call(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args()

    backends = kernels.available_backends()
    print(f"available backends: {', '.join(backends)} (default: {kernels.DEFAULT_BACKEND})")

    sizes = (120, 200) if args.quick else (150, 250, 350)
    print("\nboundary reduction (Rips on a torus sample, max_dim=3)")
    print(f"{'points':>8} {'columns':>10} " + " ".join(f"{b:>12}" for b in backends) + f" {'speedup':>9}")
    for n in sizes:
        fc = rips_filtration(torus(n, seed=1), max_edge=0.55, max_dim=3)
        _, dims, ptr, rows = _boundary_columns(fc, 2)
        times = {}
        results = {}
        for b in backends:
            out, dt = time_call(kernels.reduce_lows, dims, ptr, rows, b)
            times[b] = dt
            results[b] = list(out)
        assert all(results[b] == results[backends[0]] for b in backends), "backends disagree"
        ratio = times["python"] / times["c"] if {"c", "python"} <= set(times) else float("nan")
        print(
            f"{n:>8} {len(dims):>10} "
            + " ".join(f"{times[b]:>10.3f}s" for b in backends)
            + f" {ratio:>8.1f}x"
        )

    ns = (120, 200) if args.quick else (200, 300)
    print("\nbottleneck distance (noisy-circle H0 diagrams)")
    print(f"{'points':>8} " + " ".join(f"{b:>12}" for b in backends) + f" {'speedup':>9}")
    for n in ns:
        a = circle_diagram(n, seed=2)
        b_dgm = circle_diagram(n, seed=3)
        times = {}
        vals = {}
        for b in backends:
            val, dt = time_call(lambda: bottleneck(a, b_dgm, 0, backend=b))
            times[b] = dt
            vals[b] = val
        assert len(set(vals.values())) == 1, "backends disagree"
        ratio = times["python"] / times["c"] if {"c", "python"} <= set(times) else float("nan")
        print(
            f"{n:>8} "
            + " ".join(f"{times[b]:>10.3f}s" for b in backends)
            + f" {ratio:>8.1f}x  (d_b = {vals[backends[0]]:.4f})"
        )


if __name__ == "__main__":
    main()
