"""Batch command-line pipelines: filtration -> persistence -> signatures ->
statistics, plus static SVG plots.

Exit codes: 0 success, 1 bad input (one-line `error: ...` on stderr),
2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import FORMAT_VERSION, __version__
from .filtrations import FilteredComplex, build_cover_1d, cech_filtration, cover_for_intervals, lower_star_filtration, rips_filtration
from .landscapes import Landscape, average_landscape, feature_vector, landscape_from_diagram
from .mapper import ClusteringConfig, filter_values, mapper
from .metric import DissimilarityMatrix, DtmField, PointCloud
from .persistence import PersistenceDiagram, compute_persistence
from .plotting import barcode_svg, diagram_svg, landscape_svg
from .stats import ConfidenceBand, bottleneck_bootstrap, default_subsample_size, landscape_band, subsampling_eta


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"error: {message}\n")


def load_data(path, kind="auto"):
    """Points CSV or square dissimilarity text file, auto-detected unless
    forced."""
    if kind == "points":
        return PointCloud.from_csv(path)
    if kind == "matrix":
        return DissimilarityMatrix.from_file(path)
    try:
        return DissimilarityMatrix.from_file(path)
    except ValueError:
        return PointCloud.from_csv(path)


def _read_config(path):
    """`key = value` lines; `#` comments.  Keys are long option names."""
    pairs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected `key = value`")
        key, value = (part.strip() for part in line.split("=", 1))
        pairs.append((key.replace("_", "-"), value.strip("\"'")))
    return pairs


def _apply_config(argv):
    """Insert config-file pairs as options right after the subcommand, so
    explicit command-line flags win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValueError("--config needs a file argument")
    tokens = []
    for key, value in _read_config(argv[i + 1]):
        if value.lower() in ("true", "false"):
            if value.lower() == "true":
                tokens.append(f"--{key}")
        else:
            tokens.extend([f"--{key}", value])
    return argv[:1] + tokens + argv[1:]


def _parse_dims(text):
    try:
        dims = tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise ValueError(f"bad dimension list {text!r}; expected e.g. 0,1")
    if not dims or any(d < 0 for d in dims):
        raise ValueError(f"bad dimension list {text!r}")
    return dims


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _write_value(args, value):
    line = f"{value:.17g}\n"
    if args.output:
        _write_text(args.output, line)
    sys.stdout.write(line)


# --- subcommand implementations -------------------------------------------


def cmd_rips_persistence(args):
    data = load_data(args.data, args.input_kind)
    fc = rips_filtration(data, args.max_edge, args.max_dim)
    dgm = compute_persistence(fc, max_hom_dim=args.hom_dim)
    dgm.save_csv(args.output)
    if args.filtration_out:
        fc.save(args.filtration_out)


def cmd_cech_persistence(args):
    data = PointCloud.from_csv(args.data)
    fc = cech_filtration(data, args.max_radius, args.max_dim)
    dgm = compute_persistence(fc, max_hom_dim=args.hom_dim)
    dgm.save_csv(args.output)
    if args.filtration_out:
        fc.save(args.filtration_out)


def cmd_function_persistence(args):
    values = np.loadtxt(args.values, delimiter=",", ndmin=1)
    if values.ndim != 1:
        values = values.ravel()
    vertex_values = {i: float(v) for i, v in enumerate(values)}
    if args.complex:
        simps = [s for s, _ in FilteredComplex.load(args.complex)]
    else:
        n = len(values)
        simps = [(i,) for i in range(n)] + [(i, i + 1) for i in range(n - 1)]
    dgm = compute_persistence(lower_star_filtration(simps, vertex_values))
    dgm.save_csv(args.output)


def cmd_dtm(args):
    cloud = PointCloud.from_csv(args.data)
    queries = PointCloud.from_csv(args.queries)
    field = DtmField(cloud, mass=args.mass, power=args.power)
    values = field(queries.points)
    _write_text(args.output, "".join(f"{v:.17g}\n" for v in values))


def cmd_bottleneck(args):
    from .diagram_distances import bottleneck

    a = PersistenceDiagram.load_csv(args.diagram_a)
    b = PersistenceDiagram.load_csv(args.diagram_b)
    _write_value(args, bottleneck(a, b, args.dim))


def cmd_wasserstein(args):
    from .diagram_distances import wasserstein

    a = PersistenceDiagram.load_csv(args.diagram_a)
    b = PersistenceDiagram.load_csv(args.diagram_b)
    _write_value(args, wasserstein(a, b, args.dim, p=args.p))


def cmd_distance_matrix(args):
    from .diagram_distances import pairwise_distance_matrix

    paths = sorted(Path(args.diagrams).glob("*.csv"))
    if not paths:
        raise ValueError(f"no diagram CSV files in {args.diagrams}")
    dgms = [PersistenceDiagram.load_csv(p) for p in paths]
    m = pairwise_distance_matrix(dgms, metric=args.metric, dim=args.dim, p=args.p)
    lines = ["# columns: " + ",".join(p.name for p in paths)]
    lines += [",".join(f"{x:.17g}" for x in row) for row in m]
    _write_text(args.output, "\n".join(lines) + "\n")


def cmd_landscape(args):
    dgm = PersistenceDiagram.load_csv(args.diagram)
    ls = landscape_from_diagram(dgm, args.dim, levels=args.levels, tmax=args.tmax, grid_size=args.grid)
    ls.save_csv(args.output)


def cmd_average_landscape(args):
    landscapes = [Landscape.load_csv(p) for p in args.landscapes]
    average_landscape(landscapes).save_csv(args.output)


def cmd_landscape_features(args):
    dgm = PersistenceDiagram.load_csv(args.diagram)
    vec = feature_vector(dgm, dims=_parse_dims(args.dims), levels=args.levels, grid_size=args.grid, tmax=args.tmax)
    _write_text(args.output, ",".join(f"{v:.17g}" for v in vec) + "\n")


def _clustering_from_args(args):
    if args.clustering == "eps":
        return ClusteringConfig("eps", epsilon=args.epsilon)
    if args.clustering == "knn":
        return ClusteringConfig("knn", k=args.k)
    return ClusteringConfig("linkage", threshold=args.threshold)


def cmd_mapper(args):
    data = load_data(args.data, args.input_kind)
    fkw = {}
    if args.axis is not None:
        fkw["axis"] = args.axis
    if args.point is not None:
        fkw["point"] = [float(t) for t in args.point.split(",")]
    if args.bandwidth is not None:
        fkw["bandwidth"] = args.bandwidth
    f = filter_values(data, args.filter, **fkw)
    lo, hi = float(f.min()), float(f.max())
    if hi <= lo:
        hi = lo + 1e-9
    if args.resolution is not None:
        cover = build_cover_1d(lo, hi, args.resolution, args.gain)
    else:
        cover = cover_for_intervals(lo, hi, args.intervals, args.gain)
    graph = mapper(data, f, cover, _clustering_from_args(args), filter_name=args.filter)
    _write_text(args.output, graph.to_json() + "\n")
    if args.dot:
        _write_text(args.dot, graph.to_dot())


def cmd_band_subsample(args):
    cloud = PointCloud.from_csv(args.data)
    b = args.subsample_size or default_subsample_size(cloud.n)
    band = subsampling_eta(cloud, b, alpha=args.alpha, replicates=args.replicates, seed=args.seed)
    band.save_json(args.output)


def cmd_band_bootstrap(args):
    data = load_data(args.data, args.input_kind)
    band = bottleneck_bootstrap(
        data,
        max_edge=args.max_edge,
        max_dim=args.max_dim,
        dims=_parse_dims(args.dims),
        alpha=args.alpha,
        replicates=args.replicates,
        seed=args.seed,
    )
    band.save_json(args.output)


def cmd_band_landscape(args):
    landscapes = [Landscape.load_csv(p) for p in args.landscapes]
    band = landscape_band(landscapes, alpha=args.alpha, replicates=args.replicates, seed=args.seed)
    band.save_json(args.output)


def cmd_plot(args):
    if args.kind == "landscape":
        svg = landscape_svg(Landscape.load_csv(args.input))
    else:
        dgm = PersistenceDiagram.load_csv(args.input)
        if args.kind == "barcode":
            svg = barcode_svg(dgm)
        else:
            eta = None
            if args.band:
                band = ConfidenceBand.from_json(Path(args.band).read_text())
                if band.kind != "diagram-band":
                    raise ValueError("diagram plots take a diagram-band JSON file")
                eta = float(band.eta)
            svg = diagram_svg(dgm, band_eta=eta)
    _write_text(args.output, svg)


# --- parser wiring ----------------------------------------------------------


def build_parser():
    parser = _Parser(prog="tdakit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tdakit {__version__} (formats v{FORMAT_VERSION})")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(func=fn)
        p.add_argument("--config", help="key = value file supplying defaults for any flag")
        return p

    p = add("rips-persistence", cmd_rips_persistence, "Vietoris-Rips filtration and its persistence diagram")
    p.add_argument("data")
    p.add_argument("--max-edge", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--hom-dim", type=int, default=None, help="largest homology dimension to report")
    p.add_argument("--input-kind", choices=["auto", "points", "matrix"], default="auto")
    p.add_argument("--filtration-out", help="also write the filtration as text lines")
    p.add_argument("-o", "--output", required=True)

    p = add("cech-persistence", cmd_cech_persistence, "Cech filtration (minimal enclosing balls) and its diagram")
    p.add_argument("data")
    p.add_argument("--max-radius", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--hom-dim", type=int, default=None)
    p.add_argument("--filtration-out")
    p.add_argument("-o", "--output", required=True)

    p = add("function-persistence", cmd_function_persistence, "Lower-star persistence of a sampled function")
    p.add_argument("values", help="CSV of vertex values; default complex is the path on consecutive samples")
    p.add_argument("--complex", help="optional filtration-format file listing the simplices to use")
    p.add_argument("-o", "--output", required=True)

    p = add("dtm", cmd_dtm, "Distance-to-measure values at query points")
    p.add_argument("data")
    p.add_argument("--queries", required=True)
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--power", type=float, default=2.0)
    p.add_argument("-o", "--output", required=True)

    for name, fn in (("bottleneck", cmd_bottleneck), ("wasserstein", cmd_wasserstein)):
        p = add(name, fn, f"{name.capitalize()} distance between two diagram CSV files")
        p.add_argument("diagram_a")
        p.add_argument("diagram_b")
        p.add_argument("--dim", type=int, default=1)
        if name == "wasserstein":
            p.add_argument("-p", type=float, default=1.0)
        p.add_argument("-o", "--output")

    p = add("distance-matrix", cmd_distance_matrix, "Pairwise distance matrix over a directory of diagrams")
    p.add_argument("diagrams", help="directory of diagram CSV files (sorted by name)")
    p.add_argument("--metric", choices=["bottleneck", "wasserstein"], default="bottleneck")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("-p", type=float, default=1.0)
    p.add_argument("-o", "--output", required=True)

    p = add("landscape", cmd_landscape, "Persistence landscape of a diagram")
    p.add_argument("diagram")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--tmax", type=float, default=None)
    p.add_argument("-o", "--output", required=True)

    p = add("average-landscape", cmd_average_landscape, "Pointwise mean of landscape CSV files")
    p.add_argument("landscapes", nargs="+")
    p.add_argument("-o", "--output", required=True)

    p = add("landscape-features", cmd_landscape_features, "Flat landscape feature row (dims x levels x grid)")
    p.add_argument("diagram")
    p.add_argument("--dims", default="0,1")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--tmax", type=float, default=None)
    p.add_argument("-o", "--output", required=True)

    p = add("mapper", cmd_mapper, "Mapper nerve graph as JSON (and optional DOT)")
    p.add_argument("data")
    p.add_argument("--filter", default="eccentricity", choices=["eccentricity", "centrality", "coordinate", "distance_to_point", "density"])
    p.add_argument("--axis", type=int, default=None, help="coordinate filter axis")
    p.add_argument("--point", default=None, help="comma-separated point for distance_to_point")
    p.add_argument("--bandwidth", type=float, default=None, help="density filter bandwidth")
    p.add_argument("--intervals", type=int, default=4)
    p.add_argument("--resolution", type=float, default=None, help="overrides --intervals")
    p.add_argument("--gain", type=float, default=0.3)
    p.add_argument("--clustering", choices=["eps", "knn", "linkage"], default="eps")
    p.add_argument("--epsilon", type=float, default=None, help="eps-graph radius (default: 3x the largest nearest-neighbor gap)")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--input-kind", choices=["auto", "points", "matrix"], default="auto")
    p.add_argument("--dot", help="also write a DOT rendering")
    p.add_argument("-o", "--output", required=True)

    p = add("band-subsample", cmd_band_subsample, "Diagram confidence band via subsampling Hausdorff quantiles")
    p.add_argument("data")
    p.add_argument("-b", "--subsample-size", type=int, default=None, help="default ceil(n / (2 log n))")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--replicates", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = add("band-bootstrap", cmd_band_bootstrap, "Diagram confidence band via the bottleneck bootstrap")
    p.add_argument("data")
    p.add_argument("--max-edge", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--dims", default="0,1")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--replicates", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--input-kind", choices=["auto", "points", "matrix"], default="auto")
    p.add_argument("-o", "--output", required=True)

    p = add("band-landscape", cmd_band_landscape, "Uniform multiplier-bootstrap band over landscape CSV files")
    p.add_argument("landscapes", nargs="+")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--replicates", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = add("plot", cmd_plot, "Static SVG rendering of a diagram, barcode or landscape")
    p.add_argument("input")
    p.add_argument("--kind", choices=["diagram", "barcode", "landscape"], required=True)
    p.add_argument("--band", help="diagram-band JSON overlay (diagram plots only)")
    p.add_argument("-o", "--output", required=True)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(argv)
        args = parser.parse_args(argv)
        args.func(args)
        return 0
    except SystemExit:
        raise
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
