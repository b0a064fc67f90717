"""tdakit: topological data analysis toolkit.

Filtrations (Rips, Cech, lower-star, nerve), persistent homology over Z/2,
diagram metrics (bottleneck, Wasserstein), persistence landscapes, the Mapper
algorithm, and resampling-based confidence bands, with a CLI and an HTTP
service for interactive Mapper exploration.
"""

__version__ = "0.1.0"
FORMAT_VERSION = "1"

from .filtrations import (
    Cover1D,
    FilteredComplex,
    build_cover_1d,
    cech_filtration,
    cover_for_intervals,
    lower_star_filtration,
    nerve,
    rips_filtration,
    simplex,
)
from .metric import (
    DissimilarityMatrix,
    DtmField,
    PointCloud,
    dtem_value,
    dtm_lipschitz_check,
    hausdorff,
)
from .persistence import (
    PersistenceDiagram,
    betti_numbers,
    compute_persistence,
    persistent_betti_rank,
)

__all__ = [
    "Cover1D",
    "DissimilarityMatrix",
    "DtmField",
    "FilteredComplex",
    "PersistenceDiagram",
    "PointCloud",
    "betti_numbers",
    "build_cover_1d",
    "cech_filtration",
    "compute_persistence",
    "cover_for_intervals",
    "dtem_value",
    "dtm_lipschitz_check",
    "hausdorff",
    "lower_star_filtration",
    "nerve",
    "persistent_betti_rank",
    "rips_filtration",
    "simplex",
]
