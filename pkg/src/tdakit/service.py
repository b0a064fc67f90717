"""HTTP service for interactive Mapper exploration.

Datasets are uploaded once and kept in memory; Mapper computations are
cached by (dataset, parameters) and replayed byte-for-byte, so slider
scrubbing in a client stays cheap and responses for identical requests are
identical on the wire.
"""
from __future__ import annotations

import argparse
import json
import os
import secrets
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .filtrations import build_cover_1d, cover_for_intervals
from .mapper import ClusteringConfig, filter_values, mapper
from .metric import DissimilarityMatrix, PointCloud

DEFAULT_MAX_POINTS = 50_000
DEFAULT_TIME_BUDGET = 10.0

FILTER_CATALOG = [
    {"kind": "eccentricity", "params": []},
    {"kind": "centrality", "params": []},
    {"kind": "coordinate", "params": ["axis"], "needs_coordinates": True},
    {"kind": "distance_to_point", "params": ["point"], "needs_coordinates": True},
    {"kind": "density", "params": ["bandwidth"]},
]


def _chunked_row_stats(data, chunk=2048):
    """Min/max of eccentricity and centrality without materializing the full
    distance matrix for large uploads."""
    from scipy.spatial.distance import cdist

    if isinstance(data, DissimilarityMatrix):
        d = data.values
        ecc, cen = d.max(axis=1), d.sum(axis=1)
    else:
        pts = data.points
        ecc = np.empty(len(pts))
        cen = np.empty(len(pts))
        for i in range(0, len(pts), chunk):
            block = cdist(pts[i : i + chunk], pts)
            ecc[i : i + chunk] = block.max(axis=1)
            cen[i : i + chunk] = block.sum(axis=1)
    return ecc, cen


@dataclass
class DatasetHandle:
    id: str
    data: object  # PointCloud | DissimilarityMatrix
    uploaded_at: str
    summary: dict = field(default_factory=dict)
    mapper_cache: dict = field(default_factory=dict)  # params-key -> response bytes


def _summarize(handle: DatasetHandle) -> dict:
    data = handle.data
    is_matrix = isinstance(data, DissimilarityMatrix)
    ecc, cen = _chunked_row_stats(data)
    filters = {
        "eccentricity": {"min": float(ecc.min()), "max": float(ecc.max())},
        "centrality": {"min": float(cen.min()), "max": float(cen.max())},
    }
    if not is_matrix:
        filters["coordinate"] = {
            "axes": data.dim,
            "ranges": [
                [float(data.points[:, j].min()), float(data.points[:, j].max())]
                for j in range(data.dim)
            ],
        }
    return {
        "id": handle.id,
        "n": data.n,
        "d": None if is_matrix else data.dim,
        "kind": "matrix" if is_matrix else "points",
        "uploaded_at": handle.uploaded_at,
        "filters": filters,
    }


class FilterSpec(BaseModel):
    kind: str
    axis: int | None = None
    point: list[float] | None = None
    bandwidth: float | None = None


class ClusteringSpec(BaseModel):
    strategy: str = "eps"
    epsilon: float | None = None
    k: int | None = None
    threshold: float | None = None


class MapperRequest(BaseModel):
    filter: FilterSpec
    gain: float = 0.3
    resolution: float | None = None
    intervals: int | None = 4
    clustering: ClusteringSpec = ClusteringSpec()


def _field_error(loc, msg):
    raise HTTPException(status_code=422, detail=[{"loc": ["body"] + loc, "msg": msg}])


def _parse_upload(text: str, kind: str):
    if kind == "points":
        return PointCloud.from_csv_text(text, origin="upload")
    if kind == "matrix":
        return DissimilarityMatrix.from_text(text, origin="upload")
    try:
        return DissimilarityMatrix.from_text(text, origin="upload")
    except ValueError:
        return PointCloud.from_csv_text(text, origin="upload")


def create_app(
    max_points: int = DEFAULT_MAX_POINTS,
    time_budget: float = DEFAULT_TIME_BUDGET,
    data_dir: str = None,
    static_dir: str = None,
) -> FastAPI:
    app = FastAPI(title="tdakit mapper service", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    datasets: dict[str, DatasetHandle] = {}
    app.state.datasets = datasets

    def _store(handle: DatasetHandle):
        datasets[handle.id] = handle

    def _snapshot(handle: DatasetHandle, text: str, kind: str):
        if not data_dir:
            return
        Path(data_dir).mkdir(parents=True, exist_ok=True)
        payload = {"id": handle.id, "kind": kind, "text": text, "uploaded_at": handle.uploaded_at}
        (Path(data_dir) / f"{handle.id}.json").write_text(json.dumps(payload))

    def _reload_snapshots():
        if not data_dir or not Path(data_dir).is_dir():
            return
        for path in sorted(Path(data_dir).glob("*.json")):
            try:
                payload = json.loads(path.read_text())
                data = _parse_upload(payload["text"], payload["kind"])
                handle = DatasetHandle(payload["id"], data, payload["uploaded_at"])
                handle.summary = _summarize(handle)
                _store(handle)
            except (ValueError, KeyError):
                continue

    _reload_snapshots()

    @app.get("/filters")
    def get_filters():
        return {"filters": FILTER_CATALOG}

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request, kind: str = Query("auto", pattern="^(auto|points|matrix)$")):
        body = await request.body()
        text = body.decode("utf-8", errors="strict")
        try:
            data = _parse_upload(text, kind)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if data.n > max_points:
            raise HTTPException(
                status_code=413,
                detail=f"{data.n} points exceed the configured cap of {max_points}",
            )
        handle = DatasetHandle(
            id=secrets.token_hex(8),
            data=data,
            uploaded_at=datetime.now(timezone.utc).isoformat(),
        )
        handle.summary = _summarize(handle)
        _store(handle)
        _snapshot(handle, text, "matrix" if isinstance(data, DissimilarityMatrix) else "points")
        return handle.summary

    def _get_handle(dataset_id: str) -> DatasetHandle:
        handle = datasets.get(dataset_id)
        if handle is None:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id}")
        return handle

    @app.get("/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        return _get_handle(dataset_id).summary

    @app.post("/datasets/{dataset_id}/mapper")
    def run_mapper(dataset_id: str, req: MapperRequest):
        handle = _get_handle(dataset_id)
        data = handle.data
        is_matrix = isinstance(data, DissimilarityMatrix)

        spec = req.filter
        if spec.kind not in {f["kind"] for f in FILTER_CATALOG}:
            _field_error(["filter", "kind"], f"unknown filter {spec.kind!r}")
        if spec.kind in ("coordinate", "distance_to_point") and is_matrix:
            _field_error(["filter", "kind"], f"{spec.kind} needs point coordinates, dataset is a matrix")
        if spec.kind == "coordinate":
            if spec.axis is None or not 0 <= spec.axis < data.dim:
                _field_error(["filter", "axis"], f"axis must be in [0, {data.dim - 1}]")
        if spec.kind == "distance_to_point" and spec.point is None:
            _field_error(["filter", "point"], "distance_to_point needs a point")
        if spec.kind == "density" and (spec.bandwidth is None or spec.bandwidth <= 0):
            _field_error(["filter", "bandwidth"], "density needs bandwidth > 0")
        if not 0.0 < req.gain < 1.0:
            _field_error(["gain"], "gain must be in (0, 1)")
        if req.resolution is not None and req.resolution <= 0:
            _field_error(["resolution"], "resolution must be > 0")
        if req.resolution is None and (req.intervals is None or req.intervals < 1):
            _field_error(["intervals"], "need a resolution or an interval count >= 1")
        cl = req.clustering
        if cl.strategy not in ("eps", "knn", "linkage"):
            _field_error(["clustering", "strategy"], f"unknown strategy {cl.strategy!r}")
        if cl.strategy == "eps" and cl.epsilon is not None and cl.epsilon <= 0:
            _field_error(["clustering", "epsilon"], "epsilon must be > 0")
        if cl.strategy == "knn" and (cl.k is None or cl.k < 1):
            _field_error(["clustering", "k"], "knn clustering needs k >= 1")
        if cl.strategy == "linkage" and (cl.threshold is None or cl.threshold <= 0):
            _field_error(["clustering", "threshold"], "linkage clustering needs threshold > 0")

        key = json.dumps(req.model_dump(), sort_keys=True, separators=(",", ":"))
        cached = handle.mapper_cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")

        started = time.monotonic()
        fkw = {}
        if spec.axis is not None:
            fkw["axis"] = spec.axis
        if spec.point is not None:
            fkw["point"] = spec.point
        if spec.bandwidth is not None:
            fkw["bandwidth"] = spec.bandwidth
        try:
            f = filter_values(data, spec.kind, **fkw)
            lo, hi = float(f.min()), float(f.max())
            if hi <= lo:
                hi = lo + 1e-9
            if req.resolution is not None:
                cover = build_cover_1d(lo, hi, req.resolution, req.gain)
            else:
                cover = cover_for_intervals(lo, hi, req.intervals, req.gain)
            config = ClusteringConfig(
                strategy=cl.strategy, epsilon=cl.epsilon, k=cl.k, threshold=cl.threshold
            )
            graph = mapper(data, f, cover, config, filter_name=spec.kind)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=[{"loc": ["body"], "msg": str(exc)}])
        elapsed = time.monotonic() - started
        if elapsed > time_budget:
            raise HTTPException(
                status_code=422,
                detail=[
                    {
                        "loc": ["body"],
                        "msg": (
                            f"computation took {elapsed:.1f}s, over the {time_budget:.1f}s budget; "
                            "reduce the dataset or restart the service with a higher --time-budget"
                        ),
                    }
                ],
            )

        payload = graph.to_json_dict()
        payload["elapsed_seconds"] = round(elapsed, 6)
        if req.gain >= 0.5:
            payload["warning"] = "nerve may contain higher simplices; rendered as graph"
        body = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        handle.mapper_cache[key] = body
        return Response(content=body, media_type="application/json")

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def main(argv=None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="tdakit-mapper-service", description=__doc__)
    parser.add_argument("--host", default=os.environ.get("TDAKIT_SERVICE_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("TDAKIT_SERVICE_PORT", "8080")))
    parser.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    parser.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET)
    parser.add_argument("--data-dir", default=None, help="snapshot uploads here and reload them on start")
    parser.add_argument("--static-dir", default=None, help="serve a built UI bundle from this directory")
    args = parser.parse_args(argv)
    app = create_app(
        max_points=args.max_points,
        time_budget=args.time_budget,
        data_dir=args.data_dir,
        static_dir=args.static_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main())
