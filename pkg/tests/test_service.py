import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from tdakit.service import create_app


def circle_csv(n=100, seed=5):
    rng = np.random.default_rng(seed)
    ang = 2 * np.pi * (np.arange(n) + rng.uniform(0, 0.5, n)) / n
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    return "\n".join(f"{x:.17g},{y:.17g}" for x, y in pts) + "\n"


@pytest.fixture()
def client():
    with TestClient(create_app(max_points=1000)) as c:
        yield c


def upload(client, text=None, **kw):
    return client.post("/datasets", content=(text or circle_csv()).encode(), **kw)


MAPPER_REQspan = None


def mapper_request(gain=0.3, intervals=4, epsilon=0.4):
    return {
        "filter": {"kind": "coordinate", "axis": 1},
        "gain": gain,
        "intervals": intervals,
        "clustering": {"strategy": "eps", "epsilon": epsilon},
    }


class TestUpload:
    def test_points_csv(self, client):
        r = upload(client)
        assert r.status_code == 201
        body = r.json()
        assert body["n"] == 100 and body["d"] == 2 and body["kind"] == "points"
        assert body["filters"]["coordinate"]["axes"] == 2
        assert body["filters"]["eccentricity"]["max"] == pytest.approx(2.0, abs=0.05)

    def test_matrix_upload(self, client):
        r = upload(client, text="0 1 2\n1 0 1\n2 1 0\n")
        assert r.status_code == 201
        body = r.json()
        assert body["kind"] == "matrix" and body["d"] is None and body["n"] == 3

    def test_non_square_matrix_as_points(self, client):
        # a 2x3 numeric table is not a matrix; it parses as 2 points in R^3
        r = upload(client, text="0,1,2\n3,4,5\n")
        assert r.status_code == 201
        assert r.json()["kind"] == "points"

    def test_unparseable_body_400(self, client):
        r = upload(client, text="these,are,words\nnot,numbers,either\n")
        assert r.status_code == 400

    def test_cap_413(self):
        with TestClient(create_app(max_points=10)) as client:
            assert upload(client).status_code == 413

    def test_reupload_distinct_ids(self, client):
        a, b = upload(client), upload(client)
        assert a.json()["id"] != b.json()["id"]

    def test_get_dataset_and_404(self, client):
        ds = upload(client).json()
        assert client.get(f"/datasets/{ds['id']}").json() == ds
        assert client.get("/datasets/deadbeef").status_code == 404


class TestMapperEndpoint:
    def test_circle_cycle_graph(self, client):
        ds = upload(client).json()
        r = client.post(f"/datasets/{ds['id']}/mapper", json=mapper_request())
        assert r.status_code == 200
        g = r.json()
        assert len(g["nodes"]) == len(g["edges"])
        degrees = {}
        for e in g["edges"]:
            degrees[e["source"]] = degrees.get(e["source"], 0) + 1
            degrees[e["target"]] = degrees.get(e["target"], 0) + 1
        assert set(degrees.values()) == {2}
        assert "elapsed_seconds" in g

    def test_byte_identical_responses(self, client):
        ds = upload(client).json()
        req = mapper_request()
        a = client.post(f"/datasets/{ds['id']}/mapper", json=req)
        b = client.post(f"/datasets/{ds['id']}/mapper", json=req)
        assert a.content == b.content

    def test_high_gain_warning(self, client):
        ds = upload(client).json()
        r = client.post(f"/datasets/{ds['id']}/mapper", json=mapper_request(gain=0.9))
        assert r.status_code == 200
        assert "higher simplices" in r.json()["warning"]

    def test_unknown_filter_422(self, client):
        ds = upload(client).json()
        req = mapper_request()
        req["filter"] = {"kind": "entropy"}
        r = client.post(f"/datasets/{ds['id']}/mapper", json=req)
        assert r.status_code == 422
        assert r.json()["detail"][0]["loc"] == ["body", "filter", "kind"]

    def test_bad_gain_and_axis_422(self, client):
        ds = upload(client).json()
        req = mapper_request(gain=1.5)
        assert client.post(f"/datasets/{ds['id']}/mapper", json=req).status_code == 422
        req = mapper_request()
        req["filter"]["axis"] = 7
        r = client.post(f"/datasets/{ds['id']}/mapper", json=req)
        assert r.status_code == 422
        assert r.json()["detail"][0]["loc"] == ["body", "filter", "axis"]

    def test_unknown_dataset_404(self, client):
        assert client.post("/datasets/none/mapper", json=mapper_request()).status_code == 404

    def test_filters_catalog(self, client):
        kinds = {f["kind"] for f in client.get("/filters").json()["filters"]}
        assert {"eccentricity", "centrality", "coordinate", "density"} <= kinds

    def test_eccentricity_on_matrix(self, client):
        ds = upload(client, text="0 1 2\n1 0 1\n2 1 0\n").json()
        req = {"filter": {"kind": "eccentricity"}, "gain": 0.3, "intervals": 2,
               "clustering": {"strategy": "eps", "epsilon": 1.5}}
        r = client.post(f"/datasets/{ds['id']}/mapper", json=req)
        assert r.status_code == 200
        assert len(r.json()["nodes"]) >= 1

    def test_coordinate_filter_on_matrix_422(self, client):
        ds = upload(client, text="0 1 2\n1 0 1\n2 1 0\n").json()
        r = client.post(f"/datasets/{ds['id']}/mapper", json=mapper_request())
        assert r.status_code == 422


def test_snapshot_reload(tmp_path):
    data_dir = tmp_path / "snaps"
    with TestClient(create_app(data_dir=str(data_dir))) as client:
        ds = upload(client).json()
    # a fresh app instance reloads the stored dataset
    with TestClient(create_app(data_dir=str(data_dir))) as client2:
        r = client2.get(f"/datasets/{ds['id']}")
        assert r.status_code == 200
        assert r.json()["n"] == 100
        g = client2.post(f"/datasets/{ds['id']}/mapper", json=mapper_request())
        assert g.status_code == 200


def test_time_budget_rejection(monkeypatch):
    import tdakit.service as svc

    with TestClient(create_app(time_budget=0.0)) as client:
        ds = upload(client).json()
        r = client.post(f"/datasets/{ds['id']}/mapper", json=mapper_request())
        assert r.status_code == 422
        assert "budget" in r.json()["detail"][0]["msg"]
