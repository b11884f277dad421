from __future__ import annotations

from fastapi.testclient import TestClient

from src.services.api.main import app

client = TestClient(app)

RING3 = "ring 3 x y z mod 32003;\n"


def test_submit_job():
    response = client.post("/jobs", json={"job": RING3 + "ideal M = x, y, z;\nrun resolve M;"})
    assert response.status_code == 200
    body = response.json()
    assert body["schema_version"] == "1"
    assert body["runs"][0]["ranks"] == [1, 3, 3, 1]
    assert body["text"].startswith("== resolve M")


def test_parse_errors_map_to_422():
    response = client.post("/jobs", json={"job": RING3 + "ideal I = x + y^2;\nrun resolve I;"})
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert detail["line"] == 2
    assert detail["column"] == 11
    assert "inhomogeneous" in detail["message"]


def test_precondition_errors_map_to_409():
    job = RING3 + "ideal A = x^2, y^2;\nideal I = x^2, z;\nrun product-resolution A I;"
    response = client.post("/jobs", json={"job": job})
    assert response.status_code == 409


def test_negative_strand_bound_is_rejected():
    response = client.post("/jobs", json={"job": RING3 + "ideal M = x;\nrun resolve M;", "strand_bound": -1})
    assert response.status_code == 422


def test_list_corpus():
    response = client.get("/corpus")
    assert response.status_code == 200
    ids = {entry["entry_id"] for entry in response.json()}
    assert {"koszul-m", "m-squared", "random-monomial-pairs"} <= ids


def test_run_corpus_entry():
    response = client.post("/corpus/koszul-m")
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert body["checks"] == {"ranks": True, "exact": True}


def test_unknown_corpus_entry():
    assert client.post("/corpus/absent").status_code == 404
