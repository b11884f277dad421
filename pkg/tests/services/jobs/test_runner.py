from __future__ import annotations

import json

import pytest

from src.ingestion.pipelines.parse_job import parse_job
from src.ingestion.schemas.corpus_manifest import DEFAULT_MANIFEST
from src.ingestion.schemas.job_schemas import JobSpec, RunStatement
from src.services.errors import PreconditionError
from src.services.jobs.runner import run_job
from src.services.resolutions import free_resolution

RING3 = "ring 3 x y z mod 32003;\n"


def test_resolve_report():
    result = run_job(parse_job(RING3 + "ideal M = x, y, z;\nrun resolve M;"))
    assert result.text.startswith("== resolve M\n")
    assert "  ranks: 1 3 3 1" in result.text.splitlines()
    run = result.report.runs[0]
    assert run["command"] == "resolve"
    assert run["ranks"] == [1, 3, 3, 1]
    assert run["exact"] is True
    assert run["minimal"] is True


def test_koszul_report():
    result = run_job(parse_job(RING3 + "ideal C = x^2, y^2, z^2;\nrun koszul C;"))
    run = result.report.runs[0]
    assert run["dimensions"] == {"1": 3, "2": 3, "3": 1}
    assert run["nonzero_products"]
    assert "  dim H_1 = 3" in result.text.splitlines()


def test_trim_report():
    result = run_job(parse_job(RING3 + "ideal I = x^2, x*y, z^3;\nrun trim I sigma=1;"))
    run = result.report.runs[0]
    assert run["trimmed_generators"] == ["x*y", "z^3"]
    assert run["ranks"] == [1, 2, 1]
    assert "  trimmed ideal: (x*y, z^3)" in result.text.splitlines()


def test_golod_report_headline():
    result = run_job(parse_job(RING3 + "ideal M = x, y, z;\nideal P = x^2, x*y, x*z, y^2, y*z, z^2;\nrun golod P N=4;"))
    lines = result.text.splitlines()
    assert lines[0] == "== golod P"
    assert lines[1] == "  GOLOD-CONSISTENT (Serre equality to N=4)"
    assert "  P_k(t): 1 3 9 27 81" in lines
    run = result.report.runs[0]
    assert run["headline"] == "GOLOD-CONSISTENT (Serre equality to N=4)"
    assert run["verdict"]["kind"] == "golod_evidence_up_to"


def test_structured_report_is_deterministic():
    text = RING3 + "ideal M = x, y, z;\nrun resolve M;\nrun koszul M;"
    first = run_job(parse_job(text)).structured
    second = run_job(parse_job(text)).structured
    assert first == second
    payload = json.loads(first)
    assert payload["schema_version"] == "1"
    assert payload["job"].startswith("ring 3 x y z mod 32003 order grevlex;")
    assert [run["command"] for run in payload["runs"]] == ["resolve", "koszul"]


def test_four_squares_product_resolution_reports_the_witness():
    job = (DEFAULT_MANIFEST.parent / "corpus" / "four_squares_product.job").read_text(encoding="utf-8")
    result = run_job(parse_job(job))
    lines = result.text.splitlines()
    assert lines[1] == "  NON-GOLOD (witness: H_2·H_2 product g_{12}·g_{34})"
    run = result.report.runs[0]
    assert run["ranks"] == [1, 16, 30, 20, 5]
    assert run["witness"] == {"indices": [1, 2, 3, 4], "nontrivial": True}


def test_runs_other_than_corpus_need_a_ring():
    spec = JobSpec(runs=[RunStatement(command="resolve", arguments=["I"])])
    with pytest.raises(PreconditionError):
        run_job(spec)


def test_containment_is_checked_before_building_the_cone():
    with pytest.raises(PreconditionError):
        run_job(parse_job(RING3 + "ideal A = x^2, y^2;\nideal I = x^2, z;\nrun product-resolution A I;"))


def test_bound_option_reaches_the_exactness_check(monkeypatch):
    bounds = []
    real = free_resolution.homology_defects

    def recording(complex_, max_degree, quotient=None):
        bounds.append(max_degree)
        return real(complex_, max_degree, quotient)

    monkeypatch.setattr(free_resolution, "homology_defects", recording)
    job = RING3 + (
        "ideal I = x^2, x*y, z^3;\nideal A = x^2, y^2, z^2;\nideal M = x, y, z;\n"
        "run trim I sigma=1 bound=7;\nrun product-resolution A M bound=6;"
    )
    run_job(parse_job(job))
    assert bounds == [7, 6]
