from __future__ import annotations

import json

from src.ingestion.pipelines.parse_job import parse_job
from src.ingestion.schemas.corpus_manifest import CorpusRepository


def test_default_manifest_loads():
    repository = CorpusRepository()
    ids = [entry.entry_id for entry in repository.list_all()]
    assert "m-squared" in ids
    assert "four-squares-product" in ids
    pairs = repository.get("random-monomial-pairs")
    assert pairs.kind == "random_pairs"
    assert pairs.count == 20
    assert pairs.slow


def test_every_corpus_job_parses():
    for entry in CorpusRepository().list_all():
        if entry.kind != "job":
            continue
        spec = parse_job(entry.read_job())
        assert spec.runs, entry.entry_id


def test_job_paths_are_relative_to_the_manifest(tmp_path):
    (tmp_path / "jobs").mkdir()
    (tmp_path / "jobs" / "one.job").write_text("ring 1 x mod 32003;\nideal I = x;\nrun resolve I;\n", encoding="utf-8")
    manifest = tmp_path / "corpus.json"
    manifest.write_text(
        json.dumps({"entries": [{"id": "one", "job": "jobs/one.job", "expect": {"ranks": [1, 1]}}]}),
        encoding="utf-8",
    )
    repository = CorpusRepository(manifest)
    entry = repository.get("one")
    assert entry.kind == "job"
    assert entry.expect == {"ranks": [1, 1]}
    assert "run resolve I" in entry.read_job()
    assert repository.get("missing") is None


def test_missing_manifest_is_empty(tmp_path):
    assert CorpusRepository(tmp_path / "absent.json").list_all() == []
