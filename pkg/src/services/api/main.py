"""FastAPI application exposing job execution and the example corpus."""

from __future__ import annotations

from typing import Any, Dict, List

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from src.ingestion.pipelines.parse_job import parse_job
from src.ingestion.schemas.corpus_manifest import CorpusRepository
from src.services.errors import EngineInvariantError, GolodForgeError, JobParseError, PreconditionError
from src.services.jobs.corpus import run_entry
from src.services.jobs.runner import run_job
from src.services.settings import load_settings

settings = load_settings()
corpus_repository = CorpusRepository()

app = FastAPI(
    title="golod-forge API",
    version="0.1.0",
    description="Exact commutative algebra jobs: resolutions, trimming complexes and Golodness verdicts.",
)


class JobRequest(BaseModel):
    job: str = Field(..., description="Job text: ring, ideal and run statements.")
    strand_bound: int | None = Field(default=None, ge=0, description="Override for the strand bound.")
    seed: int | None = Field(default=None, description="Seed for randomized corpus suites.")


class JobResponse(BaseModel):
    schema_version: str
    job: str
    runs: List[Dict[str, Any]]
    text: str


class CorpusEntrySummary(BaseModel):
    entry_id: str
    kind: str
    description: str = ""
    expect: Dict[str, Any] = Field(default_factory=dict)
    slow: bool = False


class CorpusEntryResult(BaseModel):
    entry_id: str
    passed: bool
    checks: Dict[str, bool] = Field(default_factory=dict)
    facts: Dict[str, Any] = Field(default_factory=dict)
    error: str | None = None


def _http_error(exc: GolodForgeError) -> HTTPException:
    if isinstance(exc, JobParseError):
        detail: Dict[str, Any] = {"message": exc.reason, "line": exc.line, "column": exc.column}
        return HTTPException(status_code=422, detail=detail)
    if isinstance(exc, PreconditionError):
        return HTTPException(status_code=409, detail=str(exc))
    if isinstance(exc, EngineInvariantError):
        return HTTPException(status_code=500, detail=f"internal invariant violated: {exc}")
    return HTTPException(status_code=500, detail=str(exc))


@app.post("/jobs", response_model=JobResponse)
def submit_job(request: JobRequest) -> JobResponse:
    """Parse and run a job; the response carries the structured report and its text rendering."""
    job_settings = settings.with_overrides(strand_bound=request.strand_bound, seed=request.seed)
    try:
        result = run_job(parse_job(request.job), job_settings, corpus_repository)
    except GolodForgeError as exc:
        raise _http_error(exc) from exc
    report = result.report
    return JobResponse(schema_version=report.schema_version, job=report.job, runs=report.runs, text=result.text)


@app.get("/corpus", response_model=List[CorpusEntrySummary])
def list_corpus() -> List[CorpusEntrySummary]:
    return [
        CorpusEntrySummary(
            entry_id=entry.entry_id,
            kind=entry.kind,
            description=entry.description,
            expect=entry.expect,
            slow=entry.slow,
        )
        for entry in corpus_repository.list_all()
    ]


@app.post("/corpus/{entry_id}", response_model=CorpusEntryResult)
def run_corpus_entry(entry_id: str) -> CorpusEntryResult:
    entry = corpus_repository.get(entry_id)
    if entry is None:
        raise HTTPException(status_code=404, detail="Corpus entry not found.")
    outcome = run_entry(entry, settings)
    return CorpusEntryResult(
        entry_id=outcome.entry_id,
        passed=outcome.passed,
        checks=outcome.checks,
        facts=outcome.facts,
        error=outcome.error,
    )
