"""Corpus runs: every manifest entry executed and checked against its expectations."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from src.ingestion.pipelines.parse_job import parse_job
from src.ingestion.schemas.corpus_manifest import CorpusEntry, CorpusRepository
from src.services.errors import GolodForgeError, PreconditionError
from src.services.golod.random_pairs import h1_products_vanish, random_monomial_pairs
from src.services.logging import get_logger, log_event
from src.services.settings import EngineSettings

from .runner import run_job

logger = get_logger(__name__)


@dataclass
class EntryOutcome:
    entry_id: str
    # expectation -> True when it held
    checks: Dict[str, bool] = field(default_factory=dict)
    facts: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.checks.values())


@dataclass
class CorpusResult:
    outcomes: List[EntryOutcome]

    @property
    def passed(self) -> int:
        return sum(outcome.passed for outcome in self.outcomes)

    @property
    def total(self) -> int:
        return len(self.outcomes)

    @property
    def frame(self) -> pd.DataFrame:
        """Pass/fail matrix: one row per entry, one column per expectation."""
        rows = {}
        for outcome in self.outcomes:
            row = {key: "pass" if held else "FAIL" for key, held in outcome.checks.items()}
            row["status"] = "pass" if outcome.passed else ("error" if outcome.error else "FAIL")
            rows[outcome.entry_id] = row
        frame = pd.DataFrame.from_dict(rows, orient="index")
        if frame.empty:
            return frame
        columns = sorted(c for c in frame.columns if c != "status") + ["status"]
        return frame[columns].fillna("-")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "total": self.total,
            "entries": [
                {
                    "id": outcome.entry_id,
                    "passed": outcome.passed,
                    "checks": dict(sorted(outcome.checks.items())),
                    "error": outcome.error,
                }
                for outcome in self.outcomes
            ],
        }


def _facts(runs: Sequence[Dict[str, Any]]) -> Dict[str, Any]:
    """Observable values of a job's runs; later runs override earlier ones."""
    facts: Dict[str, Any] = {}
    for run in runs:
        if "ranks" in run:
            facts["ranks"] = run["ranks"]
        if "exact" in run:
            facts["exact"] = run["exact"]
        if "minimal_cone" in run:
            facts["minimal_cone"] = run["minimal_cone"]
        if "witness" in run:
            facts["witness_nontrivial"] = run["witness"]["nontrivial"]
        verdict = run.get("verdict")
        if verdict:
            facts["verdict"] = verdict["kind"]
            facts["certificates"] = [c["kind"] for c in verdict.get("certificates", [])]
        poincare = run.get("poincare")
        if poincare:
            facts["serre_equality"] = not poincare["deficits"]
            facts["betti_of_k"] = poincare["betti_of_k"]
        products = run.get("products")
        if products:
            facts["products_trivial"] = not products["nonzero"]
        if run.get("tor"):
            facts["tor_class"] = run["tor"]["label"]
    return facts


def _holds(key: str, expected: Any, facts: Dict[str, Any]) -> bool:
    actual = facts.get(key)
    if key == "certificates":
        return actual is not None and set(expected) <= set(actual)
    if key == "betti_of_k":
        return actual is not None and list(actual[: len(expected)]) == list(expected)
    return actual == expected


def _run_job_entry(entry: CorpusEntry, settings: EngineSettings) -> Dict[str, Any]:
    spec = parse_job(entry.read_job())
    if any(run.command == "corpus" for run in spec.runs):
        raise PreconditionError(f"corpus entry {entry.entry_id} may not run the corpus")
    return _facts(run_job(spec, settings).report.runs)


def _run_pairs_entry(entry: CorpusEntry, settings: EngineSettings) -> Dict[str, Any]:
    checks = [h1_products_vanish(first, second, settings) for first, second in random_monomial_pairs(entry.count, settings.seed)]
    return {
        "h1_products_trivial": all(check.trivial for check in checks),
        "pairs": len(checks),
    }


def run_entry(entry: CorpusEntry, settings: EngineSettings) -> EntryOutcome:
    outcome = EntryOutcome(entry.entry_id)
    try:
        if entry.kind == "random_pairs":
            outcome.facts = _run_pairs_entry(entry, settings)
        else:
            outcome.facts = _run_job_entry(entry, settings)
    except (GolodForgeError, OSError) as exc:
        outcome.error = f"{type(exc).__name__}: {exc}"
        log_event(logger, "corpus_entry_error", entry=entry.entry_id, error=outcome.error)
        return outcome
    outcome.checks = {key: _holds(key, expected, outcome.facts) for key, expected in entry.expect.items()}
    log_event(logger, "corpus_entry", entry=entry.entry_id, passed=outcome.passed)
    return outcome


def run_corpus(
    repository: CorpusRepository,
    settings: Optional[EngineSettings] = None,
    entry_ids: Optional[Sequence[str]] = None,
    include_slow: bool = True,
) -> CorpusResult:
    settings = settings or EngineSettings()
    if entry_ids:
        missing = [entry_id for entry_id in entry_ids if repository.get(entry_id) is None]
        if missing:
            raise PreconditionError(f"unknown corpus entries: {', '.join(missing)}")
        entries = [repository.get(entry_id) for entry_id in entry_ids]
    else:
        entries = [entry for entry in repository.list_all() if include_slow or not entry.slow]
    if settings.threads > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=settings.threads) as pool:
            outcomes = list(pool.map(run_entry, entries, [settings] * len(entries)))
    else:
        outcomes = [run_entry(entry, settings) for entry in entries]
    result = CorpusResult(outcomes)
    log_event(logger, "corpus", passed=result.passed, total=result.total)
    return result
