"""Corpus manifest definitions loaded from config/corpus.json."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

DEFAULT_MANIFEST = Path(__file__).resolve().parents[3] / "config" / "corpus.json"


@dataclass
class CorpusEntry:
    entry_id: str
    job_file: Optional[Path] = None
    description: str = ""
    # "job" runs a job file, "random_pairs" runs the seeded monomial-pair suite
    kind: str = "job"
    count: int = 0
    # expectation name -> expected value, e.g. {"verdict": "non_golod", "ranks": [1, 9, 12, 4]}
    expect: Dict[str, object] = field(default_factory=dict)
    slow: bool = False

    def read_job(self) -> str:
        if self.job_file is None:
            raise FileNotFoundError(f"corpus entry {self.entry_id} has no job file")
        return self.job_file.read_text(encoding="utf-8")


class CorpusRepository:
    """Loads corpus entries stored in JSON; job paths are relative to the manifest."""

    def __init__(self, config_path: Path | str = DEFAULT_MANIFEST) -> None:
        self.config_path = Path(config_path)
        self._cache: Dict[str, CorpusEntry] = {}
        self._load()

    def _load(self) -> None:
        if not self.config_path.exists():
            return
        with self.config_path.open("r", encoding="utf-8") as handle:
            payload = json.load(handle)
        root = self.config_path.parent
        for entry in payload.get("entries", []):
            self._cache[entry["id"]] = CorpusEntry(
                entry_id=entry["id"],
                job_file=root / entry["job"] if "job" in entry else None,
                description=entry.get("description", ""),
                kind=entry.get("kind", "job"),
                count=int(entry.get("count", 0)),
                expect=entry.get("expect", {}),
                slow=bool(entry.get("slow", False)),
            )

    def get(self, entry_id: str) -> Optional[CorpusEntry]:
        return self._cache.get(entry_id)

    def list_all(self) -> List[CorpusEntry]:
        return list(self._cache.values())
