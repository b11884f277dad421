"""Text and structured renderings of job results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from src.services.complexes.chain_complex import ChainComplex
from src.services.resolutions.betti import BettiTable
from src.services.settings import SCHEMA_VERSION


@dataclass
class Section:
    """One executed run statement: a text block plus its structured payload."""

    command: str
    title: str
    lines: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)


class JobReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    job: str = Field(..., description="Canonical text of the job that produced the report.")
    runs: List[Dict[str, Any]] = Field(default_factory=list)


def complex_summary(complex_: ChainComplex) -> Dict[str, Any]:
    return {
        "ranks": complex_.ranks(),
        "length": complex_.length,
        "minimal": complex_.is_minimal(),
    }


def betti_lines(table: BettiTable) -> List[str]:
    if not table.entries:
        return ["(empty Betti table)"]
    return table.render().splitlines()


def ranks_line(ranks: List[int]) -> str:
    return "ranks: " + " ".join(str(rank) for rank in ranks)


def build_report(job_text: str, sections: List[Section]) -> JobReport:
    runs = [{"command": section.command, "title": section.title, **section.data} for section in sections]
    return JobReport(job=job_text, runs=runs)


def render_text(sections: List[Section]) -> str:
    blocks = []
    for section in sections:
        body = "\n".join(f"  {line}" for line in section.lines)
        blocks.append(f"== {section.title}\n{body}" if body else f"== {section.title}")
    return "\n\n".join(blocks) + "\n"


def render_structured(report: JobReport) -> str:
    """Stable JSON: sorted keys, no timestamps, so identical jobs give identical bytes."""
    return json.dumps(report.model_dump(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
