"""golod-forge: run a job file and print its report.

Exit codes: 0 ok, 2 job parse error, 3 violated precondition, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from src.ingestion.pipelines.parse_job import parse_job
from src.ingestion.schemas.job_schemas import JobSpec
from src.services.errors import GolodForgeError, PreconditionError
from src.services.jobs.runner import run_job
from src.services.logging import configure_logging, get_logger, log_event
from src.services.settings import load_settings

logger = get_logger(__name__)


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="golod-forge", description="Run a golod-forge job file.")
    parser.add_argument("jobfile", type=Path, help="Job file with ring, ideal and run statements")
    parser.add_argument("--out", type=Path, help="Write the report to this file instead of stdout")
    parser.add_argument(
        "--format",
        choices=["text", "structured"],
        help="Report format (default: the job's format option, else text)",
    )
    parser.add_argument("--strand-bound", type=int, dest="strand_bound", help="Largest internal degree examined in strand checks")
    parser.add_argument("--seed", type=int, help="Seed for randomized corpus suites")
    parser.add_argument(
        "--log-level",
        dest="log_level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level for engine events written to stderr",
    )
    return parser.parse_args(argv)


def _output_format(requested: Optional[str], spec: JobSpec) -> str:
    if requested:
        return requested
    for run in spec.runs:
        if "format" in run.options:
            return run.options["format"]
    return "text"


def main(argv: Optional[Sequence[str]] = None) -> None:
    args = parse_args(argv)
    settings = load_settings().with_overrides(strand_bound=args.strand_bound, seed=args.seed, log_level=args.log_level)
    configure_logging(settings.log_level)
    try:
        try:
            text = args.jobfile.read_text(encoding="utf-8")
        except OSError as exc:
            raise PreconditionError(f"cannot read job file {args.jobfile}: {exc.strerror}") from exc
        spec = parse_job(text)
        result = run_job(spec, settings)
    except GolodForgeError as exc:
        print(f"golod-forge: {type(exc).__name__}: {exc}", file=sys.stderr)
        raise SystemExit(exc.exit_code) from exc
    output = result.structured if _output_format(args.format, spec) == "structured" else result.text
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(output, encoding="utf-8")
        log_event(logger, "report_written", path=str(args.out))
    else:
        sys.stdout.write(output)
    raise SystemExit(0)


if __name__ == "__main__":
    main()
