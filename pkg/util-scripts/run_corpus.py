#!/usr/bin/env python3
"""Helper script to run the example corpus and print the structured result."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.ingestion.schemas.corpus_manifest import CorpusRepository
from src.services.jobs.corpus import run_corpus
from src.services.logging import configure_logging
from src.services.settings import load_settings


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run the corpus manifest and report pass/fail per entry.")
    parser.add_argument("entries", nargs="*", help="Corpus entry ids (default: all entries)")
    parser.add_argument(
        "--manifest",
        type=Path,
        default=PROJECT_ROOT / "config" / "corpus.json",
        help="Corpus manifest (default: ./config/corpus.json)",
    )
    parser.add_argument("--skip-slow", action="store_true", help="Leave out entries marked slow")
    parser.add_argument("--seed", type=int, help="Seed for the random monomial-pair suite")
    parser.add_argument("--table", action="store_true", help="Print the pass/fail matrix instead of JSON")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    settings = load_settings().with_overrides(seed=args.seed)
    configure_logging(settings.log_level)
    result = run_corpus(CorpusRepository(args.manifest), settings, args.entries or None, include_slow=not args.skip_slow)
    if args.table:
        print(result.frame.to_string())
    else:
        print(json.dumps(result.as_dict(), indent=2, ensure_ascii=False))
    if result.passed != result.total:
        sys.exit(1)


if __name__ == "__main__":
    main()
