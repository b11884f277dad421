"""Execution of parsed jobs, one run statement after another."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from src.ingestion.pipelines.parse_job import build_ideals, format_job
from src.ingestion.schemas.corpus_manifest import CorpusRepository
from src.ingestion.schemas.job_schemas import JobSpec, RunStatement
from src.services.errors import PreconditionError
from src.services.golod.homology_algebra import koszul_homology_algebra, product_triviality
from src.services.golod.verdict import golod_verdict
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.resolutions.betti import BettiTable, betti_table
from src.services.resolutions.free_resolution import minimal_free_resolution, verify_resolution
from src.services.settings import EngineSettings
from src.services.trimming.criteria import nongolod_witness_product
from src.services.trimming.product_resolution import build_product_resolution
from src.services.trimming.trimming_complex import build_trimming_complex, trimming_summand_classes

from .reports import JobReport, Section, betti_lines, build_report, complex_summary, ranks_line, render_structured, render_text

logger = get_logger(__name__)

Ideals = Dict[str, Ideal]


@dataclass
class JobResult:
    report: JobReport
    text: str

    @property
    def structured(self) -> str:
        return render_structured(self.report)


def _generators(ideal: Ideal) -> List[str]:
    return [str(g) for g in ideal.minimal_generators()]


def _run_settings(run: RunStatement, settings: EngineSettings) -> EngineSettings:
    return settings.with_overrides(strand_bound=run.int_option("bound"))


def _resolve(run: RunStatement, ideals: Ideals, settings: EngineSettings) -> Section:
    name = run.arguments[0]
    ideal = ideals[name]
    resolution = minimal_free_resolution(ideal, name="F")
    table = betti_table(resolution)
    exact = verify_resolution(resolution, ideal, settings.strand_bound)
    lines = [ranks_line(resolution.ranks()), f"exact through strand bound: {str(exact).lower()}", *betti_lines(table)]
    data = {"ideal": name, "generators": _generators(ideal), **complex_summary(resolution), "exact": exact, "betti_table": table.as_rows()}
    return Section("resolve", f"resolve {name}", lines, data)


def _koszul(run: RunStatement, ideals: Ideals, settings: EngineSettings) -> Section:
    name = run.arguments[0]
    ideal = ideals[name]
    algebra = koszul_homology_algebra(ideal, settings)
    products = product_triviality(algebra, settings)
    dimensions = algebra.dimensions()
    lines = [f"dim H_{i} = {dimensions[i]}" for i in sorted(dimensions)]
    lines.append(f"products checked: {products.checked}, nonzero: {len(products.nonzero)}")
    lines.extend(f"{entry.label} nonzero: {list(entry.left)}·{list(entry.right)}" for entry in products.nonzero)
    data = {
        "ideal": name,
        "dimensions": {str(i): dimensions[i] for i in sorted(dimensions)},
        "products_checked": products.checked,
        "nonzero_products": [
            {"left": list(e.left), "right": list(e.right), "coordinates": e.coordinates} for e in products.nonzero
        ],
    }
    return Section("koszul", f"koszul {name}", lines, data)


def _trim(run: RunStatement, ideals: Ideals, settings: EngineSettings) -> Section:
    name = run.arguments[0]
    sigma = run.int_list_option("sigma") or []
    a_names = run.name_list_option("a")
    a_ideals = [ideals[a] for a in a_names] if a_names else None
    minimal = run.options.get("minimal", "true") == "true"
    data, resolution = build_trimming_complex(
        ideals[name], sigma, a_ideals, minimal=minimal, bound=settings.strand_bound
    )
    summands = trimming_summand_classes(data)
    table = betti_table(resolution) if resolution.is_minimal() else None
    lines = [
        f"trimmed ideal: ({', '.join(_generators(data.trimmed_ideal))})",
        f"cone {ranks_line(data.cone.ranks())}",
        ranks_line(resolution.ranks()),
        "lifted Koszul classes: " + ", ".join(f"H_{j}: {rank}" for j, rank in sorted(summands.items())),
    ]
    if table is not None:
        lines.extend(betti_lines(table))
    payload = {
        "ideal": name,
        "sigma": data.sigma,
        "trimmed_generators": _generators(data.trimmed_ideal),
        "cone_ranks": data.cone.ranks(),
        **complex_summary(resolution),
        "summand_classes": {str(j): rank for j, rank in sorted(summands.items())},
        "betti_table": table.as_rows() if table is not None else [],
    }
    return Section("trim", f"trim {name} sigma={','.join(map(str, data.sigma))}", lines, payload)


def _product_resolution(run: RunStatement, ideals: Ideals, settings: EngineSettings) -> Section:
    a_name, name = run.arguments
    a_ideal, ideal = ideals[a_name], ideals[name]
    built = build_product_resolution(a_ideal, ideal, bound=settings.strand_bound)
    table = betti_table(built.resolution)
    lines = [
        f"cone {ranks_line(built.cone.ranks())}",
        ranks_line(built.resolution.ranks()),
        f"minimal without reduction: {str(built.minimal_cone).lower()}",
        *betti_lines(table),
    ]
    payload = {
        "a": a_name,
        "ideal": name,
        "product_generators": _generators(built.product_ideal),
        "cone_ranks": built.cone.ranks(),
        "minimal_cone": built.minimal_cone,
        **complex_summary(built.resolution),
        "betti_table": table.as_rows(),
    }
    indices = run.int_list_option("witness")
    if indices is None and built.minimal_cone and a_ideal.mu >= 4:
        indices = [1, 2, 3, 4]
    if indices is not None:
        witness = nongolod_witness_product(a_ideal, ideal, *indices)
        payload["witness"] = {"indices": list(witness.indices), "nontrivial": witness.nontrivial}
        if witness.nontrivial:
            verdict = witness.verdict()
            lines.insert(0, verdict.headline())
            payload["verdict"] = verdict.model_dump()
        else:
            lines.append(f"witness {witness.label} is trivial")
    return Section("product-resolution", f"product-resolution {a_name} {name}", lines, payload)


def _golod(run: RunStatement, ideals: Ideals, settings: EngineSettings) -> Section:
    name = run.arguments[0]
    factor_names = run.name_list_option("factors")
    factors = (ideals[factor_names[0]], ideals[factor_names[1]]) if factor_names else None
    witness = None
    indices = run.int_list_option("witness")
    if indices is not None and factors is not None:
        witness = nongolod_witness_product(factors[0], factors[1], *indices)
    report = golod_verdict(ideals[name], run.int_option("N"), settings, factors, witness)
    poincare = report.poincare
    lines = [report.verdict.headline(), f"codepth {report.codepth}, projective dimension {report.projective_dimension}"]
    if poincare is not None:
        lines.append("P_k(t): " + " ".join(map(str, poincare.betti_of_k)))
        lines.append("Serre bound: " + " ".join(map(str, poincare.serre_bound)))
    if report.tor is not None:
        lines.append(f"Tor algebra: {report.tor['label']} (p={report.tor['p']}, q={report.tor['q']}, r={report.tor['r']})")
    table = BettiTable({(row.homological_degree, row.internal_degree): row.rank for row in report.betti_table})
    lines.extend(betti_lines(table))
    lines.extend(f"note: {note}" for note in report.notes)
    payload = {"headline": report.verdict.headline(), **report.model_dump()}
    return Section("golod", f"golod {name}", lines, payload)


def _corpus(run: RunStatement, settings: EngineSettings, corpus: Optional[CorpusRepository]) -> Section:
    from .corpus import run_corpus

    result = run_corpus(corpus or CorpusRepository(), settings, run.arguments or None)
    lines = result.frame.to_string().splitlines()
    lines.append(f"passed {result.passed} of {result.total}")
    return Section("corpus", "corpus", lines, result.as_dict())


COMMANDS: Dict[str, Callable[[RunStatement, Ideals, EngineSettings], Section]] = {
    "resolve": _resolve,
    "koszul": _koszul,
    "trim": _trim,
    "product-resolution": _product_resolution,
    "golod": _golod,
}


def run_job(
    spec: JobSpec,
    settings: Optional[EngineSettings] = None,
    corpus: Optional[CorpusRepository] = None,
) -> JobResult:
    """Run every statement of ``spec`` in order."""
    settings = settings or EngineSettings()
    ideals: Ideals = build_ideals(spec) if spec.ring is not None else {}
    sections: List[Section] = []
    for run in spec.runs:
        log_event(logger, "run_statement", command=run.command, arguments=run.arguments)
        if run.command == "corpus":
            sections.append(_corpus(run, settings, corpus))
            continue
        if spec.ring is None:
            raise PreconditionError(f"'{run.command}' needs a ring declaration")
        sections.append(COMMANDS[run.command](run, ideals, _run_settings(run, settings)))
    report = build_report(format_job(spec), sections)
    return JobResult(report, render_text(sections))
