"""Golodness verdicts: certificates first, evidence second.

A truncated Poincare series can only ever support Golodness up to an order;
proofs come from the certificates (hypersurfaces, codepth two, split trimming
maps, explicit Massey operations). Negative answers come from a strict Serre
deficit or a nonzero product of Koszul homology classes.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from src.services.errors import EngineInvariantError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.operations import is_complete_intersection
from src.services.logging import get_logger, log_event
from src.services.resolutions.betti import betti_table
from src.services.resolutions.free_resolution import minimal_free_resolution
from src.services.resolutions.poincare import PoincareData, poincare_data
from src.services.settings import EngineSettings
from src.services.trimming.criteria import WitnessProduct, split_injection_check

from .homology_algebra import ProductReport, koszul_homology_algebra, product_triviality
from .massey import massey_from_nu
from .models import BettiEntry, Certificate, GolodReport, PoincareSummary, ProductEntry, ProductSummary, Verdict
from .tor import tor_invariants

logger = get_logger(__name__)


def _poincare_summary(data: PoincareData) -> PoincareSummary:
    return PoincareSummary(
        truncation_order=data.truncation_order,
        reached_order=data.reached_order,
        method=data.method,
        betti_of_k=data.betti_of_k,
        serre_bound=data.serre_bound_coeffs,
        deficits=data.deficits,
        codepth=data.codepth,
        embedding_dimension=data.embedding_dimension,
    )


def _product_summary(report: ProductReport, used: bool) -> ProductSummary:
    return ProductSummary(
        checked=report.checked,
        nonzero=[
            ProductEntry(
                left=list(entry.left),
                right=list(entry.right),
                target=list(entry.target),
                coordinates=entry.coordinates,
            )
            for entry in report.nonzero
        ],
        used_for_verdict=used,
    )


def _certificates(
    ideal: Ideal,
    codepth: int,
    factors: Optional[Tuple[Ideal, Ideal]],
    settings: EngineSettings,
    notes: List[str],
) -> List[Certificate]:
    found: List[Certificate] = []
    if codepth <= 1:
        found.append(Certificate(kind="hypersurface", detail=f"codepth {codepth}"))
    elif codepth == 2 and not is_complete_intersection(ideal):
        found.append(Certificate(kind="codepth_two", detail="codepth 2 and not a complete intersection"))
    if factors is None:
        return found
    first, second = factors
    if first * second != ideal:
        raise PreconditionError("the given factors do not multiply to the ideal")
    try:
        split = split_injection_check(first, second)
        if split.certified:
            found.append(Certificate(kind="split_injection", detail=f"ranks {split.ranks}"))
        else:
            notes.append(f"split injection inconclusive: ranks {split.ranks}")
    except PreconditionError as exc:
        notes.append(f"split injection not applicable: {exc}")
    massey = massey_from_nu(first, second, settings.massey_depth, settings)
    if massey.certified:
        found.append(Certificate(kind="massey", detail=f"depth {massey.depth_checked}"))
    else:
        notes.append(f"massey {massey.status}: {massey.reason}")
    return found


def golod_verdict(
    ideal: Ideal,
    order: Optional[int] = None,
    settings: Optional[EngineSettings] = None,
    factors: Optional[Tuple[Ideal, Ideal]] = None,
    witness: Optional[WitnessProduct] = None,
) -> GolodReport:
    settings = settings or EngineSettings()
    order = order if order is not None else settings.truncation_order
    if not ideal.is_proper():
        raise PreconditionError("the unit ideal has no residue field")
    table = betti_table(minimal_free_resolution(ideal))
    notes: List[str] = []

    poincare = poincare_data(ideal, order, settings=settings, table=table)
    if poincare.reached_order < order:
        notes.append(f"strand limit reached; Poincare series computed to order {poincare.reached_order}")

    # products of Tor^R(R/J, k) only see Golodness when J has no linear forms
    use_products = poincare.embedding_dimension == ideal.ring.nvars
    algebra = koszul_homology_algebra(ideal, settings, table)
    products = product_triviality(algebra, settings)
    tor = None
    if table.projective_dimension == 3 and use_products:
        tor = tor_invariants(ideal, settings, table, algebra).as_dict()

    certificates = _certificates(ideal, poincare.codepth, factors, settings, notes)

    reason: Optional[str] = None
    if witness is not None and witness.nontrivial:
        reason = witness.evidence
    elif use_products and products.nonzero:
        entry = products.nonzero[0]
        reason = f"{entry.label} product {list(entry.left)}·{list(entry.right)}"
    elif poincare.deficits:
        reason = f"Serre deficit at t^{poincare.deficits[0]}"

    if reason is not None and certificates:
        raise EngineInvariantError(f"certificates {[c.kind for c in certificates]} disagree with evidence: {reason}")

    if reason is not None:
        verdict = Verdict(kind="non_golod", witness=reason)
    elif certificates:
        verdict = Verdict(kind="golod_certified", certificates=certificates)
    else:
        verdict = Verdict(kind="golod_evidence_up_to", order=poincare.reached_order)

    report = GolodReport(
        ideal=[str(g) for g in ideal.minimal_generators()],
        name=ideal.name,
        codepth=poincare.codepth,
        projective_dimension=table.projective_dimension,
        betti_table=[BettiEntry(**row) for row in table.as_rows()],
        poincare=_poincare_summary(poincare),
        products=_product_summary(products, use_products),
        tor=tor,
        notes=notes,
        verdict=verdict,
    )
    log_event(logger, "golod_verdict", kind=verdict.kind, witness=verdict.witness, order=poincare.reached_order)
    return report
