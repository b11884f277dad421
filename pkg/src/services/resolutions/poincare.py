"""Betti numbers of k over A = R/J and the Serre bound on the Poincare series.

Two engines compute the truncated minimal resolution of k over A. The strand
engine builds kernels degree by degree on the standard-monomial bases of A; the
syzygy engine runs the module Groebner machinery with the J-columns appended.
Both must produce the same ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np

from src.services.complexes.chain_complex import GradedFreeModule
from src.services.complexes.matrix import PolyMatrix
from src.services.complexes.strands import StrandBasis, strand_matrix_of
from src.services.errors import EngineInvariantError, PreconditionError, StrandBoundExceeded
from src.services.groebner.ideal import Ideal
from src.services.groebner.module import ModulePresentation, syzygies
from src.services.groebner.quotient import QuotientStrands
from src.services.logging import get_logger, log_event
from src.services.ring.linalg import EchelonBasis, nullspace_mod
from src.services.settings import EngineSettings

from .betti import BettiTable, betti_table
from .free_resolution import minimal_free_resolution

logger = get_logger(__name__)

ResolutionMethod = Literal["strand", "syzygy"]
# homological degree -> internal degree -> coefficient
BigradedSeries = Dict[int, Dict[int, int]]


def embedding_dimension(ideal: Ideal) -> int:
    """n - dim_k J_1."""
    return QuotientStrands(ideal).dimension(1)


def _multiply(left: BigradedSeries, right: BigradedSeries, order: int) -> BigradedSeries:
    result: BigradedSeries = {}
    for s1, row1 in left.items():
        for s2, row2 in right.items():
            s = s1 + s2
            if s > order:
                continue
            target = result.setdefault(s, {})
            for u1, c1 in row1.items():
                for u2, c2 in row2.items():
                    target[u1 + u2] = target.get(u1 + u2, 0) + c1 * c2
    return {s: {u: c for u, c in row.items() if c} for s, row in result.items()}


def _one_plus_tu_power(exponent: int, order: int) -> BigradedSeries:
    """(1 + tu)^exponent truncated at t^order; negative exponents expand as series."""
    series: BigradedSeries = {}
    for s in range(order + 1):
        if exponent >= 0:
            coefficient = comb(exponent, s)
        else:
            coefficient = (-1) ** s * comb(-exponent + s - 1, s)
        if coefficient:
            series[s] = {s: coefficient}
    return series


def koszul_homology_series(table: BettiTable, linear_forms: int, order: int) -> BigradedSeries:
    """Bigraded Koszul homology series of A over the ring in e = n - linear_forms variables."""
    series: BigradedSeries = {}
    for (i, d), rank in table.entries.items():
        if rank:
            series.setdefault(i, {})[d] = rank
    if linear_forms:
        series = _multiply(series, _one_plus_tu_power(-linear_forms, order + 1), order + 1)
    return series


def serre_bound_bigraded(ideal: Ideal, order: int, table: Optional[BettiTable] = None) -> BigradedSeries:
    """Coefficients of (1 + tu)^e / (1 - sum_j H_{j,d} t^{j+1} u^d) through t^order."""
    if table is None:
        table = betti_table(minimal_free_resolution(ideal))
    e = embedding_dimension(ideal)
    homology = koszul_homology_series(table, ideal.ring.nvars - e, order)
    numerator = _one_plus_tu_power(e, order)
    series: BigradedSeries = {}
    for s in range(order + 1):
        row = dict(numerator.get(s, {}))
        for j, hrow in homology.items():
            if j < 1 or s - j - 1 < 0:
                continue
            for d, h in hrow.items():
                for u, c in series.get(s - j - 1, {}).items():
                    row[u + d] = row.get(u + d, 0) + h * c
        series[s] = {u: c for u, c in row.items() if c}
    return series


def serre_bound(ideal: Ideal, order: int, table: Optional[BettiTable] = None) -> List[int]:
    """Coefficients s_0..s_order of (1 + t)^e / (1 - sum_j rank H_j t^{j+1})."""
    series = serre_bound_bigraded(ideal, order, table)
    return [sum(series.get(s, {}).values()) for s in range(order + 1)]


def codepth(ideal: Ideal, table: Optional[BettiTable] = None) -> int:
    if table is None:
        table = betti_table(minimal_free_resolution(ideal))
    linear = ideal.ring.nvars - embedding_dimension(ideal)
    return table.projective_dimension - linear


@dataclass
class QuotientResolution:
    """Truncated minimal resolution of k over A = R/J."""

    quotient: Ideal
    modules: List[GradedFreeModule] = field(default_factory=list)
    differentials: List[PolyMatrix] = field(default_factory=list)
    requested_order: int = 0
    stopped_early: bool = False
    method: ResolutionMethod = "strand"

    @property
    def reached_order(self) -> int:
        return len(self.modules) - 1

    def betti(self) -> List[int]:
        return [module.rank for module in self.modules]

    def bigraded(self) -> Dict[Tuple[int, int], int]:
        entries: Dict[Tuple[int, int], int] = {}
        for s, module in enumerate(self.modules):
            for d in module.degrees:
                entries[(s, d)] = entries.get((s, d), 0) + 1
        return entries


def _first_differential(ideal: Ideal, strands: QuotientStrands) -> Tuple[GradedFreeModule, PolyMatrix]:
    ring = ideal.ring
    variables = [m for m in strands.standard_monomials(1)]
    entries = {(0, col): ring.monomial(m) for col, m in enumerate(variables)}
    return GradedFreeModule((1,) * len(variables)), PolyMatrix(ring, 1, len(variables), entries)


def _strand_step(
    strands: QuotientStrands,
    previous: GradedFreeModule,
    current: GradedFreeModule,
    differential: PolyMatrix,
    top_degree: int,
    max_dimension: int,
) -> Optional[Tuple[GradedFreeModule, PolyMatrix]]:
    """Minimal generators of ker(differential) over A, or None when a strand is too large."""
    ring = strands.ring
    p = ring.p
    degrees: List[int] = []
    columns: List[List] = []
    low = min(current.degrees, default=0) + 1
    for t in range(low, top_degree + 1):
        source = StrandBasis(current, t, strands)
        if source.dimension == 0:
            continue
        if source.dimension > max_dimension:
            log_event(logger, "poincare_strand_limit", degree=t, dimension=source.dimension, limit=max_dimension)
            return None
        target = StrandBasis(previous, t, strands)
        kernel = nullspace_mod(strand_matrix_of(differential, source, target), p)
        if kernel.shape[0] == 0:
            continue
        if degrees:
            generated = StrandBasis(GradedFreeModule(tuple(degrees)), t, strands)
            partial = PolyMatrix.from_columns(ring, current.rank, columns)
            image = strand_matrix_of(partial, generated, source).T
        else:
            image = np.zeros((0, source.dimension), dtype=np.int64)
        echelon = EchelonBasis.from_matrix(image, p)
        if len(echelon) == kernel.shape[0]:
            continue
        for row in kernel:
            if echelon.add(row):
                degrees.append(t)
                columns.append(source.element(row))
    return GradedFreeModule(tuple(degrees)), PolyMatrix.from_columns(ring, current.rank, columns)


def _syzygy_step(
    ideal: Ideal,
    previous: GradedFreeModule,
    current: GradedFreeModule,
    differential: PolyMatrix,
) -> Tuple[GradedFreeModule, PolyMatrix]:
    presentation = ModulePresentation(ideal.ring, previous.degrees, differential.columns(), list(current.degrees))
    kernel = syzygies(presentation, quotient=ideal)
    return GradedFreeModule(tuple(kernel.column_degrees)), PolyMatrix.from_columns(ideal.ring, current.rank, kernel.columns)


def resolve_residue_field(
    ideal: Ideal,
    order: int,
    method: ResolutionMethod = "strand",
    settings: Optional[EngineSettings] = None,
    table: Optional[BettiTable] = None,
) -> QuotientResolution:
    settings = settings or EngineSettings()
    if order < 0:
        raise PreconditionError("the truncation order must be non-negative")
    if not ideal.is_proper():
        raise PreconditionError("cannot resolve k over the zero ring")
    if ideal.is_zero():
        raise PreconditionError("the zero ideal gives a polynomial ring; nothing to truncate")
    strands = QuotientStrands(ideal)
    result = QuotientResolution(ideal, [GradedFreeModule((0,))], [], order, method=method)
    if order == 0:
        return result
    first, d1 = _first_differential(ideal, strands)
    result.modules.append(first)
    result.differentials.append(d1)

    bounds: Dict[int, int] = {}
    if method == "strand":
        series = serre_bound_bigraded(ideal, order, table)
        bounds = {s: max(row, default=-1) for s, row in series.items()}

    for s in range(1, order):
        current = result.modules[s]
        if current.rank == 0:
            result.modules.append(GradedFreeModule())
            result.differentials.append(PolyMatrix.zeros(ideal.ring, 0, 0))
            continue
        previous = result.modules[s - 1]
        differential = result.differentials[s - 1]
        if method == "syzygy":
            module, matrix = _syzygy_step(ideal, previous, current, differential)
        else:
            top = bounds.get(s + 1, -1)
            if settings.strand_bound is not None and top > settings.strand_bound:
                raise StrandBoundExceeded(top, settings.strand_bound)
            step = _strand_step(strands, previous, current, differential, top, settings.max_strand_dimension)
            if step is None:
                result.stopped_early = True
                break
            module, matrix = step
        result.modules.append(module)
        result.differentials.append(matrix)
        log_event(logger, "residue_resolution_step", degree=s + 1, rank=module.rank, method=method)
    return result


def resolution_of_k_over_quotient(
    ideal: Ideal,
    order: int,
    method: ResolutionMethod = "strand",
    settings: Optional[EngineSettings] = None,
) -> List[int]:
    """Betti numbers b_0..b_N of k over R/J (shorter if a strand limit stopped the run)."""
    return resolve_residue_field(ideal, order, method, settings).betti()


@dataclass
class PoincareData:
    quotient_ideal: Ideal
    truncation_order: int
    betti_of_k: List[int]
    serre_bound_coeffs: List[int]
    codepth: int
    embedding_dimension: int
    reached_order: int
    method: ResolutionMethod = "strand"

    @property
    def deficits(self) -> List[int]:
        """Indices i <= reached order with b_i < s_i."""
        return [i for i, (b, s) in enumerate(zip(self.betti_of_k, self.serre_bound_coeffs)) if b < s]

    @property
    def serre_equality(self) -> bool:
        return not self.deficits


def poincare_data(
    ideal: Ideal,
    order: int,
    method: ResolutionMethod = "strand",
    settings: Optional[EngineSettings] = None,
    table: Optional[BettiTable] = None,
) -> PoincareData:
    if table is None:
        table = betti_table(minimal_free_resolution(ideal))
    resolution = resolve_residue_field(ideal, order, method, settings, table)
    betti = resolution.betti()
    bound = serre_bound(ideal, order, table)
    for i, (b, s) in enumerate(zip(betti, bound)):
        if b > s:
            raise EngineInvariantError(f"Serre dominance violated at t^{i}: b={b} > s={s}")
    data = PoincareData(
        quotient_ideal=ideal,
        truncation_order=order,
        betti_of_k=betti,
        serre_bound_coeffs=bound,
        codepth=codepth(ideal, table),
        embedding_dimension=embedding_dimension(ideal),
        reached_order=resolution.reached_order,
        method=method,
    )
    log_event(logger, "poincare", betti=betti, serre=bound, reached=data.reached_order)
    return data
