"""Presentations of graded submodules and their syzygies."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from src.services.errors import PreconditionError
from src.services.logging import get_logger, log_event
from src.services.ring.polynomial import Polynomial, PolynomialRing

from .buchberger import GroebnerEngine, Vector
from .graded import (
    column_to_vector,
    minimal_generating_subset,
    polynomial_to_vector,
    vector_degree,
    vector_to_column,
)
from .ideal import Ideal

logger = get_logger(__name__)


@dataclass
class ModulePresentation:
    """Columns generating a submodule of the graded free module with ``row_degrees``."""

    ring: PolynomialRing
    row_degrees: Tuple[int, ...]
    columns: List[List[Polynomial]] = field(default_factory=list)
    column_degrees: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.row_degrees = tuple(self.row_degrees)
        if len(self.columns) != len(self.column_degrees):
            raise PreconditionError("every column needs a degree")
        for col, (column, degree) in enumerate(zip(self.columns, self.column_degrees)):
            if len(column) != len(self.row_degrees):
                raise PreconditionError(f"column {col} has the wrong length")
            for row, entry in enumerate(column):
                if entry.is_zero():
                    continue
                if not entry.is_homogeneous() or entry.degree != degree - self.row_degrees[row]:
                    raise PreconditionError(f"entry ({row}, {col}) is not homogeneous of degree {degree - self.row_degrees[row]}")

    @classmethod
    def from_row(cls, ring: PolynomialRing, entries: Sequence[Polynomial]) -> "ModulePresentation":
        """The 1 x n matrix whose kernel is the first syzygy module of ``entries``."""
        return cls(ring, (0,), [[f] for f in entries], [f.degree for f in entries])

    @property
    def ambient_rank(self) -> int:
        return len(self.row_degrees)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def entries(self) -> List[Polynomial]:
        return [entry for column in self.columns for entry in column if not entry.is_zero()]


def _reduce_column(column: List[Polynomial], quotient: Optional[Ideal]) -> List[Polynomial]:
    if quotient is None or quotient.is_zero():
        return column
    return [quotient.normal_form(entry)[0] for entry in column]


def syzygies(presentation: ModulePresentation, quotient: Optional[Ideal] = None) -> ModulePresentation:
    """Minimal generators of the kernel of the presentation matrix.

    With ``quotient`` the kernel is taken over R/J: columns ``g * e_i`` for every
    generator g of J are appended before the syzygy computation over R, and
    their coefficients are dropped afterwards.
    """
    ring = presentation.ring
    rank = presentation.ambient_rank
    ncols = presentation.ncols
    source_degrees = list(presentation.column_degrees)
    if ncols == 0:
        return ModulePresentation(ring, tuple(source_degrees))

    columns = [list(column) for column in presentation.columns]
    degrees = list(source_degrees)
    j_gens: Tuple[Polynomial, ...] = ()
    if quotient is not None and not quotient.is_zero():
        j_gens = quotient.minimal_generators()
        for row in range(rank):
            for g in j_gens:
                column = [ring.zero()] * rank
                column[row] = g
                columns.append(column)
                degrees.append(presentation.row_degrees[row] + g.degree)

    zero = (0,) * ring.nvars
    vectors: List[Vector] = []
    for j, column in enumerate(columns):
        vector = column_to_vector(column)
        vector[(rank + j, zero)] = 1
        vectors.append(vector)
    shifts = list(presentation.row_degrees) + degrees
    engine = GroebnerEngine(ring, shifts, main_rank=rank)
    basis = engine.run(vectors)

    candidates: List[List[Polynomial]] = []
    candidate_degrees: List[int] = []
    for entry in basis:
        if entry.lead[0] < rank:
            continue
        column = _reduce_column(vector_to_column(ring, entry.terms, ncols, offset=rank), quotient)
        if all(e.is_zero() for e in column):
            continue
        candidates.append(column)
        candidate_degrees.append(vector_degree(entry.terms, shifts))

    relations: List[Tuple[Vector, int]] = [
        (polynomial_to_vector(g, position), source_degrees[position] + g.degree)
        for position in range(ncols)
        for g in j_gens
    ]
    kept = minimal_generating_subset(
        ring,
        [column_to_vector(column) for column in candidates],
        candidate_degrees,
        relations,
    )
    log_event(
        logger,
        "syzygies",
        rank=rank,
        columns=ncols,
        candidates=len(candidates),
        minimal=len(kept),
        quotient=bool(j_gens),
    )
    return ModulePresentation(
        ring,
        tuple(source_degrees),
        [candidates[i] for i in kept],
        [candidate_degrees[i] for i in kept],
    )
