"""Graded Betti tables and Hilbert functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Tuple

import pandas as pd

from src.services.complexes.chain_complex import ChainComplex
from src.services.errors import PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.quotient import QuotientStrands


@dataclass
class BettiTable:
    """Graded ranks keyed by (homological degree, internal degree)."""

    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def projective_dimension(self) -> int:
        return max((i for (i, _), rank in self.entries.items() if rank), default=0)

    def totals(self) -> List[int]:
        totals = [0] * (self.projective_dimension + 1)
        for (i, _), rank in self.entries.items():
            totals[i] += rank
        return totals

    def degrees(self, i: int) -> List[int]:
        return sorted(d for (j, d), rank in self.entries.items() if j == i and rank)

    def to_frame(self) -> pd.DataFrame:
        """Macaulay-style layout: rows are d - i, columns are i."""
        if not self.entries:
            return pd.DataFrame()
        rows = sorted({d - i for (i, d) in self.entries})
        columns = list(range(self.projective_dimension + 1))
        frame = pd.DataFrame(0, index=rows, columns=columns)
        for (i, d), rank in self.entries.items():
            frame.loc[d - i, i] = rank
        frame.index.name = "d-i"
        frame.columns.name = "i"
        return frame

    def render(self) -> str:
        frame = self.to_frame()
        totals = pd.DataFrame([self.totals()], index=["total"], columns=frame.columns)
        return pd.concat([totals, frame]).to_string()

    def as_rows(self) -> List[Dict[str, int]]:
        return [
            {"homological_degree": i, "internal_degree": d, "rank": rank}
            for (i, d), rank in sorted(self.entries.items())
            if rank
        ]


def betti_table(complex_: ChainComplex) -> BettiTable:
    if not complex_.is_minimal():
        raise PreconditionError("Betti numbers are only read off minimal complexes")
    entries: Dict[Tuple[int, int], int] = {}
    for i, module in enumerate(complex_.modules):
        for degree in module.degrees:
            entries[(i, degree)] = entries.get((i, degree), 0) + 1
    return BettiTable(entries)


def hilbert_function(ideal: Ideal, degree: int) -> int:
    """dim_k (R/J)_degree by counting standard monomials."""
    return QuotientStrands(ideal).dimension(degree)


def hilbert_from_betti(table: BettiTable, degree: int, nvars: int) -> int:
    """dim_k (R/J)_degree from the alternating sum of the graded Betti numbers."""
    total = 0
    for (i, shift), rank in table.entries.items():
        d = degree - shift
        if d >= 0:
            total += (-1) ** i * rank * comb(d + nvars - 1, nvars - 1)
    return total
