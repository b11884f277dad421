"""Koszul homology algebras H(R/J) with products computed on cycle representatives.

Strands are computed at the supports of the Betti table of R/J, where the Tor
identification H_i(K (x) R/J)_d = Tor_i(R/J, k)_d says homology can live.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.services.complexes.chain_complex import Element
from src.services.complexes.strands import HomologyStrand, StrandComplex
from src.services.dg.koszul_algebra import KoszulAlgebra
from src.services.errors import EngineInvariantError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.resolutions.betti import BettiTable, betti_table
from src.services.resolutions.free_resolution import minimal_free_resolution
from src.services.settings import EngineSettings

logger = get_logger(__name__)

StrandKey = Tuple[int, int]
# (homological degree, internal degree, index in the strand basis)
ClassKey = Tuple[int, int, int]


class KoszulHomologyAlgebra:
    def __init__(
        self,
        quotient_ideal: Ideal,
        table: BettiTable,
        settings: Optional[EngineSettings] = None,
    ):
        if not quotient_ideal.is_proper():
            raise PreconditionError("Koszul homology of the zero ring")
        self.quotient_ideal = quotient_ideal
        self.table = table
        self.settings = settings or EngineSettings()
        ring = quotient_ideal.ring
        self.algebra = KoszulAlgebra(ring, name="K")
        self.strands = StrandComplex(self.algebra.complex, quotient_ideal, bound=self.settings.strand_bound)
        self.classes: Dict[StrandKey, HomologyStrand] = {}
        for (i, degree), rank in sorted(table.entries.items()):
            if i < 1 or not rank:
                continue
            strand = self.strands.homology(i, degree)
            if strand.dimension != rank:
                raise EngineInvariantError(
                    f"H_{i} in degree {degree} has dimension {strand.dimension}, Betti number is {rank}"
                )
            self.classes[(i, degree)] = strand

    @property
    def ring(self):
        return self.quotient_ideal.ring

    def dimensions(self) -> Dict[int, int]:
        totals: Dict[int, int] = {}
        for (i, _), strand in self.classes.items():
            totals[i] = totals.get(i, 0) + strand.dimension
        return totals

    def class_keys(self, degree: Optional[int] = None) -> List[ClassKey]:
        return [
            (i, d, index)
            for (i, d), strand in sorted(self.classes.items())
            if degree is None or i == degree
            for index in range(strand.dimension)
        ]

    def representative(self, key: ClassKey) -> Element:
        i, d, index = key
        return self.classes[(i, d)].cycle_basis[index]

    def class_coordinates(self, i: int, degree: int, element: Sequence) -> np.ndarray:
        """Coordinates of the class of a cycle of K_i (x) R/J in the strand basis."""
        strand = self.classes.get((i, degree))
        if strand is None:
            return np.zeros(0, dtype=np.int64)
        vector = strand.basis.vectorize(element)
        coords = strand.coordinates(vector)
        if coords is None:
            raise EngineInvariantError(f"element of K_{i} in degree {degree} is not a cycle")
        return coords

    def product(self, left: ClassKey, right: ClassKey) -> Tuple[StrandKey, np.ndarray]:
        """Class coordinates of the wedge of two representatives."""
        i, d, _ = left
        j, e, _ = right
        target = (i + j, d + e)
        if target not in self.classes:
            return target, np.zeros(0, dtype=np.int64)
        wedge = self.algebra.multiply(self.representative(left), i, self.representative(right), j)
        return target, self.class_coordinates(i + j, d + e, wedge)


def koszul_homology_algebra(
    quotient_ideal: Ideal,
    settings: Optional[EngineSettings] = None,
    table: Optional[BettiTable] = None,
) -> KoszulHomologyAlgebra:
    if table is None:
        table = betti_table(minimal_free_resolution(quotient_ideal))
    algebra = KoszulHomologyAlgebra(quotient_ideal, table, settings)
    log_event(logger, "koszul_homology_algebra", dimensions=algebra.dimensions())
    return algebra


@dataclass
class NonzeroProduct:
    left: ClassKey
    right: ClassKey
    target: StrandKey
    coordinates: List[int]

    @property
    def label(self) -> str:
        return f"H_{self.left[0]}·H_{self.right[0]}"


@dataclass
class ProductReport:
    checked: int = 0
    nonzero: List[NonzeroProduct] = field(default_factory=list)

    @property
    def trivial(self) -> bool:
        return not self.nonzero


def product_pairs(algebra: KoszulHomologyAlgebra, degrees: Optional[Tuple[int, int]] = None) -> List[Tuple[ClassKey, ClassKey]]:
    keys = algebra.class_keys()
    top = algebra.ring.nvars
    pairs = []
    for a, left in enumerate(keys):
        for right in keys[a:]:
            if left[0] + right[0] > top:
                continue
            if degrees is not None and sorted((left[0], right[0])) != sorted(degrees):
                continue
            pairs.append((left, right))
    return pairs


def product_triviality(
    algebra: KoszulHomologyAlgebra,
    settings: Optional[EngineSettings] = None,
    degrees: Optional[Tuple[int, int]] = None,
) -> ProductReport:
    """Test every product of positive-degree basis classes for being a boundary."""
    settings = settings or algebra.settings
    pairs = product_pairs(algebra, degrees)

    def evaluate(pair):
        return pair, algebra.product(*pair)

    if settings.threads > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            results = list(pool.map(evaluate, pairs))
    else:
        results = [evaluate(pair) for pair in pairs]

    report = ProductReport(checked=len(pairs))
    for (left, right), (target, coords) in results:
        if np.any(coords):
            report.nonzero.append(NonzeroProduct(left, right, target, [int(c) for c in coords]))
    log_event(logger, "product_triviality", checked=report.checked, nonzero=len(report.nonzero))
    return report
