"""Strandwise linear algebra over k for complexes tensored with R/J.

The degree-d strand of C_i (x) R/J has the k-basis ``(generator, standard
monomial)`` with the monomial of degree ``d - deg(generator)``. Every homology,
lifting and product question in the engine is answered on such strands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.services.errors import StrandBoundExceeded
from src.services.groebner.ideal import Ideal
from src.services.groebner.quotient import QuotientStrands
from src.services.logging import get_logger, log_event
from src.services.ring.linalg import EchelonBasis, LinearSolver, nullspace_mod
from src.services.ring.monomials import Monomial
from src.services.ring.polynomial import Polynomial

from .chain_complex import ChainComplex, Element, GradedFreeModule
from .matrix import PolyMatrix

logger = get_logger(__name__)


def default_strand_bound(complex_: ChainComplex, quotient: Optional[Ideal] = None) -> int:
    """(max generator degree of the quotient ideal) x (length) + number of variables."""
    top = quotient.max_generator_degree() if quotient is not None else 0
    return top * complex_.length + complex_.ring.nvars


class StrandBasis:
    """k-basis of the degree-``degree`` part of ``module (x) R/J``."""

    def __init__(self, module: GradedFreeModule, degree: int, strands: QuotientStrands):
        self.module = module
        self.degree = degree
        self.strands = strands
        self.pairs: List[Tuple[int, Monomial]] = []
        for generator, shift in enumerate(module.degrees):
            for monomial in strands.standard_monomials(degree - shift):
                self.pairs.append((generator, monomial))
        self.index: Dict[Tuple[int, Monomial], int] = {pair: i for i, pair in enumerate(self.pairs)}

    @property
    def dimension(self) -> int:
        return len(self.pairs)

    def vectorize(self, element: Sequence[Polynomial]) -> np.ndarray:
        """Coordinates of the degree-``degree`` part of ``element`` modulo J."""
        vector = np.zeros(self.dimension, dtype=np.int64)
        for generator, entry in enumerate(element):
            if entry.is_zero():
                continue
            for monomial, c in self.strands.reduce(entry).items():
                position = self.index.get((generator, monomial))
                if position is not None:
                    vector[position] = (vector[position] + c) % self.strands.ring.p
        return vector

    def element(self, vector: np.ndarray) -> Element:
        ring = self.strands.ring
        terms: List[Dict[Monomial, int]] = [{} for _ in range(self.module.rank)]
        for position in np.nonzero(vector)[0]:
            generator, monomial = self.pairs[int(position)]
            terms[generator][monomial] = int(vector[position])
        return [Polynomial(ring, t, normalized=True) for t in terms]


def strand_matrix(
    complex_: ChainComplex,
    i: int,
    source: StrandBasis,
    target: StrandBasis,
) -> np.ndarray:
    """Matrix of d_i (x) R/J from ``source`` (a strand of C_i) to ``target`` (of C_{i-1})."""
    return strand_matrix_of(complex_.differential(i), source, target)


def strand_matrix_of(differential: PolyMatrix, source: StrandBasis, target: StrandBasis) -> np.ndarray:
    strands = source.strands
    ring = strands.ring
    p = ring.p
    matrix = np.zeros((target.dimension, source.dimension), dtype=np.int64)
    for column, (generator, monomial) in enumerate(source.pairs):
        for row, entry in differential.column_entries(generator).items():
            for m, c in entry.items():
                product = tuple(a + b for a, b in zip(m, monomial))
                for s, a in strands.reduce_monomial(product).items():
                    position = target.index.get((row, s))
                    if position is not None:
                        matrix[position, column] = (matrix[position, column] + c * a) % p
    return matrix


@dataclass
class HomologyStrand:
    homological_degree: int
    internal_degree: int
    dimension: int
    cycle_basis: List[Element] = field(default_factory=list)
    basis: Optional[StrandBasis] = None
    representatives: Optional[np.ndarray] = None
    _solver: Optional[LinearSolver] = None

    def coordinates(self, cycle_vector: np.ndarray) -> Optional[np.ndarray]:
        """Class coordinates of a cycle, or None if it is not in cycles + boundaries."""
        if self.dimension == 0:
            return np.zeros(0, dtype=np.int64)
        if self._solver is None:
            return None
        solution = self._solver.solve(cycle_vector)
        if solution is None:
            return None
        return solution[: self.dimension]

    def is_boundary(self, cycle_vector: np.ndarray) -> bool:
        coords = self.coordinates(cycle_vector)
        return coords is not None and not np.any(coords)


class StrandComplex:
    """Caches strand bases and matrices of one complex tensored with R/J."""

    def __init__(self, complex_: ChainComplex, quotient: Optional[Ideal] = None, bound: Optional[int] = None):
        self.complex = complex_
        self.quotient = quotient if quotient is not None else Ideal.zero(complex_.ring)
        self.strands = QuotientStrands(self.quotient)
        self.bound = bound if bound is not None else default_strand_bound(complex_, quotient)
        self._bases: Dict[Tuple[int, int], StrandBasis] = {}
        self._matrices: Dict[Tuple[int, int], np.ndarray] = {}

    def basis(self, i: int, degree: int) -> StrandBasis:
        key = (i, degree)
        if key not in self._bases:
            self._bases[key] = StrandBasis(self.complex.module(i), degree, self.strands)
        return self._bases[key]

    def matrix(self, i: int, degree: int) -> np.ndarray:
        key = (i, degree)
        if key not in self._matrices:
            self._matrices[key] = strand_matrix(self.complex, i, self.basis(i, degree), self.basis(i - 1, degree))
        return self._matrices[key]

    def homology(self, i: int, degree: int) -> HomologyStrand:
        if degree > self.bound:
            raise StrandBoundExceeded(degree, self.bound)
        p = self.complex.ring.p
        basis = self.basis(i, degree)
        if basis.dimension == 0:
            return HomologyStrand(i, degree, 0, [], basis, np.zeros((0, 0), dtype=np.int64))
        if i >= 1:
            cycles = nullspace_mod(self.matrix(i, degree), p)
        else:
            cycles = np.eye(basis.dimension, dtype=np.int64)
        boundaries = self.matrix(i + 1, degree).T if self.complex.rank(i + 1) else np.zeros((0, basis.dimension), dtype=np.int64)
        echelon = EchelonBasis.from_matrix(boundaries, p)
        chosen = [row for row in cycles if echelon.add(row)]
        representatives = np.array(chosen, dtype=np.int64).reshape(len(chosen), basis.dimension)
        solver = None
        if chosen:
            system = np.concatenate([representatives.T, boundaries.T], axis=1)
            solver = LinearSolver(system, p)
        log_event(logger, "homology_strand", i=i, degree=degree, dimension=len(chosen), strand=basis.dimension)
        return HomologyStrand(
            homological_degree=i,
            internal_degree=degree,
            dimension=len(chosen),
            cycle_basis=[basis.element(row) for row in representatives],
            basis=basis,
            representatives=representatives,
            _solver=solver,
        )


def homology_strand(
    complex_: ChainComplex,
    i: int,
    degree: int,
    quotient: Optional[Ideal] = None,
    bound: Optional[int] = None,
) -> HomologyStrand:
    return StrandComplex(complex_, quotient, bound).homology(i, degree)
