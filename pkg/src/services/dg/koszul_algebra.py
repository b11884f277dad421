"""The Koszul complex as a DG algebra (exterior multiplication)."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from src.services.complexes.chain_complex import ChainComplex, Element
from src.services.complexes.koszul import Subset, exterior_basis, koszul_complex, wedge_sign
from src.services.errors import PreconditionError
from src.services.ring.polynomial import Polynomial, PolynomialRing


class KoszulAlgebra:
    """K(f_1..f_c) with basis e_sigma, sigma ordered lexicographically per degree."""

    def __init__(self, ring: PolynomialRing, sequence: Optional[Sequence[Polynomial]] = None, name: Optional[str] = None):
        self.ring = ring
        self.forms: List[Polynomial] = list(sequence) if sequence is not None else ring.gens()
        self.size = len(self.forms)
        self.bases: List[List[Subset]] = [exterior_basis(self.size, i) for i in range(self.size + 1)]
        self._index: List[Dict[Subset, int]] = [{s: j for j, s in enumerate(b)} for b in self.bases]
        self.complex: ChainComplex = koszul_complex(ring, self.forms, name=name or "K")

    def basis(self, degree: int) -> List[Subset]:
        if 0 <= degree <= self.size:
            return self.bases[degree]
        return []

    def index_of(self, subset: Subset) -> int:
        return self._index[len(subset)][tuple(subset)]

    def generator(self, subset: Subset) -> Element:
        degree = len(subset)
        element = self.complex.zero_element(degree)
        element[self.index_of(tuple(sorted(subset)))] = self.ring.one()
        return element

    def basis_product(self, sigma: Subset, tau: Subset) -> Optional[Tuple[int, Subset]]:
        if set(sigma) & set(tau):
            return None
        return wedge_sign(sigma, tau), tuple(sorted(sigma + tau))

    def multiply(self, left: Element, i: int, right: Element, j: int) -> Element:
        if len(left) != len(self.basis(i)) or len(right) != len(self.basis(j)):
            raise PreconditionError("element lengths do not match their degrees")
        result = self.complex.zero_element(i + j)
        if i + j > self.size:
            return result
        for a, coefficient in enumerate(left):
            if coefficient.is_zero():
                continue
            for b, other in enumerate(right):
                if other.is_zero():
                    continue
                product = self.basis_product(self.bases[i][a], self.bases[j][b])
                if product is None:
                    continue
                sign, union = product
                position = self._index[i + j][union]
                term = coefficient * other
                result[position] = result[position] + (term if sign > 0 else -term)
        return result

    def differential(self, i: int, element: Element) -> Element:
        return self.complex.apply(i, element)

    def leibniz_residual(self, left: Element, i: int, right: Element, j: int) -> Element:
        """d(xy) - d(x)y - (-1)^i x d(y)."""
        residual = self.differential(i + j, self.multiply(left, i, right, j)) if i + j >= 1 else []
        if not residual:
            return residual
        if i >= 1:
            first = self.multiply(self.differential(i, left), i - 1, right, j)
            residual = [r - f for r, f in zip(residual, first)]
        if j >= 1:
            second = self.multiply(left, i, self.differential(j, right), j - 1)
            residual = [r + s if i % 2 else r - s for r, s in zip(residual, second)]
        return residual


def koszul_product(algebra: KoszulAlgebra, left: Element, i: int, right: Element, j: int) -> Element:
    return algebra.multiply(left, i, right, j)
