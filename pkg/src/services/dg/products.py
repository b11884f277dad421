"""Graded-commutative products on resolutions: exterior algebras and length-3 lifts."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from src.services.complexes.chain_complex import ChainComplex, Element
from src.services.errors import EngineInvariantError, LiftError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.operations import is_complete_intersection
from src.services.logging import get_logger, log_event
from src.services.resolutions.free_resolution import minimal_free_resolution
from src.services.ring.polynomial import Polynomial

from .koszul_algebra import KoszulAlgebra
from .lifting import lift_through

logger = get_logger(__name__)

# (i, a, j, b) -> e^i_a * e^j_b in degree i + j
ProductTable = Dict[Tuple[int, int, int, int], Element]


def _axpy(target: Element, coefficient: Polynomial, source: Sequence[Polynomial]) -> None:
    for k, value in enumerate(source):
        if not value.is_zero():
            target[k] = target[k] + coefficient * value


class DGProduct:
    """Multiplication on a resolution F given on pairs of basis elements.

    Degree-0 elements act through F_0 = R; products landing above the length of
    F are zero. Nothing here enforces associativity.
    """

    def __init__(self, resolution: ChainComplex, table: ProductTable, name: Optional[str] = None):
        if resolution.rank(0) != 1:
            raise PreconditionError("products are defined on resolutions of cyclic modules")
        self.resolution = resolution
        self.table = table
        self.name = name or resolution.name

    @property
    def ring(self):
        return self.resolution.ring

    def basis_product(self, i: int, a: int, j: int, b: int) -> Element:
        if i == 0:
            return self.resolution.basis_element(j, b)
        if j == 0:
            return self.resolution.basis_element(i, a)
        entry = self.table.get((i, a, j, b))
        return list(entry) if entry is not None else self.resolution.zero_element(i + j)

    def multiply(self, left: Sequence[Polynomial], i: int, right: Sequence[Polynomial], j: int) -> Element:
        if len(left) != self.resolution.rank(i) or len(right) != self.resolution.rank(j):
            raise PreconditionError("element lengths do not match their degrees")
        if i == 0:
            return [left[0] * value for value in right]
        if j == 0:
            return [right[0] * value for value in left]
        result = self.resolution.zero_element(i + j)
        if not result:
            return result
        for a, x in enumerate(left):
            if x.is_zero():
                continue
            for b, y in enumerate(right):
                if y.is_zero():
                    continue
                entry = self.table.get((i, a, j, b))
                if entry is not None:
                    _axpy(result, x * y, entry)
        return result

    def differential(self, i: int, element: Sequence[Polynomial]) -> Element:
        if i == 0:
            return []
        return self.resolution.apply(i, element)

    def leibniz_residual(self, left: Sequence[Polynomial], i: int, right: Sequence[Polynomial], j: int) -> Element:
        """d(xy) - d(x)y - (-1)^i x d(y)."""
        if i + j == 0:
            return []
        residual = self.differential(i + j, self.multiply(left, i, right, j))
        if not residual:
            return residual
        if i >= 1:
            first = self.multiply(self.differential(i, left), i - 1, right, j)
            residual = [r - f for r, f in zip(residual, first)]
        if j >= 1:
            second = self.multiply(left, i, self.differential(j, right), j - 1)
            residual = [r + s if i % 2 else r - s for r, s in zip(residual, second)]
        return residual

    def axiom_failures(self) -> List[str]:
        """Violations of Leibniz, graded commutativity, odd squares and the unit."""
        failures: List[str] = []
        complex_ = self.resolution
        length = complex_.length
        for i in range(0, length + 1):
            for j in range(0, length + 1 - i):
                for a in range(complex_.rank(i)):
                    x = complex_.basis_element(i, a)
                    for b in range(complex_.rank(j)):
                        y = complex_.basis_element(j, b)
                        if any(not r.is_zero() for r in self.leibniz_residual(x, i, y, j)):
                            failures.append(f"leibniz ({i},{a})x({j},{b})")
                        forward = self.basis_product(i, a, j, b)
                        backward = self.basis_product(j, b, i, a)
                        sign = -1 if (i * j) % 2 else 1
                        if any(f != (g if sign > 0 else -g) for f, g in zip(forward, backward)):
                            failures.append(f"commutativity ({i},{a})x({j},{b})")
                        if i == j and a == b and i % 2 and any(not f.is_zero() for f in forward):
                            failures.append(f"odd square ({i},{a})")
        return failures

    def check_axioms(self) -> None:
        failures = self.axiom_failures()
        if failures:
            raise EngineInvariantError(f"product on {self.resolution!r} fails: {', '.join(failures[:5])}")

    def __repr__(self) -> str:
        return f"DGProduct({self.name}, entries={len(self.table)})"


def exterior_product(algebra: KoszulAlgebra) -> DGProduct:
    """The wedge product of a Koszul complex as a product table."""
    table: ProductTable = {}
    for i in range(1, algebra.size + 1):
        for j in range(1, algebra.size + 1 - i):
            for a, sigma in enumerate(algebra.basis(i)):
                for b, tau in enumerate(algebra.basis(j)):
                    product = algebra.basis_product(sigma, tau)
                    if product is None:
                        continue
                    sign, union = product
                    element = algebra.complex.zero_element(i + j)
                    element[algebra.index_of(union)] = algebra.ring.constant(sign)
                    table[(i, a, j, b)] = element
    return DGProduct(algebra.complex, table, name=f"wedge({algebra.complex.name})")


def dg_product_length3(resolution: ChainComplex) -> DGProduct:
    """Lift a graded-commutative product onto a resolution of length at most 3.

    F_1 x F_1 is the canonical lift of f_a e_b - f_b e_a through d_2, and
    F_1 x F_2 the lift of f_a g - e_a d(g) through d_3.
    """
    if resolution.length > 3:
        raise PreconditionError(f"lifted products need length <= 3, got {resolution.length}")
    table: ProductTable = {}
    product = DGProduct(resolution, table)
    forms = [resolution.differential(1)[0, a] for a in range(resolution.rank(1))]
    try:
        if resolution.length >= 2:
            for a in range(resolution.rank(1)):
                for b in range(a + 1, resolution.rank(1)):
                    target = resolution.zero_element(1)
                    target[b] = forms[a]
                    target[a] = target[a] - forms[b]
                    value = lift_through(resolution, target, 2)
                    table[(1, a, 1, b)] = value
                    table[(1, b, 1, a)] = [-v for v in value]
        if resolution.length >= 3:
            for a in range(resolution.rank(1)):
                e_a = resolution.basis_element(1, a)
                for g in range(resolution.rank(2)):
                    boundary = resolution.apply(2, resolution.basis_element(2, g))
                    target = product.multiply(e_a, 1, boundary, 1)
                    target = [-v for v in target]
                    target[g] = target[g] + forms[a]
                    value = lift_through(resolution, target, 3)
                    table[(1, a, 2, g)] = value
                    table[(2, g, 1, a)] = list(value)
    except LiftError as exc:
        raise EngineInvariantError(f"{resolution!r} is not exact where a product lift was needed") from exc
    table = {key: value for key, value in table.items() if any(not v.is_zero() for v in value)}
    product.table = table
    log_event(logger, "dg_product_length3", entries=len(table), ranks=resolution.ranks())
    return product


def resolution_with_product(ideal: Ideal) -> DGProduct:
    """Koszul complex on the minimal generators of a complete intersection, else a lifted product."""
    if is_complete_intersection(ideal):
        return exterior_product(KoszulAlgebra(ideal.ring, ideal.minimal_generators(), name=f"K({ideal.name or 'I'})"))
    return dg_product_length3(minimal_free_resolution(ideal))
