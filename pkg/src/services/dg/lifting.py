"""Solving d(x) = b in a complex of free R-modules."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from src.services.complexes.chain_complex import ChainComplex, Element
from src.services.complexes.strands import StrandBasis, strand_matrix
from src.services.errors import LiftError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.quotient import QuotientStrands
from src.services.ring.linalg import LinearSolver
from src.services.ring.polynomial import Polynomial


def element_degree(complex_: ChainComplex, i: int, element: Sequence[Polynomial]) -> Optional[int]:
    """Internal degree of a homogeneous element of C_i (None for zero)."""
    degrees = complex_.module(i).degrees
    found = {entry.degree + degrees[k] for k, entry in enumerate(element) if not entry.is_zero()}
    if not found:
        return None
    if len(found) > 1:
        raise PreconditionError(f"element of C_{i} is not homogeneous (degrees {sorted(found)})")
    return found.pop()


def _ring_strands(complex_: ChainComplex) -> QuotientStrands:
    strands = complex_.strand_cache.get("ring")
    if strands is None:
        strands = QuotientStrands(Ideal.zero(complex_.ring))
        complex_.strand_cache["ring"] = strands
    return strands  # type: ignore[return-value]


def _solver(complex_: ChainComplex, i: int, degree: int) -> Tuple[StrandBasis, StrandBasis, LinearSolver]:
    key = ("lift", i, degree)
    cached = complex_.strand_cache.get(key)
    if cached is None:
        strands = _ring_strands(complex_)
        source = StrandBasis(complex_.module(i), degree, strands)
        target = StrandBasis(complex_.module(i - 1), degree, strands)
        cached = (source, target, LinearSolver(strand_matrix(complex_, i, source, target), complex_.ring.p))
        complex_.strand_cache[key] = cached
    return cached  # type: ignore[return-value]


def lift_through(complex_: ChainComplex, target: Sequence[Polynomial], i: int) -> Element:
    """Canonical x in C_i with d_i(x) = target (free coordinates set to zero).

    Raises ``LiftError`` when the target is not a boundary.
    """
    if len(target) != complex_.rank(i - 1):
        raise PreconditionError(f"target has length {len(target)}, C_{i - 1} has rank {complex_.rank(i - 1)}")
    degree = element_degree(complex_, i - 1, target)
    if degree is None:
        return complex_.zero_element(i)
    source, target_basis, solver = _solver(complex_, i, degree)
    solution = solver.solve(target_basis.vectorize(target))
    if solution is None:
        raise LiftError(f"target in C_{i - 1} of degree {degree} is not a boundary of {complex_!r}")
    return source.element(solution)
