"""Ideal arithmetic built on the Groebner engine."""

from __future__ import annotations

from typing import List, Literal, Optional, Sequence, Tuple, Union

from src.services.errors import PreconditionError, RingMismatchError
from src.services.ring.polynomial import Polynomial, PolynomialRing

from .buchberger import GroebnerEngine
from .graded import column_to_vector
from .ideal import Ideal
from .module import ModulePresentation, syzygies

IdealOp = Literal["sum", "product", "equality", "containment"]


def groebner_basis(ideal: Ideal) -> List[Polynomial]:
    return ideal.groebner_basis()


def normal_form(
    f: Polynomial, ideal: Ideal, track_cofactors: bool = False
) -> Tuple[Polynomial, Optional[List[Polynomial]]]:
    return ideal.normal_form(f, track_cofactors=track_cofactors)


def ideal_ops(first: Ideal, second: Ideal, op: IdealOp) -> Union[Ideal, bool]:
    """Sum, product, equality, or containment (``first`` inside ``second``)."""
    if first.ring != second.ring:
        raise RingMismatchError("ideals belong to different rings")
    if op == "sum":
        return first + second
    if op == "product":
        return first * second
    if op == "equality":
        return first == second
    if op == "containment":
        return second.contains_ideal(first)
    raise PreconditionError(f"unknown ideal operation '{op}'")


def fitting_ideal(ideal: Ideal) -> Ideal:
    """Ideal of the entries of a minimal presentation matrix of ``ideal``."""
    if not ideal.is_proper():
        raise PreconditionError("the unit ideal has no Fitting ideal here")
    presentation = syzygies(ModulePresentation.from_row(ideal.ring, ideal.minimal_generators()))
    return Ideal(ideal.ring, presentation.entries(), name=f"Fitt({ideal.name or 'I'})")


def koszul_relations(ring: PolynomialRing, sequence: Sequence[Polynomial]) -> ModulePresentation:
    columns: List[List[Polynomial]] = []
    degrees: List[int] = []
    c = len(sequence)
    for i in range(c):
        for j in range(i + 1, c):
            column = [ring.zero()] * c
            column[i] = sequence[j]
            column[j] = -sequence[i]
            columns.append(column)
            degrees.append(sequence[i].degree + sequence[j].degree)
    return ModulePresentation(ring, tuple(f.degree for f in sequence), columns, degrees)


def is_regular_sequence(ring: PolynomialRing, sequence: Sequence[Polynomial]) -> bool:
    """True iff the first Koszul homology of the sequence vanishes."""
    if not sequence:
        return True
    for f in sequence:
        if f.ring != ring:
            raise RingMismatchError("sequence element belongs to a different ring")
        if f.is_zero():
            return False
        if f.degree <= 0:
            raise PreconditionError("regular sequences need elements of positive degree")
    kernel = syzygies(ModulePresentation.from_row(ring, sequence))
    if kernel.ncols == 0:
        return True
    relations = koszul_relations(ring, sequence)
    engine = GroebnerEngine(ring, shifts=[f.degree for f in sequence])
    engine.run([column_to_vector(column) for column in relations.columns])
    return not any(engine.normal_form(column_to_vector(column)) for column in kernel.columns)


def is_complete_intersection(ideal: Ideal) -> bool:
    return is_regular_sequence(ideal.ring, list(ideal.minimal_generators()))
