"""Buchberger's algorithm on submodules of graded free modules.

Ideals are the rank-one case. Vectors are sparse maps ``(position, exponents) ->
coefficient``. An optional passive *tag* travels with every vector and records
how it was produced from the inputs; this is how cofactors with respect to the
input generators are extracted without a second pass.

Pairs are pruned with the Gebauer-Moeller criteria and processed by increasing
degree, which keeps homogeneous computations truncation friendly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.services.logging import get_logger, log_event
from src.services.ring.monomials import (
    Monomial,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
    monomials_coprime,
)
from src.services.ring.polynomial import PolynomialRing

Term = Tuple[int, Monomial]
Vector = Dict[Term, int]

logger = get_logger(__name__)


class ModuleOrder:
    """Term order on a graded free module.

    Positions below ``main_rank`` dominate every other position, which makes the
    order an elimination order for the augmented-module syzygy trick. Inside a
    block terms compare by shifted degree, then by the ring order, then by
    position (earlier positions are larger).
    """

    def __init__(self, ring: PolynomialRing, shifts: Sequence[int], main_rank: Optional[int] = None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.main_rank = len(self.shifts) if main_rank is None else main_rank
        self._ring_key = ring.key

    def degree(self, term: Term) -> int:
        position, exps = term
        return sum(exps) + self.shifts[position]

    def key(self, term: Term) -> Tuple:
        position, exps = term
        block = 1 if position < self.main_rank else 0
        return (block, sum(exps) + self.shifts[position], self._ring_key(exps), -position)


@dataclass
class BasisElement:
    terms: Vector
    lead: Term
    tag: Optional[Vector] = None


def _add_multiple(target: Vector, source: Vector, exps: Monomial, coefficient: int, p: int) -> None:
    """target -= coefficient * x^exps * source, in place."""
    for (position, m), c in source.items():
        key = (position, tuple(a + b for a, b in zip(m, exps)))
        value = (target.get(key, 0) - coefficient * c) % p
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def _scaled(vector: Vector, scalar: int, p: int) -> Vector:
    return {term: c * scalar % p for term, c in vector.items()}


class GroebnerEngine:
    def __init__(
        self,
        ring: PolynomialRing,
        shifts: Sequence[int],
        main_rank: Optional[int] = None,
    ):
        self.ring = ring
        self.p = ring.p
        self.order = ModuleOrder(ring, shifts, main_rank)
        # the product criterion is only sound for ideals
        self.product_criterion = len(self.order.shifts) == 1
        self.entries: List[BasisElement] = []
        self.basis: List[BasisElement] = []

    def leading_term(self, vector: Vector) -> Term:
        return max(vector, key=self.order.key)

    def _find_divisor(self, term: Term, basis: Sequence[BasisElement]) -> Optional[BasisElement]:
        position, exps = term
        for entry in basis:
            if entry.lead[0] == position and monomial_divides(entry.lead[1], exps):
                return entry
        return None

    def reduce(
        self,
        vector: Vector,
        basis: Sequence[BasisElement],
        tag: Optional[Vector] = None,
    ) -> Tuple[Vector, Optional[Vector]]:
        """Full reduction of ``vector`` by monic basis elements."""
        work = dict(vector)
        tag_work = dict(tag) if tag is not None else None
        remainder: Vector = {}
        p = self.p
        while work:
            lead = self.leading_term(work)
            coefficient = work[lead]
            divisor = self._find_divisor(lead, basis)
            if divisor is None:
                remainder[lead] = coefficient
                del work[lead]
                continue
            exps = monomial_quotient(lead[1], divisor.lead[1])
            _add_multiple(work, divisor.terms, exps, coefficient, p)
            if tag_work is not None and divisor.tag is not None:
                _add_multiple(tag_work, divisor.tag, exps, coefficient, p)
        return remainder, tag_work

    def _elements(self, indices: Sequence[int]) -> List[BasisElement]:
        return [self.entries[i] for i in indices]

    def normal_form(self, vector: Vector) -> Vector:
        """Remainder of ``vector`` modulo the basis produced by the last ``run``."""
        remainder, _ = self.reduce(vector, self.basis)
        return remainder

    def _append(self, vector: Vector, tag: Optional[Vector]) -> int:
        lead = self.leading_term(vector)
        inverse = pow(vector[lead], -1, self.p)
        terms = _scaled(vector, inverse, self.p)
        scaled_tag = _scaled(tag, inverse, self.p) if tag is not None else None
        self.entries.append(BasisElement(terms=terms, lead=lead, tag=scaled_tag))
        return len(self.entries) - 1

    def _lcm(self, i: int, j: int) -> Monomial:
        return monomial_lcm(self.entries[i].lead[1], self.entries[j].lead[1])

    def _coprime(self, i: int, j: int) -> bool:
        return self.product_criterion and monomials_coprime(self.entries[i].lead[1], self.entries[j].lead[1])

    def _update(self, active: List[int], pairs: List[Tuple[int, int]], h: int) -> Tuple[List[int], List[Tuple[int, int]]]:
        position = self.entries[h].lead[0]
        lead_h = self.entries[h].lead[1]
        candidates = [g for g in active if self.entries[g].lead[0] == position]
        kept: List[int] = []
        while candidates:
            g1 = candidates.pop(0)
            lcm1 = self._lcm(h, g1)
            if self._coprime(h, g1) or not any(
                monomial_divides(self._lcm(h, g2), lcm1) for g2 in candidates + kept
            ):
                kept.append(g1)
        new_pairs = [(g, h) for g in kept if not self._coprime(h, g)]

        surviving: List[Tuple[int, int]] = []
        for g1, g2 in pairs:
            if self.entries[g1].lead[0] == position:
                lcm12 = self._lcm(g1, g2)
                if (
                    monomial_divides(lead_h, lcm12)
                    and self._lcm(g1, h) != lcm12
                    and self._lcm(h, g2) != lcm12
                ):
                    continue
            surviving.append((g1, g2))

        next_active = [
            g
            for g in active
            if not (self.entries[g].lead[0] == position and monomial_divides(lead_h, self.entries[g].lead[1]))
        ]
        next_active.append(h)
        return next_active, surviving + new_pairs

    def _pair_degree(self, pair: Tuple[int, int]) -> Tuple[int, int, int]:
        i, j = pair
        position = self.entries[i].lead[0]
        return (sum(self._lcm(i, j)) + self.order.shifts[position], i, j)

    def _s_vector(self, i: int, j: int) -> Tuple[Vector, Optional[Vector]]:
        first, second = self.entries[i], self.entries[j]
        lcm = self._lcm(i, j)
        vector: Vector = {}
        _add_multiple(vector, first.terms, monomial_quotient(lcm, first.lead[1]), -1, self.p)
        _add_multiple(vector, second.terms, monomial_quotient(lcm, second.lead[1]), 1, self.p)
        tag: Optional[Vector] = None
        if first.tag is not None and second.tag is not None:
            tag = {}
            _add_multiple(tag, first.tag, monomial_quotient(lcm, first.lead[1]), -1, self.p)
            _add_multiple(tag, second.tag, monomial_quotient(lcm, second.lead[1]), 1, self.p)
        return vector, tag

    def run(self, vectors: Sequence[Vector], tags: Optional[Sequence[Vector]] = None) -> List[BasisElement]:
        """Reduced Groebner basis of the submodule generated by ``vectors``."""
        self.entries = []
        active: List[int] = []
        pairs: List[Tuple[int, int]] = []
        inputs = [
            (vector, tags[index] if tags is not None else None)
            for index, vector in enumerate(vectors)
            if vector
        ]
        inputs.sort(key=lambda item: self.order.key(self.leading_term(item[0])))
        for vector, tag in inputs:
            remainder, tag_rem = self.reduce(vector, self._elements(active), tag)
            if remainder:
                h = self._append(remainder, tag_rem)
                active, pairs = self._update(active, pairs, h)

        processed = 0
        while pairs:
            pair = min(pairs, key=self._pair_degree)
            pairs.remove(pair)
            processed += 1
            vector, tag = self._s_vector(*pair)
            if not vector:
                continue
            remainder, tag_rem = self.reduce(vector, self._elements(active), tag)
            if remainder:
                h = self._append(remainder, tag_rem)
                active, pairs = self._update(active, pairs, h)

        reduced: List[BasisElement] = []
        for index in active:
            others = self._elements([g for g in active if g != index])
            entry = self.entries[index]
            terms, tag = self.reduce(entry.terms, others, entry.tag)
            reduced.append(BasisElement(terms=terms, lead=entry.lead, tag=tag))
        reduced.sort(key=lambda entry: self.order.key(entry.lead))
        self.basis = reduced
        log_event(logger, "groebner_basis", size=len(reduced), pairs=processed)
        return reduced
