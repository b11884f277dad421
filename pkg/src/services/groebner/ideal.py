"""Homogeneous ideals with cached Groebner bases and minimal generators."""

from __future__ import annotations

import threading
from typing import Dict, List, Optional, Sequence, Tuple

from src.services.errors import PreconditionError, RingMismatchError
from src.services.ring.monomials import Monomial, monomial_divides, monomial_quotient
from src.services.ring.polynomial import Polynomial, PolynomialRing

from .buchberger import GroebnerEngine
from .graded import minimal_generating_subset, polynomial_to_vector


class Ideal:
    """An ideal of a graded polynomial ring given by homogeneous generators.

    The Groebner basis and the minimal generators are computed lazily, once,
    under a lock, and are read-only afterwards.
    """

    def __init__(self, ring: PolynomialRing, generators: Sequence[Polynomial] = (), name: Optional[str] = None):
        cleaned: List[Polynomial] = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("generator belongs to a different ring")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise PreconditionError(f"generator {g} is not homogeneous")
            cleaned.append(g)
        self.ring = ring
        self.name = name
        self._generators: Tuple[Polynomial, ...] = tuple(cleaned)
        self._lock = threading.RLock()
        self._min_gens: Optional[Tuple[Polynomial, ...]] = None
        self._gb: Optional[Tuple[Polynomial, ...]] = None
        self._gb_leads: Tuple[Monomial, ...] = ()
        # gb[k] = sum_j transform[k][j] * minimal_generators[j]
        self._transform: Tuple[Tuple[Polynomial, ...], ...] = ()

    @classmethod
    def maximal(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, ring.gens(), name="m")

    @classmethod
    def zero(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, (), name="0")

    @property
    def generators(self) -> Tuple[Polynomial, ...]:
        return self._generators

    def is_zero(self) -> bool:
        return not self._generators

    def __repr__(self) -> str:
        body = ", ".join(str(g) for g in self._generators)
        return f"Ideal({body})"

    def minimal_generators(self) -> Tuple[Polynomial, ...]:
        with self._lock:
            if self._min_gens is None:
                vectors = [polynomial_to_vector(g) for g in self._generators]
                degrees = [g.degree for g in self._generators]
                kept = minimal_generating_subset(self.ring, vectors, degrees)
                self._min_gens = tuple(self._generators[i] for i in sorted(kept))
            return self._min_gens

    @property
    def mu(self) -> int:
        return len(self.minimal_generators())

    def generator_degrees(self) -> List[int]:
        return [g.degree for g in self.minimal_generators()]

    def max_generator_degree(self) -> int:
        degrees = self.generator_degrees()
        return max(degrees) if degrees else 0

    def _compute_groebner(self) -> None:
        gens = self.minimal_generators()
        zero = (0,) * self.ring.nvars
        engine = GroebnerEngine(self.ring, shifts=[0])
        vectors = [polynomial_to_vector(g) for g in gens]
        tags = [{(j, zero): 1} for j in range(len(gens))]
        basis = engine.run(vectors, tags)
        polys: List[Polynomial] = []
        transform: List[Tuple[Polynomial, ...]] = []
        for entry in basis:
            polys.append(Polynomial(self.ring, {m: c for (_, m), c in entry.terms.items()}, normalized=True))
            rows: List[Dict[Monomial, int]] = [{} for _ in gens]
            for (j, m), c in (entry.tag or {}).items():
                rows[j][m] = c
            transform.append(tuple(Polynomial(self.ring, row, normalized=True) for row in rows))
        # largest leading monomial first
        self._gb = tuple(reversed(polys))
        self._transform = tuple(reversed(transform))
        self._gb_leads = tuple(g.leading_monomial() for g in self._gb)

    def groebner_basis(self) -> List[Polynomial]:
        with self._lock:
            if self._gb is None:
                self._compute_groebner()
            return list(self._gb or ())

    def leading_monomials(self) -> List[Monomial]:
        self.groebner_basis()
        return list(self._gb_leads)

    def normal_form(self, f: Polynomial, track_cofactors: bool = False) -> Tuple[Polynomial, Optional[List[Polynomial]]]:
        """Remainder of ``f`` modulo the Groebner basis.

        With ``track_cofactors`` the quotients are returned as well, aligned with
        ``groebner_basis()``, so that ``f == sum(q * g) + remainder``.
        """
        basis = self.groebner_basis()
        leads = self._gb_leads
        key = self.ring.key
        p = self.ring.p
        work: Dict[Monomial, int] = dict(f.terms)
        remainder: Dict[Monomial, int] = {}
        quotients: List[Dict[Monomial, int]] = [{} for _ in basis]
        while work:
            lead = max(work, key=key)
            coefficient = work[lead]
            divisor = next((k for k, m in enumerate(leads) if monomial_divides(m, lead)), None)
            if divisor is None:
                remainder[lead] = coefficient
                del work[lead]
                continue
            exps = monomial_quotient(lead, leads[divisor])
            if track_cofactors:
                quotients[divisor][exps] = (quotients[divisor].get(exps, 0) + coefficient) % p
            for m, c in basis[divisor].items():
                target = tuple(a + b for a, b in zip(m, exps))
                value = (work.get(target, 0) - coefficient * c) % p
                if value:
                    work[target] = value
                else:
                    work.pop(target, None)
        rest = Polynomial(self.ring, remainder, normalized=True)
        if not track_cofactors:
            return rest, None
        return rest, [Polynomial(self.ring, q) for q in quotients]

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        remainder, _ = self.normal_form(f)
        return remainder.is_zero()

    def cofactors(self, f: Polynomial) -> List[Polynomial]:
        """Coefficients expressing ``f`` in the minimal generators, in listed order."""
        remainder, quotients = self.normal_form(f, track_cofactors=True)
        if not remainder.is_zero():
            raise PreconditionError(f"{f} is not a member of {self!r}")
        result = [self.ring.zero() for _ in self.minimal_generators()]
        for q, row in zip(quotients or [], self._transform):
            if q.is_zero():
                continue
            for j, t in enumerate(row):
                if not t.is_zero():
                    result[j] = result[j] + q * t
        return result

    def contains_ideal(self, other: "Ideal") -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.generators)

    def is_proper(self) -> bool:
        return not self.contains(self.ring.one())

    def _check(self, other: "Ideal") -> None:
        if other.ring != self.ring:
            raise RingMismatchError("ideals belong to different rings")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        products = [f * g for f in self.minimal_generators() for g in other.minimal_generators()]
        ideal = Ideal(self.ring, products)
        return Ideal(self.ring, ideal.minimal_generators())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = object.__hash__
