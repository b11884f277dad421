"""k-bases of the graded pieces of R/J by standard monomials."""

from __future__ import annotations

import threading
from typing import Dict, List, Mapping

import numpy as np

from src.services.ring.monomials import Monomial, monomial_divides, monomials_of_degree
from src.services.ring.polynomial import Polynomial

from .ideal import Ideal


class QuotientStrands:
    """Standard-monomial bookkeeping for A = R/J, one internal degree at a time."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self._leads = ideal.leading_monomials()
        self._lock = threading.Lock()
        self._standard: Dict[int, List[Monomial]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._normal_forms: Dict[Monomial, Dict[Monomial, int]] = {}

    def is_standard(self, monomial: Monomial) -> bool:
        return not any(monomial_divides(lead, monomial) for lead in self._leads)

    def standard_monomials(self, degree: int) -> List[Monomial]:
        with self._lock:
            if degree not in self._standard:
                basis = [m for m in monomials_of_degree(self.ring.nvars, degree, self.ring.order) if self.is_standard(m)]
                self._standard[degree] = basis
                self._index[degree] = {m: i for i, m in enumerate(basis)}
            return self._standard[degree]

    def index(self, degree: int) -> Dict[Monomial, int]:
        self.standard_monomials(degree)
        return self._index[degree]

    def dimension(self, degree: int) -> int:
        return len(self.standard_monomials(degree))

    def reduce_monomial(self, monomial: Monomial) -> Mapping[Monomial, int]:
        cached = self._normal_forms.get(monomial)
        if cached is not None:
            return cached
        if self.is_standard(monomial):
            result = {monomial: 1}
        else:
            remainder, _ = self.ideal.normal_form(self.ring.monomial(monomial))
            result = dict(remainder.terms)
        self._normal_forms[monomial] = result
        return result

    def reduce(self, f: Polynomial) -> Dict[Monomial, int]:
        p = self.ring.p
        result: Dict[Monomial, int] = {}
        for m, c in f.items():
            for s, a in self.reduce_monomial(m).items():
                value = (result.get(s, 0) + c * a) % p
                if value:
                    result[s] = value
                else:
                    result.pop(s, None)
        return result

    def coordinates(self, f: Polynomial, degree: int) -> np.ndarray:
        index = self.index(degree)
        vector = np.zeros(len(index), dtype=np.int64)
        for s, c in self.reduce(f).items():
            vector[index[s]] = c
        return vector

    def hilbert_function(self, degree: int) -> int:
        return self.dimension(degree)
