"""Degree-wise linear algebra on homogeneous vectors of a graded free module.

Graded Nakayama turns "is this generator redundant?" into a rank question on a
single internal degree, which is what ``minimal_generating_subset`` answers.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np

from src.services.ring.linalg import EchelonBasis
from src.services.ring.monomials import Monomial, monomials_of_degree
from src.services.ring.polynomial import Polynomial, PolynomialRing

from .buchberger import Term, Vector


def polynomial_to_vector(f: Polynomial, position: int = 0) -> Vector:
    return {(position, m): c for m, c in f.items()}


def column_to_vector(column: Sequence[Polynomial]) -> Vector:
    vector: Vector = {}
    for position, entry in enumerate(column):
        for m, c in entry.items():
            vector[(position, m)] = c
    return vector


def vector_to_column(ring: PolynomialRing, vector: Vector, rank: int, offset: int = 0) -> List[Polynomial]:
    """Polynomial entries of the positions ``offset .. offset + rank - 1``."""
    entries: List[Dict[Monomial, int]] = [{} for _ in range(rank)]
    for (position, m), c in vector.items():
        index = position - offset
        if 0 <= index < rank:
            entries[index][m] = c
    return [Polynomial(ring, terms, normalized=True) for terms in entries]


def shift_vector(vector: Vector, exps: Monomial) -> Vector:
    return {(position, tuple(a + b for a, b in zip(m, exps))): c for (position, m), c in vector.items()}


def vector_degree(vector: Vector, shifts: Sequence[int]) -> int:
    position, m = next(iter(vector))
    return sum(m) + shifts[position]


def _dense_rows(vectors: Sequence[Vector], index: Dict[Term, int]) -> np.ndarray:
    matrix = np.zeros((len(vectors), len(index)), dtype=np.int64)
    for row, vector in enumerate(vectors):
        for term, c in vector.items():
            matrix[row, index[term]] = c
    return matrix


def minimal_generating_subset(
    ring: PolynomialRing,
    vectors: Sequence[Vector],
    degrees: Sequence[int],
    relations: Sequence[Tuple[Vector, int]] = (),
) -> List[int]:
    """Indices of a minimal generating subset, earliest-listed generators win.

    ``relations`` span a submodule that is treated as zero (used when the
    ambient module is a free module over a quotient ring). Generators lying in
    it are never kept.
    """
    n = ring.nvars
    p = ring.p
    kept: List[int] = []
    for degree in sorted({degrees[i] for i, v in enumerate(vectors) if v}):
        group = [i for i, v in enumerate(vectors) if v and degrees[i] == degree]
        spanning: List[Vector] = []
        for j in kept:
            for u in monomials_of_degree(n, degree - degrees[j]):
                spanning.append(shift_vector(vectors[j], u))
        for relation, relation_degree in relations:
            if relation and relation_degree <= degree:
                for u in monomials_of_degree(n, degree - relation_degree):
                    spanning.append(shift_vector(relation, u))
        index: Dict[Term, int] = {}
        for vector in spanning + [vectors[i] for i in group]:
            for term in vector:
                index.setdefault(term, len(index))
        basis = EchelonBasis.from_matrix(_dense_rows(spanning, index), p)
        candidates = _dense_rows([vectors[i] for i in group], index)
        for i, row in zip(group, candidates):
            if basis.add(row):
                kept.append(i)
    return sorted(kept, key=lambda i: (degrees[i], i))
