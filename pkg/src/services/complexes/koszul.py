"""Koszul complexes on sequences of homogeneous forms."""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from src.services.ring.polynomial import Polynomial, PolynomialRing

from .chain_complex import ChainComplex, GradedFreeModule
from .matrix import PolyMatrix

Subset = Tuple[int, ...]


def exterior_basis(n: int, degree: int) -> List[Subset]:
    """Subsets of {0..n-1} of the given size in lexicographic order."""
    return list(combinations(range(n), degree))


def wedge_sign(sigma: Subset, tau: Subset) -> int:
    """Sign of e_sigma ^ e_tau = sign * e_(sigma u tau) for disjoint sorted subsets."""
    inversions = sum(1 for s in sigma for t in tau if s > t)
    return -1 if inversions % 2 else 1


def koszul_complex(
    ring: PolynomialRing,
    sequence: Optional[Sequence[Polynomial]] = None,
    name: Optional[str] = None,
) -> ChainComplex:
    """K(f_1..f_c) with d(e_sigma) = sum_k (-1)^k f_{sigma_k} e_{sigma minus sigma_k}.

    Without a sequence the variables are used, giving the Koszul complex of R.
    """
    forms = list(sequence) if sequence is not None else ring.gens()
    c = len(forms)
    degrees = [f.degree for f in forms]
    bases = [exterior_basis(c, i) for i in range(c + 1)]
    modules = [GradedFreeModule(tuple(sum(degrees[s] for s in sigma) for sigma in basis)) for basis in bases]
    differentials: Dict[int, PolyMatrix] = {}
    for i in range(1, c + 1):
        index = {sigma: j for j, sigma in enumerate(bases[i - 1])}
        entries = {}
        for col, sigma in enumerate(bases[i]):
            for k, s in enumerate(sigma):
                face = sigma[:k] + sigma[k + 1 :]
                entries[(index[face], col)] = forms[s] if k % 2 == 0 else -forms[s]
        differentials[i] = PolyMatrix(ring, len(bases[i - 1]), len(bases[i]), entries)
    return ChainComplex(ring, modules, differentials, name=name or "K")
