"""Multiplicative invariants of the Tor algebra of a codepth-3 quotient."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Literal, Optional

import numpy as np

from src.services.errors import PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.resolutions.betti import BettiTable, betti_table
from src.services.resolutions.free_resolution import minimal_free_resolution
from src.services.ring.linalg import rank_mod
from src.services.settings import EngineSettings

from .homology_algebra import ClassKey, KoszulHomologyAlgebra, koszul_homology_algebra

logger = get_logger(__name__)

TorClass = Literal["trivial", "H(0,q)", "G(r)", "C(3)", "unclassified"]


@dataclass
class TorAlgebraInvariants:
    p: int
    q: int
    r: int
    label: str

    def as_dict(self) -> Dict[str, object]:
        return {"p": self.p, "q": self.q, "r": self.r, "label": self.label}


def _flat_coordinates(algebra: KoszulHomologyAlgebra, degree: int) -> Dict[ClassKey, int]:
    """Global positions of the classes of H_degree across internal degrees."""
    return {key: position for position, key in enumerate(algebra.class_keys(degree))}


def _product_vector(algebra: KoszulHomologyAlgebra, left: ClassKey, right: ClassKey, positions: Dict[ClassKey, int]) -> np.ndarray:
    vector = np.zeros(len(positions), dtype=np.int64)
    (h, degree), coords = algebra.product(left, right)
    for index, value in enumerate(coords):
        if value:
            vector[positions[(h, degree, index)]] = value
    return vector


def _pairing(algebra: KoszulHomologyAlgebra, i: int, j: int) -> List[List[np.ndarray]]:
    """table[a][b] = coordinates of (class a of H_i) * (class b of H_j) in H_{i+j}."""
    target = _flat_coordinates(algebra, i + j)
    return [
        [_product_vector(algebra, left, right, target) for right in algebra.class_keys(j)]
        for left in algebra.class_keys(i)
    ]


def _rank(rows: List[np.ndarray], p: int) -> int:
    rows = [row for row in rows if row.size]
    if not rows:
        return 0
    return rank_mod(np.array(rows, dtype=np.int64), p)


def classify(p: int, q: int, r: int) -> TorClass:
    if p == 0 and q == 0:
        return "trivial"
    if p == 3 and q == 1 and r == 3:
        return "C(3)"
    if p == 0 and q == 1 and r >= 2:
        return "G(r)"
    if p == 0 and r == q:
        return "H(0,q)"
    return "unclassified"


def tor_invariants(
    ideal: Ideal,
    settings: Optional[EngineSettings] = None,
    table: Optional[BettiTable] = None,
    algebra: Optional[KoszulHomologyAlgebra] = None,
) -> TorAlgebraInvariants:
    """p = rank H_1 H_1, q = rank H_1 H_2, r = rank of H_2 -> Hom(H_1, H_3)."""
    if table is None:
        table = betti_table(minimal_free_resolution(ideal))
    if table.projective_dimension != 3:
        raise PreconditionError(f"Tor invariants need projective dimension 3, got {table.projective_dimension}")
    if algebra is None:
        algebra = koszul_homology_algebra(ideal, settings, table)
    field_p = ideal.ring.p
    one_one = _pairing(algebra, 1, 1)
    one_two = _pairing(algebra, 1, 2)
    p = _rank([v for row in one_one for v in row], field_p)
    q = _rank([v for row in one_two for v in row], field_p)
    # H_2 -> Hom(H_1, H_3): row b concatenates the products h_a * h_b over a
    n1 = len(one_two)
    n2 = len(one_two[0]) if one_two else 0
    by_second = [np.concatenate([one_two[a][b] for a in range(n1)]) for b in range(n2)] if n1 else []
    r = _rank(by_second, field_p)
    label = classify(p, q, r)
    display = {"H(0,q)": f"H(0,{q})", "G(r)": f"G({r})"}.get(label, label)
    invariants = TorAlgebraInvariants(p, q, r, display)
    log_event(logger, "tor_invariants", p=p, q=q, r=r, label=display)
    return invariants
