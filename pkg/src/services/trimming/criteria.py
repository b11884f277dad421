"""Golodness criteria read off trimming complexes and product resolutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np

from src.services.complexes.chain_complex import Element
from src.services.complexes.matrix import PolyMatrix
from src.services.dg.koszul_algebra import KoszulAlgebra
from src.services.errors import PreconditionError
from src.services.golod.homology_algebra import koszul_homology_algebra, product_triviality
from src.services.golod.models import Verdict
from src.services.groebner.ideal import Ideal
from src.services.groebner.operations import fitting_ideal, is_complete_intersection, is_regular_sequence
from src.services.logging import get_logger, log_event
from src.services.ring.linalg import rank_mod
from src.services.settings import EngineSettings

from .product_resolution import build_product_resolution
from .trimming_complex import build_trimming_complex

logger = get_logger(__name__)

SplitStatus = Literal["golod_certified", "inconclusive"]
Degree3Branch = Literal["ci", "not_ci", "non_minimal_cone"]


def constant_matrix(matrix: PolyMatrix, p: int) -> np.ndarray:
    """Reduction mod m of a matrix of homogeneous entries."""
    result = np.zeros(matrix.shape, dtype=np.int64)
    for (row, col), value in matrix.items():
        result[row, col] = value.constant_term() % p
    return result


@dataclass
class SplitInjectionResult:
    status: SplitStatus
    # k -> (rank of Q_k (x) k, rank of F_{k+1})
    ranks: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == "golod_certified"


def split_injection_check(ideal: Ideal, other: Ideal) -> SplitInjectionResult:
    """Trim every generator of I by J and test whether each Q_k (x) k is injective."""
    if not other.contains_ideal(fitting_ideal(ideal)):
        raise PreconditionError("Fitt(I) is not contained in J; the trimming would have to be iterated")
    positions = list(range(1, ideal.mu + 1))
    data, _ = build_trimming_complex(ideal, positions, [other] * len(positions))
    p = ideal.ring.p
    ranks: Dict[int, Tuple[int, int]] = {}
    for k in range(1, data.resolution.length):
        Q = data.stacked_q(k)
        expected = data.resolution.rank(k + 1)
        if expected == 0:
            continue
        rank = rank_mod(constant_matrix(Q, p), p) if Q.nrows else 0
        ranks[k] = (rank, expected)
    status: SplitStatus = "golod_certified" if all(r == e for r, e in ranks.values()) else "inconclusive"
    log_event(logger, "split_injection_check", status=status, ranks=ranks)
    return SplitInjectionResult(status, ranks)


@dataclass
class WitnessProduct:
    indices: Tuple[int, int, int, int]
    # -g_ij ^ g_kl in the K_4 summand of the degree-4 module of the cone
    element: Element
    nontrivial: bool

    @property
    def label(self) -> str:
        i, j, k, l = self.indices
        return f"g_{{{i}{j}}}·g_{{{k}{l}}}"

    @property
    def evidence(self) -> str:
        return f"H_2·H_2 product {self.label}"

    def verdict(self) -> Verdict:
        return Verdict(kind="non_golod", witness=self.evidence)


def nongolod_witness_product(a_ideal: Ideal, ideal: Ideal, i: int, j: int, k: int, l: int) -> WitnessProduct:
    """The product g_ij * g_kl of two degree-2 Koszul classes of a (1-based indices)."""
    ring = ideal.ring
    generators = a_ideal.minimal_generators()
    if len(generators) < 4:
        raise PreconditionError("witness products need at least four generators of a; use degree3_product_check")
    if not (Ideal.maximal(ring) * ideal).contains_ideal(a_ideal):
        raise PreconditionError(f"{a_ideal!r} is not contained in mI")
    indices = (i, j, k, l)
    if any(x < 1 or x > len(generators) for x in indices) or i == j or k == l:
        raise PreconditionError(f"indices {indices} do not name two degree-2 basis elements")
    algebra = KoszulAlgebra(ring, generators, name="K(a)")
    first = _signed_pair(algebra, i - 1, j - 1)
    second = _signed_pair(algebra, k - 1, l - 1)
    product = algebra.multiply(first, 2, second, 2)
    element = [-value for value in product]
    nontrivial = any(value.constant_term() % ring.p for value in element)
    log_event(logger, "nongolod_witness_product", indices=indices, nontrivial=nontrivial)
    return WitnessProduct(indices, element, nontrivial)


def _signed_pair(algebra: KoszulAlgebra, a: int, b: int) -> Element:
    element = algebra.generator((min(a, b), max(a, b)))
    if a > b:
        element = [-value for value in element]
    return element


@dataclass
class Degree3Report:
    branch: Degree3Branch
    trivial: bool
    # (f, sigma) pairs whose product survives reduction mod m; the e_r factor never changes that
    nontrivial_pairs: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)
    checked: int = 0


def degree3_product_check(a_ideal: Ideal, ideal: Ideal, settings: Optional[EngineSettings] = None) -> Degree3Report:
    """Products (f (x) e_r) * g_ij on the cone for a in three variables.

    The closed form is d^F(f) e_r ^ g_ij + f * L_2(g_ij) (x) e_r; the first term
    always lies in m T_3, so triviality is decided by f * L_2(g_ij) mod m.
    """
    ring = ideal.ring
    if ring.nvars != 3:
        raise PreconditionError(f"the degree-3 product check needs 3 variables, got {ring.nvars}")
    if not is_regular_sequence(ring, a_ideal.minimal_generators()):
        raise PreconditionError(f"{a_ideal!r} is not generated by a regular sequence")
    if not ideal.contains_ideal(a_ideal):
        raise PreconditionError(f"{a_ideal!r} is not contained in {ideal!r}")
    if not (Ideal.maximal(ring) * ideal).contains_ideal(a_ideal):
        algebra = koszul_homology_algebra(a_ideal * ideal, settings)
        report = product_triviality(algebra, settings, degrees=(1, 2))
        log_event(logger, "degree3_product_check", branch="non_minimal_cone", trivial=report.trivial)
        return Degree3Report("non_minimal_cone", report.trivial, [], report.checked)

    built = build_product_resolution(a_ideal, ideal, bound=settings.strand_bound if settings else None)
    maps = built.maps
    F = maps.resolution
    product = maps.product
    branch: Degree3Branch = "ci" if is_complete_intersection(ideal) else "not_ci"
    p = ring.p
    result = Degree3Report(branch, True)
    L2 = maps.L.get(2)
    if L2 is None:
        return result
    for f in range(F.rank(1)):
        e_f = F.basis_element(1, f)
        for s, sigma in enumerate(maps.koszul.basis(2)):
            value = product.multiply(e_f, 1, L2.column(s), 2)
            result.checked += 1
            if any(entry.constant_term() % p for entry in value):
                result.trivial = False
                result.nontrivial_pairs.append((f, sigma))
    log_event(logger, "degree3_product_check", branch=branch, trivial=result.trivial, checked=result.checked)
    return result
