"""Trivial Massey operations on K (x) R/IJ built from products d(z^I) ^ z^J.

When every Koszul homology class of R/IJ is a combination of cycles
c = d(z^I) ^ z^J, setting nu(c) = z^I ^ z^J gives z_a ^ z_b = z_a ^ d(nu(z_b))
modulo IJ, and

    mu(a_1, ..., a_p) = (-1)^(p+1) z_{a_1} ^ nu(z_{a_2}) ^ ... ^ nu(z_{a_p})

is a trivial Massey operation with the bar convention a -> (-1)^(|a|+1) a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np

from src.services.complexes.chain_complex import Element
from src.services.errors import PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.ring.linalg import LinearSolver
from src.services.ring.polynomial import Polynomial
from src.services.settings import EngineSettings

from .homology_algebra import ClassKey, KoszulHomologyAlgebra, StrandKey, koszul_homology_algebra

logger = get_logger(__name__)

MasseyStatus = Literal["certified", "inapplicable", "condition_failed"]


@dataclass
class Candidate:
    label: str
    degree: StrandKey
    cycle: Element
    nu: Element


@dataclass
class MasseyCertificate:
    status: MasseyStatus
    depth_checked: int = 0
    verified_condition_star: bool = False
    # class -> labels of the candidates combined into its representative
    basis_used: Dict[ClassKey, List[str]] = field(default_factory=dict)
    representatives: Dict[ClassKey, Element] = field(default_factory=dict)
    nu_map: Dict[ClassKey, Element] = field(default_factory=dict)
    reason: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _combine(vectors: Sequence[Element], weights: Sequence[int]) -> Element:
    result = [value * 0 for value in vectors[0]]
    for vector, weight in zip(vectors, weights):
        if weight:
            result = [r + v * int(weight) for r, v in zip(result, vector)]
    return result


def _scaled(element: Element, sign: int) -> Element:
    return list(element) if sign > 0 else [-value for value in element]


def _candidates(
    target: KoszulHomologyAlgebra,
    first: KoszulHomologyAlgebra,
    second: KoszulHomologyAlgebra,
    tag: Tuple[str, str],
) -> List[Candidate]:
    """d(z) ^ w for z a class of R/first and w a class of R/second or the unit."""
    koszul = target.algebra
    ring = target.ring
    unit = [ring.one()]
    seconds = [((0, 0, 0), unit)] + [(key, second.representative(key)) for key in second.class_keys()]
    found: List[Candidate] = []
    for z_key in first.class_keys():
        i, d, _ = z_key
        z = first.representative(z_key)
        dz = koszul.differential(i, z)
        for w_key, w in seconds:
            j, e, _ = w_key
            h = i - 1 + j
            if h < 1 or (h, d + e) not in target.classes:
                continue
            cycle = koszul.multiply(dz, i - 1, w, j)
            nu = koszul.multiply(z, i, w, j)
            label = f"d(z^{tag[0]}{z_key})^z^{tag[1]}{w_key}"
            found.append(Candidate(label, (h, d + e), cycle, nu))
    return found


def _vector(target: KoszulHomologyAlgebra, h: int, degree: int, element: Element) -> np.ndarray:
    return target.strands.basis(h, degree).vectorize(element)


def _wedge(target: KoszulHomologyAlgebra, left: Tuple[int, Element], right: Tuple[int, Element]) -> Tuple[int, Element]:
    i, x = left
    j, y = right
    if i + j > target.algebra.size:
        return i + j, []
    return i + j, target.algebra.multiply(x, i, y, j)


def massey_from_nu(
    ideal: Ideal,
    other: Ideal,
    depth: int = 3,
    settings: Optional[EngineSettings] = None,
) -> MasseyCertificate:
    """Try to certify R/IJ Golod through an explicit trivial Massey operation."""
    if not ideal.is_proper() or not other.is_proper():
        raise PreconditionError("both factors must be proper ideals")
    if depth < 2:
        raise PreconditionError("Massey depth must be at least 2")
    settings = settings or EngineSettings()
    ring = ideal.ring
    p = ring.p
    target = koszul_homology_algebra(ideal * other, settings)
    first = koszul_homology_algebra(ideal, settings)
    second = first if other == ideal else koszul_homology_algebra(other, settings)
    candidates = _candidates(target, first, second, ("I", "J")) + _candidates(target, second, first, ("J", "I"))

    certificate = MasseyCertificate(status="inapplicable")
    degrees: Dict[ClassKey, int] = {}
    for (h, degree), strand in sorted(target.classes.items()):
        group = [c for c in candidates if c.degree == (h, degree)]
        if not group:
            certificate.reason = f"no candidate products in H_{h} degree {degree}"
            return certificate
        coords = np.array([target.class_coordinates(h, degree, c.cycle) for c in group], dtype=np.int64)
        solver = LinearSolver(coords.T % p, p)
        for index in range(strand.dimension):
            unit = np.zeros(strand.dimension, dtype=np.int64)
            unit[index] = 1
            weights = solver.solve(unit)
            if weights is None:
                certificate.reason = f"H_{h} degree {degree} is not spanned by d(z^I)^z^J products"
                log_event(logger, "massey_inapplicable", reason=certificate.reason)
                return certificate
            key = (h, degree, index)
            used = [c for c, w in zip(group, weights) if w]
            certificate.basis_used[key] = [c.label for c in used]
            certificate.representatives[key] = _combine([c.cycle for c in group], weights)
            certificate.nu_map[key] = _combine([c.nu for c in group], weights)
            degrees[key] = h

    keys = list(certificate.representatives)
    koszul = target.algebra
    for a, b in cartesian(keys, keys):
        ha, hb = degrees[a], degrees[b]
        if ha + hb > koszul.size:
            continue
        za, zb = certificate.representatives[a], certificate.representatives[b]
        d_nu = koszul.differential(hb + 1, certificate.nu_map[b])
        lhs = koszul.multiply(za, ha, zb, hb)
        rhs = koszul.multiply(za, ha, d_nu, hb)
        if np.any(_vector(target, ha + hb, a[1] + b[1], [x - y for x, y in zip(lhs, rhs)])):
            certificate.status = "condition_failed"
            certificate.reason = f"z_a ^ z_b != z_a ^ d(nu(z_b)) for {a}, {b}"
            return certificate
    certificate.verified_condition_star = True

    if not _check_recursion(target, certificate, degrees, depth):
        certificate.status = "condition_failed"
        certificate.reason = "the Massey recursion fails"
        return certificate
    certificate.depth_checked = depth
    certificate.status = "certified"
    log_event(logger, "massey_certified", classes=len(keys), depth=depth)
    return certificate


def _mu(
    target: KoszulHomologyAlgebra,
    certificate: MasseyCertificate,
    degrees: Dict[ClassKey, int],
    keys: Sequence[ClassKey],
) -> Tuple[int, Element]:
    first = keys[0]
    value = (degrees[first], certificate.representatives[first])
    for key in keys[1:]:
        value = _wedge(target, value, (degrees[key] + 1, certificate.nu_map[key]))
        if not value[1]:
            return value
    sign = -1 if len(keys) % 2 == 0 else 1
    return value[0], _scaled(value[1], sign)


def _check_recursion(
    target: KoszulHomologyAlgebra,
    certificate: MasseyCertificate,
    degrees: Dict[ClassKey, int],
    depth: int,
) -> bool:
    """d mu(a_1..a_q) = sum_j bar(mu(a_1..a_j)) mu(a_{j+1}..a_q) modulo IJ."""
    koszul = target.algebra
    keys = list(certificate.representatives)
    for q in range(2, depth + 1):
        for chain in cartesian(keys, repeat=q):
            total = sum(degrees[k] for k in chain) + q - 1
            internal = sum(k[1] for k in chain)
            if total - 1 > koszul.size:
                continue
            h, mu = _mu(target, certificate, degrees, chain)
            lhs = koszul.differential(h, mu) if mu else []
            rhs: Optional[List[Polynomial]] = None
            for j in range(1, q):
                left_h, left = _mu(target, certificate, degrees, chain[:j])
                right_h, right = _mu(target, certificate, degrees, chain[j:])
                if not left or not right:
                    continue
                bar = _scaled(left, -1 if left_h % 2 == 0 else 1)
                _, term = _wedge(target, (left_h, bar), (right_h, right))
                if not term:
                    continue
                rhs = term if rhs is None else [x + y for x, y in zip(rhs, term)]
            if not lhs and rhs is None:
                continue
            width = koszul.complex.rank(total - 1)
            lhs = lhs or [target.ring.zero()] * width
            rhs = rhs or [target.ring.zero()] * width
            if np.any(_vector(target, total - 1, internal, [x - y for x, y in zip(lhs, rhs)])):
                return False
    return True
