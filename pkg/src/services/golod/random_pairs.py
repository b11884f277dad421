"""Seeded random monomial ideal pairs for product-ideal property checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.ring.polynomial import PolynomialRing
from src.services.settings import EngineSettings

from .homology_algebra import koszul_homology_algebra, product_triviality

logger = get_logger(__name__)


def _random_monomial_ideal(ring: PolynomialRing, rng: np.random.Generator, max_degree: int, max_generators: int) -> Ideal:
    generators = []
    for _ in range(int(rng.integers(1, max_generators + 1))):
        degree = int(rng.integers(1, max_degree + 1))
        exponents = rng.multinomial(degree, [1.0 / ring.nvars] * ring.nvars)
        generators.append(ring.monomial([int(e) for e in exponents]))
    return Ideal(ring, generators)


def random_monomial_pairs(
    count: int,
    seed: int = 0,
    max_vars: int = 4,
    max_degree: int = 3,
    max_generators: int = 3,
) -> List[Tuple[Ideal, Ideal]]:
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        ring = PolynomialRing.standard(int(rng.integers(2, max_vars + 1)))
        pairs.append(
            (
                _random_monomial_ideal(ring, rng, max_degree, max_generators),
                _random_monomial_ideal(ring, rng, max_degree, max_generators),
            )
        )
    return pairs


@dataclass
class PairCheck:
    first: List[str]
    second: List[str]
    checked: int
    trivial: bool


def h1_products_vanish(first: Ideal, second: Ideal, settings: Optional[EngineSettings] = None) -> PairCheck:
    """Every H_1 x H_1 product in the Koszul homology of R/IJ is a boundary."""
    algebra = koszul_homology_algebra(first * second, settings)
    report = product_triviality(algebra, settings, degrees=(1, 1))
    check = PairCheck(
        first=[str(g) for g in first.minimal_generators()],
        second=[str(g) for g in second.minimal_generators()],
        checked=report.checked,
        trivial=report.trivial,
    )
    log_event(logger, "h1_products", first=check.first, second=check.second, trivial=check.trivial)
    return check
