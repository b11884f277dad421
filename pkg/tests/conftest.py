from __future__ import annotations

from typing import Callable

import pytest

from src.ingestion.pipelines.parse_job import polynomial_from_text
from src.services.groebner.ideal import Ideal
from src.services.ring.polynomial import Polynomial, PolynomialRing

IdealFactory = Callable[[PolynomialRing, str], Ideal]


@pytest.fixture
def ring3() -> PolynomialRing:
    return PolynomialRing.standard(3)


@pytest.fixture
def ring4() -> PolynomialRing:
    return PolynomialRing.standard(4)


@pytest.fixture
def poly() -> Callable[[PolynomialRing, str], Polynomial]:
    return polynomial_from_text


@pytest.fixture
def ideal() -> IdealFactory:
    """ideal(ring, "x^2, x*y") builds an ideal from comma-separated polynomials."""

    def build(ring: PolynomialRing, text: str) -> Ideal:
        return Ideal(ring, [polynomial_from_text(ring, piece) for piece in text.split(",")])

    return build


@pytest.fixture
def m3(ring3) -> Ideal:
    return Ideal.maximal(ring3)


@pytest.fixture
def m4(ring4) -> Ideal:
    return Ideal.maximal(ring4)
