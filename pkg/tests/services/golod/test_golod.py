from __future__ import annotations

import pytest

from src.services.errors import PreconditionError
from src.services.golod.homology_algebra import koszul_homology_algebra, product_triviality
from src.services.golod.massey import massey_from_nu
from src.services.golod.random_pairs import h1_products_vanish, random_monomial_pairs
from src.services.golod.tor import classify, tor_invariants
from src.services.golod.verdict import golod_verdict
from src.services.groebner.ideal import Ideal
from src.services.ring.polynomial import PolynomialRing
from src.services.settings import EngineSettings
from src.services.trimming.criteria import nongolod_witness_product


@pytest.fixture
def ring2() -> PolynomialRing:
    return PolynomialRing.standard(2)


def test_koszul_homology_of_a_complete_intersection(ring3, ideal):
    algebra = koszul_homology_algebra(ideal(ring3, "x^2, y^2, z^2"))
    assert algebra.dimensions() == {1: 3, 2: 3, 3: 1}
    report = product_triviality(algebra)
    assert not report.trivial
    assert report.nonzero[0].label.startswith("H_1")


def test_products_vanish_for_m_squared(m3):
    report = product_triviality(koszul_homology_algebra(m3 * m3))
    assert report.trivial
    assert report.checked > 0


def test_products_restricted_to_degrees(ring3, ideal):
    algebra = koszul_homology_algebra(ideal(ring3, "x^2, y^2, z^2"))
    report = product_triviality(algebra, degrees=(1, 2))
    assert all(sorted((entry.left[0], entry.right[0])) == [1, 2] for entry in report.nonzero)
    assert not report.trivial


def test_tor_classes(ring3, ideal, m3):
    assert tor_invariants(ideal(ring3, "x^2, y^2, z^2")).label == "C(3)"
    assert tor_invariants(m3 * m3).label == "trivial"
    with pytest.raises(PreconditionError):
        tor_invariants(ideal(ring3, "x^2"))


def test_classify():
    assert classify(0, 0, 0) == "trivial"
    assert classify(3, 1, 3) == "C(3)"
    assert classify(0, 1, 2) == "G(r)"
    assert classify(0, 2, 2) == "H(0,q)"
    assert classify(1, 0, 0) == "unclassified"


def test_massey_operation_on_a_product_of_variables(ring2, ideal):
    certificate = massey_from_nu(ideal(ring2, "x"), ideal(ring2, "y"))
    assert certificate.certified
    assert certificate.verified_condition_star
    assert certificate.depth_checked == 3


def test_massey_preconditions(ring2, ideal):
    with pytest.raises(PreconditionError):
        massey_from_nu(ideal(ring2, "x"), ideal(ring2, "y"), depth=1)
    with pytest.raises(PreconditionError):
        massey_from_nu(Ideal(ring2, [ring2.one()]), ideal(ring2, "y"))


def test_verdict_for_m_squared(m3):
    report = golod_verdict(m3 * m3, order=4)
    assert report.verdict.kind == "golod_evidence_up_to"
    assert report.verdict.headline() == "GOLOD-CONSISTENT (Serre equality to N=4)"
    assert report.poincare.betti_of_k == [1, 3, 9, 27, 81]
    assert report.tor["label"] == "trivial"
    assert report.codepth == 3


def test_verdict_for_a_hypersurface(ring3, ideal):
    report = golod_verdict(ideal(ring3, "x^2"), order=4)
    assert report.verdict.kind == "golod_certified"
    assert report.verdict.headline() == "GOLOD (certified: hypersurface)"


def test_verdict_for_codepth_two(ring3, ideal):
    report = golod_verdict(ideal(ring3, "x^2, x*y, y^2"), order=4)
    assert [c.kind for c in report.verdict.certificates] == ["codepth_two"]
    assert report.verdict.headline() == "GOLOD (certified: codepth-two)"


def test_verdict_for_a_complete_intersection(ring3, ideal):
    report = golod_verdict(ideal(ring3, "x^2, y^2"), order=4)
    assert report.verdict.kind == "non_golod"
    assert report.verdict.headline().startswith("NON-GOLOD (witness: H_1·H_1 product")
    assert not report.products.trivial


def test_verdict_for_a_compressed_gorenstein_ring(ring3, ideal):
    report = golod_verdict(ideal(ring3, "x*y, x*z, y*z, x^2 - y^2, x^2 - z^2"), order=4)
    assert report.verdict.kind == "non_golod"


def test_linear_forms_keep_products_out_of_the_verdict(ring3, ideal):
    report = golod_verdict(ideal(ring3, "x, y^2"), order=4)
    assert not report.products.used_for_verdict
    assert report.tor is None


def test_verdict_with_split_factors(ring3, ideal, m3):
    I = ideal(ring3, "x, y")
    report = golod_verdict(I * m3, order=5, factors=(I, m3))
    assert report.verdict.kind == "golod_certified"
    assert "split_injection" in [c.kind for c in report.verdict.certificates]


def test_verdict_preconditions(ring3, ideal, m3):
    with pytest.raises(PreconditionError):
        golod_verdict(Ideal(ring3, [ring3.one()]))
    with pytest.raises(PreconditionError):
        golod_verdict(m3 * m3, order=3, factors=(m3, ideal(ring3, "x")))


@pytest.mark.slow
def test_verdict_for_four_squares_times_m(ring4, ideal, m4):
    a = ideal(ring4, "x^2, y^2, z^2, w^2")
    witness = nongolod_witness_product(a, m4, 1, 2, 3, 4)
    report = golod_verdict(a * m4, order=3, factors=(a, m4), witness=witness)
    assert report.verdict.headline() == "NON-GOLOD (witness: H_2·H_2 product g_{12}·g_{34})"


def test_random_pairs_are_seeded():
    first = random_monomial_pairs(5, seed=7)
    second = random_monomial_pairs(5, seed=7)
    assert [(repr(a), repr(b)) for a, b in first] == [(repr(a), repr(b)) for a, b in second]
    assert [a.ring.nvars for a, _ in first] == [a.ring.nvars for a, _ in second]
    assert all(2 <= a.ring.nvars <= 4 for a, _ in first)


def test_h1_products_of_a_product_of_variables(ring2, ideal):
    check = h1_products_vanish(ideal(ring2, "x"), ideal(ring2, "y"))
    assert check.trivial
    assert check.first == ["x"]


@pytest.mark.slow
def test_h1_products_vanish_for_random_pairs():
    settings = EngineSettings()
    for first, second in random_monomial_pairs(20, seed=0):
        assert h1_products_vanish(first, second, settings).trivial
