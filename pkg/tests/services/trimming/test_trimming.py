from __future__ import annotations

import pytest

from src.services.errors import EngineInvariantError, PreconditionError
from src.services.resolutions import free_resolution
from src.services.resolutions.betti import betti_table
from src.services.resolutions.free_resolution import minimal_free_resolution, verify_resolution
from src.services.trimming.criteria import degree3_product_check, nongolod_witness_product, split_injection_check
from src.services.trimming.product_resolution import build_product_resolution, product_ci_resolution
from src.services.trimming.trimming_complex import (
    build_tm_complex,
    build_trimming_complex,
    tm_sigma,
    trimming_summand_classes,
)


def test_trimming_a_single_generator(ring3, ideal):
    I = ideal(ring3, "x^2, x*y, z^3")
    data, T = build_trimming_complex(I, [1])
    assert data.a_ideals[1] == ideal(ring3, "y, z^3")
    assert data.trimmed_ideal == ideal(ring3, "x*y, z^3")
    assert T.ranks() == [1, 2, 1]
    assert T.is_minimal()
    assert verify_resolution(T, data.trimmed_ideal, 6)
    classes = trimming_summand_classes(data)
    assert all(rank >= 0 for rank in classes.values())


def test_trimming_without_minimalization_keeps_the_cone(ring3, ideal):
    I = ideal(ring3, "x^2, x*y, z^3")
    data, T = build_trimming_complex(I, [1], minimal=False)
    assert T.ranks() == data.cone.ranks()
    assert T.compose_check()


def test_trimming_index_errors(ring3, ideal):
    I = ideal(ring3, "x^2, x*y, z^3")
    with pytest.raises(PreconditionError):
        build_trimming_complex(I, [])
    with pytest.raises(PreconditionError):
        build_trimming_complex(I, [4])
    with pytest.raises(PreconditionError):
        build_trimming_complex(I, [1, 2], [ideal(ring3, "x")])


def test_tm_sigma_multiplies_trimmed_generators_by_m(ring3, ideal):
    I = ideal(ring3, "x^2, x*y")
    assert tm_sigma(I, [1]) == ideal(ring3, "x*y, x^3, x^2*z")
    data, T = build_tm_complex(I, [1])
    assert T.compose_check()
    assert betti_table(T).totals() == betti_table(minimal_free_resolution(data.trimmed_ideal)).totals()


def test_cone_resolution_of_squares_times_m(ring3, ideal, m3):
    a = ideal(ring3, "x^2, y^2, z^2")
    built = build_product_resolution(a, m3)
    assert built.minimal_cone
    assert built.resolution.ranks() == [1, 9, 12, 4]
    assert built.resolution.is_minimal()
    expected = betti_table(minimal_free_resolution(a * m3))
    assert betti_table(built.resolution).entries == expected.entries
    assert verify_resolution(built.resolution, a * m3, 7)


def test_cone_is_minimalized_when_a_is_not_in_mI(ring3, ideal):
    a = ideal(ring3, "x^2")
    I = ideal(ring3, "x^2, y^2")
    built = build_product_resolution(a, I)
    assert not built.minimal_cone
    assert built.resolution.ranks() == [1, 2, 1]
    assert product_ci_resolution(a, I).is_minimal()


def test_cone_needs_a_regular_sequence_inside_I(ring3, ideal, m3):
    with pytest.raises(PreconditionError):
        build_product_resolution(ideal(ring3, "x*y, x*z"), m3)
    with pytest.raises(PreconditionError):
        build_product_resolution(ideal(ring3, "x^2, y^2"), ideal(ring3, "x^2, z"))


def test_four_squares_times_m(ring4, ideal, m4):
    built = build_product_resolution(ideal(ring4, "x^2, y^2, z^2, w^2"), m4)
    assert built.resolution.ranks() == [1, 16, 30, 20, 5]
    assert built.minimal_cone


def test_witness_product_of_four_squares(ring4, ideal, m4):
    a = ideal(ring4, "x^2, y^2, z^2, w^2")
    witness = nongolod_witness_product(a, m4, 1, 2, 3, 4)
    assert witness.nontrivial
    assert witness.label == "g_{12}·g_{34}"
    # overlapping pairs multiply to zero in the exterior algebra
    assert not nongolod_witness_product(a, m4, 1, 2, 2, 3).nontrivial


def test_witness_product_preconditions(ring3, ring4, ideal, m3, m4):
    with pytest.raises(PreconditionError):
        nongolod_witness_product(ideal(ring3, "x^2, y^2, z^2"), m3, 1, 2, 3, 1)
    with pytest.raises(PreconditionError):
        nongolod_witness_product(ideal(ring4, "x^2, y^2, z^2, w^2"), m4, 1, 1, 3, 4)
    with pytest.raises(PreconditionError):
        nongolod_witness_product(ideal(ring4, "x, y, z, w"), m4, 1, 2, 3, 4)


def test_split_injection_certifies_linear_ideals(ring3, ideal, m3):
    result = split_injection_check(ideal(ring3, "x, y"), m3)
    assert result.certified
    assert all(rank == expected for rank, expected in result.ranks.values())


def test_split_injection_needs_the_fitting_ideal(ring3, ideal, m3):
    with pytest.raises(PreconditionError):
        split_injection_check(m3 * m3, ideal(ring3, "x"))


def test_degree3_products_for_squares_times_m(ring3, ideal, m3):
    report = degree3_product_check(ideal(ring3, "x^2, y^2, z^2"), m3)
    assert report.branch == "ci"
    assert report.trivial
    assert report.checked > 0


def test_degree3_products_when_the_cone_is_not_minimal(ring3, ideal):
    report = degree3_product_check(ideal(ring3, "x^2"), ideal(ring3, "x^2, y^2"))
    assert report.branch == "non_minimal_cone"
    assert report.trivial


def test_degree3_products_need_three_variables(ring4, ideal, m4):
    with pytest.raises(PreconditionError):
        degree3_product_check(ideal(ring4, "x^2, y^2, z^2, w^2"), m4)


@pytest.fixture
def recorded_defect_checks(monkeypatch):
    calls = []
    real = free_resolution.homology_defects

    def recording(complex_, max_degree, quotient=None):
        calls.append(max_degree)
        return real(complex_, max_degree, quotient)

    monkeypatch.setattr(free_resolution, "homology_defects", recording)
    return calls


def test_constructions_check_positive_homology(ring3, ideal, m3, recorded_defect_checks):
    build_product_resolution(ideal(ring3, "x^2, y^2, z^2"), m3)
    assert len(recorded_defect_checks) == 1
    build_trimming_complex(m3, [1, 2, 3])
    assert len(recorded_defect_checks) == 2


def test_constructions_pass_the_strand_bound_through(ring3, ideal, m3, recorded_defect_checks):
    build_product_resolution(ideal(ring3, "x^2, y^2, z^2"), m3, bound=5)
    build_trimming_complex(ideal(ring3, "x^2, x*y, z^3"), [1], bound=9)
    assert recorded_defect_checks == [5, 9]


def test_positive_homology_is_an_engine_invariant_failure(ring3, ideal, m3, monkeypatch):
    monkeypatch.setattr(free_resolution, "homology_defects", lambda complex_, max_degree, quotient=None: [(1, 3, 1)])
    with pytest.raises(EngineInvariantError):
        build_product_resolution(ideal(ring3, "x^2, y^2, z^2"), m3)
    with pytest.raises(EngineInvariantError):
        build_trimming_complex(ideal(ring3, "x^2, x*y, z^3"), [1])


CORPUS_PAIRS = [
    ("ring3", "x^2, y^2, z^2", "x, y, z"),
    pytest.param("ring4", "x^2, y^2, z^2, w^2", "x, y, z, w", marks=pytest.mark.slow),
    ("ring3", "x, y", "x, y, z"),
    ("ring4", "x, y, z", "x, y, z, w"),
]


@pytest.mark.parametrize("ring_name, a_generators, i_generators", CORPUS_PAIRS)
def test_cone_resolves_every_corpus_product(request, ideal, ring_name, a_generators, i_generators):
    ring = request.getfixturevalue(ring_name)
    a, I = ideal(ring, a_generators), ideal(ring, i_generators)
    built = build_product_resolution(a, I)
    bound = built.resolution.max_generator_degree() + 1
    assert verify_resolution(built.resolution, a * I, bound)
    assert built.resolution.is_minimal()
    assert betti_table(built.resolution).entries == betti_table(minimal_free_resolution(a * I)).entries


def test_degree3_products_count_each_pair_once(ring3, ideal, m3):
    report = degree3_product_check(ideal(ring3, "x^2, y^2, z^2"), m3)
    # F_1 = 3 generators of m against 3 basis elements of K_2
    assert report.checked == 9
    assert report.nontrivial_pairs == []


def test_witness_builds_the_non_golod_verdict(ring4, ideal, m4):
    witness = nongolod_witness_product(ideal(ring4, "x^2, y^2, z^2, w^2"), m4, 1, 2, 3, 4)
    assert witness.evidence == "H_2·H_2 product g_{12}·g_{34}"
    assert witness.verdict().headline() == "NON-GOLOD (witness: H_2·H_2 product g_{12}·g_{34})"
