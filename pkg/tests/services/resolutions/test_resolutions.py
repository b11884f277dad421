from __future__ import annotations

import pytest

from src.services.errors import PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.resolutions.betti import betti_table, hilbert_from_betti, hilbert_function
from src.services.resolutions.free_resolution import minimal_free_resolution, resolves_quotient, verify_resolution
from src.services.resolutions.poincare import (
    codepth,
    embedding_dimension,
    poincare_data,
    resolution_of_k_over_quotient,
    resolve_residue_field,
    serre_bound,
)


def test_resolution_of_the_maximal_ideal_is_koszul(m3):
    F = minimal_free_resolution(m3)
    assert F.ranks() == [1, 3, 3, 1]
    assert F.is_minimal()
    assert resolves_quotient(F, m3)
    assert verify_resolution(F, m3, max_degree=8)


def test_resolution_of_m_squared(m3):
    J = m3 * m3
    F = minimal_free_resolution(J)
    assert F.ranks() == [1, 6, 8, 3]
    table = betti_table(F)
    assert table.degrees(1) == [2] * 6
    assert table[(2, 3)] == 8
    assert table[(3, 4)] == 3
    assert table.projective_dimension == 3
    assert table.totals() == [1, 6, 8, 3]
    assert verify_resolution(F, J)


def test_betti_table_rendering(m3):
    table = betti_table(minimal_free_resolution(m3 * m3))
    frame = table.to_frame()
    assert list(frame.columns) == [0, 1, 2, 3]
    assert frame.loc[1, 1] == 6
    assert "total" in table.render()
    assert table.as_rows()[0] == {"homological_degree": 0, "internal_degree": 0, "rank": 1}


def test_hilbert_function_matches_betti_numbers(ring3, ideal):
    J = ideal(ring3, "x^2, x*y, z^3")
    table = betti_table(minimal_free_resolution(J))
    for degree in range(8):
        assert hilbert_function(J, degree) == hilbert_from_betti(table, degree, 3)


def test_mixed_degree_resolution_is_exact(ring3, ideal):
    J = ideal(ring3, "x^2 - y*z, x*y, z^3")
    F = minimal_free_resolution(J)
    assert F.compose_check()
    assert verify_resolution(F, J, max_degree=8)


def test_serre_bound_and_residue_field_of_m_squared(m3):
    J = m3 * m3
    assert serre_bound(J, 4) == [1, 3, 9, 27, 81]
    data = poincare_data(J, 4)
    assert data.betti_of_k == [1, 3, 9, 27, 81]
    assert data.serre_equality
    assert data.codepth == 3
    assert data.embedding_dimension == 3
    assert data.reached_order == 4


def test_hypersurface_poincare_series(ring3, ideal):
    J = ideal(ring3, "x^2")
    assert codepth(J) == 1
    assert resolution_of_k_over_quotient(J, 4) == [1, 3, 4, 4, 4]
    assert serre_bound(J, 4) == [1, 3, 4, 4, 4]


def test_complete_intersection_has_a_serre_deficit(ring3, ideal):
    data = poincare_data(ideal(ring3, "x^2, y^2"), 4)
    # (1 + t)^3 / (1 - t^2)^2 against (1 + t)^3 / (1 - 2t^2 - t^3)
    assert data.betti_of_k == [1, 3, 5, 7, 9]
    assert data.deficits == [3, 4]
    assert not data.serre_equality


@pytest.mark.parametrize("generators", ["x^2, x*y, y^2, z^2", "x^2, x*y, z^3"])
def test_strand_and_syzygy_engines_agree(ring3, ideal, generators):
    J = ideal(ring3, generators)
    strand = resolve_residue_field(J, 3, method="strand").betti()
    syzygy = resolve_residue_field(J, 3, method="syzygy").betti()
    assert strand == syzygy


def test_linear_generators_lower_the_embedding_dimension(ring3, ideal):
    J = ideal(ring3, "x, y^2")
    assert embedding_dimension(J) == 2
    assert codepth(J) == 1


def test_residue_field_preconditions(ring3, ideal):
    with pytest.raises(PreconditionError):
        resolve_residue_field(Ideal(ring3, [ring3.one()]), 3)
    with pytest.raises(PreconditionError):
        resolve_residue_field(Ideal.zero(ring3), 3)
    with pytest.raises(PreconditionError):
        resolve_residue_field(ideal(ring3, "x^2"), -1)
