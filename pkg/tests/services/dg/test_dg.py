from __future__ import annotations

import pytest

from src.services.complexes.koszul import koszul_complex
from src.services.dg.comparison import comparison_maps, verify_phi_chain_map
from src.services.dg.koszul_algebra import KoszulAlgebra, koszul_product
from src.services.dg.lifting import lift_through
from src.services.dg.products import dg_product_length3, exterior_product, resolution_with_product
from src.services.errors import LiftError, PreconditionError
from src.services.resolutions.free_resolution import minimal_free_resolution


def test_wedge_products_are_anticommutative(ring3):
    algebra = KoszulAlgebra(ring3)
    e0, e1 = algebra.generator((0,)), algebra.generator((1,))
    assert algebra.multiply(e0, 1, e1, 1) == algebra.generator((0, 1))
    assert algebra.multiply(e1, 1, e0, 1) == [-v for v in algebra.generator((0, 1))]
    assert all(v.is_zero() for v in algebra.multiply(e0, 1, e0, 1))


def test_koszul_algebra_satisfies_leibniz(ring3, poly):
    algebra = KoszulAlgebra(ring3, [poly(ring3, "x^2"), poly(ring3, "y^2"), poly(ring3, "z^2")])
    left = [poly(ring3, "y"), poly(ring3, "x"), ring3.zero()]
    right = [ring3.zero(), poly(ring3, "z"), poly(ring3, "x")]
    assert all(v.is_zero() for v in algebra.leibniz_residual(left, 1, right, 1))


def test_exterior_product_passes_axiom_checks(ring3):
    product = exterior_product(KoszulAlgebra(ring3))
    assert product.axiom_failures() == []
    product.check_axioms()


@pytest.mark.parametrize("generators", ["x^2, x*y, y^2, x*z, y*z, z^2", "x^2, x*y, z^3", "x^2, x*y, x*z, y^3"])
def test_lifted_products_on_length_three_resolutions(ring3, ideal, generators):
    F = minimal_free_resolution(ideal(ring3, generators))
    product = dg_product_length3(F)
    assert product.axiom_failures() == []


def test_lifted_products_need_short_resolutions(m4):
    with pytest.raises(PreconditionError):
        dg_product_length3(minimal_free_resolution(m4 * m4))


def test_complete_intersections_use_the_exterior_product(ring3, ideal):
    product = resolution_with_product(ideal(ring3, "x^2, y^2"))
    assert product.resolution.ranks() == [1, 2, 1]
    assert product.name.startswith("wedge")


def test_lift_through_a_koszul_differential(ring3, poly):
    K = koszul_complex(ring3)
    target = [poly(ring3, "x*y"), ring3.zero(), ring3.zero()]
    lifted = lift_through(K, target, 2)
    assert K.apply(2, lifted) == target


def test_lift_of_a_non_cycle_fails(ring3, poly):
    K = koszul_complex(ring3)
    with pytest.raises(LiftError):
        lift_through(K, [poly(ring3, "y"), ring3.zero(), ring3.zero()], 2)


def test_lift_checks_target_length(ring3, poly):
    with pytest.raises(PreconditionError):
        lift_through(koszul_complex(ring3), [poly(ring3, "x")], 2)


@pytest.mark.parametrize(
    "ring_name, a_generators, i_generators",
    [
        ("ring3", "x^2, y^2, z^2", "x, y, z"),
        ("ring3", "x^2, y^2, z^2", "x^2, x*y, y^2, x*z, y*z, z^2"),
        ("ring3", "x^3, z^3", "x^2, x*y, z^3"),
        ("ring4", "x^2, y^2, z^2, w^2", "x, y, z, w"),
        ("ring3", "x, y", "x, y, z"),
        ("ring4", "x, y, z", "x, y, z, w"),
    ],
)
def test_comparison_maps_are_chain_maps(request, ideal, ring_name, a_generators, i_generators):
    ring = request.getfixturevalue(ring_name)
    I = ideal(ring, i_generators)
    maps = comparison_maps(ideal(ring, a_generators), I, resolution_with_product(I))
    assert verify_phi_chain_map(maps)
    assert maps.psi().is_chain_map()


def test_comparison_maps_need_containment(ring3, ideal, m3):
    I = m3 * m3
    with pytest.raises(PreconditionError):
        comparison_maps(ideal(ring3, "x"), I, resolution_with_product(I))


def test_koszul_product_of_degree_one_and_two(ring3):
    algebra = KoszulAlgebra(ring3)
    top = koszul_product(algebra, algebra.generator((2,)), 1, algebra.generator((0, 1)), 2)
    assert top == algebra.generator((0, 1, 2))


def test_phi_follows_the_signed_sum_on_basis_elements(ring3, ideal, poly, m3):
    maps = comparison_maps(ideal(ring3, "x^2, y^2, z^2"), m3, resolution_with_product(m3))
    x, y, z = (poly(ring3, v) for v in "xyz")
    zero = ring3.zero()
    c = maps.size

    # L_1(f_r) = x_r e_r and L_2(f_rs) = x_r x_s e_rs
    assert maps.L[1].column(0) == [x, zero, zero]
    assert maps.L[2].column(0) == [x * y, zero, zero]

    # Phi_2(f_01) = -L_1(f_1) (x) f_0 + L_1(f_0) (x) f_1, row index f * c + r
    expected = [zero] * (3 * c)
    expected[1 * c + 0] = -y
    expected[0 * c + 1] = x
    assert maps.Phi[2].column(0) == expected

    # Phi_3(f_012) = L_2(f_12) (x) f_0 - L_2(f_02) (x) f_1 + L_2(f_01) (x) f_2
    expected = [zero] * (3 * c)
    expected[2 * c + 0] = y * z
    expected[1 * c + 1] = -(x * z)
    expected[0 * c + 2] = x * y
    assert maps.Phi[3].column(0) == expected
