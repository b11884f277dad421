from __future__ import annotations

import numpy as np
import pytest

from src.services.errors import PreconditionError, RingMismatchError
from src.services.ring.field import PrimeField
from src.services.ring.linalg import EchelonBasis, LinearSolver, matmul_mod, nullspace_mod, rank_mod
from src.services.ring.monomials import monomial_compare, monomials_of_degree
from src.services.ring.polynomial import PolynomialRing, poly_arith, total_degree

P = 32003


def test_field_inverses_on_samples():
    field = PrimeField(P)
    rng = np.random.default_rng(7)
    for value in rng.integers(1, P, size=50):
        assert field.normalize(int(value) * field.inverse(int(value))) == 1


def test_field_rejects_composite_characteristic():
    with pytest.raises(PreconditionError):
        PrimeField(32004)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inverse(14)


def test_ring_axioms_on_random_triples(ring3):
    rng = np.random.default_rng(11)

    def random_form(degree):
        return sum(
            (ring3.monomial(m, int(rng.integers(0, P))) for m in monomials_of_degree(3, degree)), ring3.zero()
        )

    for _ in range(5):
        f, g, h = random_form(2), random_form(1), random_form(2)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + g - g == f


def test_printing_uses_symmetric_coefficients(ring3, poly):
    f = poly(ring3, "x^2 - 3*x*y + z^2")
    assert str(f) == "x^2 - 3*x*y + z^2"
    assert str(ring3.zero()) == "0"


def test_homogeneity_and_degree(ring3, poly):
    assert poly(ring3, "x*y + z^2").degree == 2
    mixed = ring3.monomial((1, 0, 0)) + ring3.monomial((0, 2, 0))
    assert not mixed.is_homogeneous()
    with pytest.raises(PreconditionError):
        mixed.degree


def test_mixing_rings_is_refused(ring3, ring4):
    with pytest.raises(RingMismatchError):
        ring3.gen(0) + ring4.gen(0)


def test_grevlex_and_lex_disagree_on_classic_pair():
    # x*z^2 vs y^3: lex puts x first, grevlex compares the last variable
    a, b = (1, 0, 2), (0, 3, 0)
    assert monomial_compare(a, b, "lex") > 0
    assert monomial_compare(a, b, "grevlex") < 0


def test_rank_and_nullspace():
    matrix = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    assert rank_mod(matrix, P) == 2
    kernel = nullspace_mod(matrix, P)
    assert kernel.shape == (1, 3)
    assert not np.any(matrix @ kernel.T % P)


def test_linear_solver_consistency():
    matrix = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
    solver = LinearSolver(matrix, P)
    x = solver.solve(np.array([2, 3, 5]))
    assert x is not None and list(x) == [2, 3]
    assert solver.solve(np.array([2, 3, 4])) is None


def test_echelon_basis_tracks_span():
    basis = EchelonBasis.from_matrix(np.array([[1, 1, 0]]), P)
    assert basis.extend([np.array([2, 2, 0]), np.array([0, 1, 1]), np.array([1, 2, 1])]) == [1]
    assert len(basis) == 2
    assert not np.any(basis.reduce(np.array([1, 0, -1])))


def test_poly_arith_dispatch(ring3, poly):
    f, g = poly(ring3, "x^2 + y*z"), poly(ring3, "x - y")
    assert poly_arith(f, g, "add") == f + g
    assert poly_arith(f, g, "mul") == poly(ring3, "x^3 - x^2*y + x*y*z - y^2*z")
    assert poly_arith(f, 2, "scalar") == poly(ring3, "2*x^2 + 2*y*z")
    with pytest.raises(PreconditionError):
        poly_arith(f, g, "scalar")


def test_total_degree_of_zero_is_minus_infinity(ring3, poly):
    assert total_degree(poly(ring3, "x^2*y + z^3")) == 3
    assert total_degree(ring3.zero()) == float("-inf")


LARGE_P = 2**31 - 1


def _exact_product(left, right, p):
    return [[sum(int(a) * int(b) for a, b in zip(row, column)) % p for column in zip(*right)] for row in left]


def test_matmul_mod_is_exact_near_two_to_the_31():
    rng = np.random.default_rng(3)
    left = rng.integers(LARGE_P - 1000, LARGE_P, size=(4, 8))
    right = rng.integers(LARGE_P - 1000, LARGE_P, size=(8, 3))
    assert matmul_mod(left, right, LARGE_P).tolist() == _exact_product(left.tolist(), right.tolist(), LARGE_P)


def test_linear_solver_at_large_characteristic():
    rng = np.random.default_rng(5)
    n = 8
    upper = np.triu(rng.integers(0, LARGE_P, size=(n, n)), 1) + np.eye(n, dtype=np.int64)
    lower = np.tril(rng.integers(0, LARGE_P, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
    A = np.array(_exact_product(upper.tolist(), lower.tolist(), LARGE_P), dtype=np.int64)
    b = rng.integers(0, LARGE_P, size=n)

    solver = LinearSolver(A, LARGE_P)
    x = solver.solve(b)

    assert solver.rank == n
    assert [row[0] for row in _exact_product(A.tolist(), [[int(v)] for v in x], LARGE_P)] == b.tolist()


def test_field_rejects_characteristic_of_two_to_the_31_or_more():
    PrimeField(LARGE_P)
    with pytest.raises(PreconditionError):
        PrimeField(2**31 + 11)
