from __future__ import annotations

import numpy as np
import pytest

from src.services.errors import PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.module import ModulePresentation, syzygies
from src.services.groebner.operations import fitting_ideal, ideal_ops, is_complete_intersection, is_regular_sequence
from src.services.groebner.quotient import QuotientStrands
from src.services.ring.linalg import rank_mod
from src.services.ring.monomials import monomials_of_degree

P = 32003


def _strand_contains(ideal: Ideal, f) -> bool:
    """Brute-force membership: f in the k-span of m*g in degree deg f."""
    ring = ideal.ring
    degree = f.degree
    basis = monomials_of_degree(ring.nvars, degree)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for g in ideal.generators:
        if g.degree > degree:
            continue
        for m in monomials_of_degree(ring.nvars, degree - g.degree):
            product = g * ring.monomial(m)
            row = np.zeros(len(basis), dtype=np.int64)
            for monomial, c in product.items():
                row[index[monomial]] = c
            rows.append(row)
    target = np.zeros(len(basis), dtype=np.int64)
    for monomial, c in f.items():
        target[index[monomial]] = c
    if not rows:
        return not np.any(target)
    span = np.array(rows)
    return rank_mod(span, P) == rank_mod(np.vstack([span, target]), P)


def test_membership_agrees_with_strand_linear_algebra(ring3, ideal):
    J = ideal(ring3, "x^2 - y*z, x*y, z^3")
    rng = np.random.default_rng(3)
    for degree in (2, 3, 4):
        basis = monomials_of_degree(3, degree)
        for _ in range(6):
            coefficients = rng.integers(0, 3, size=len(basis))
            f = sum((ring3.monomial(m, int(c)) for m, c in zip(basis, coefficients)), ring3.zero())
            if f.is_zero():
                continue
            assert J.contains(f) == _strand_contains(J, f)


def test_normal_form_cofactors_reconstruct(ring3, ideal, poly):
    J = ideal(ring3, "x^2, x*y - z^2, y^3")
    f = poly(ring3, "x^3*y + 2*x*y^3 - x*y*z^2 + z^4")
    assert J.contains(f)
    cofactors = J.cofactors(f)
    rebuilt = sum((c * g for c, g in zip(cofactors, J.minimal_generators())), ring3.zero())
    assert rebuilt == f


def test_cofactors_of_non_member_fail(ring3, ideal, poly):
    with pytest.raises(PreconditionError):
        ideal(ring3, "x^2, y^2").cofactors(poly(ring3, "x*y"))


def test_minimal_generators_drop_redundancy(ring3, ideal):
    J = ideal(ring3, "x^2, x*y, x^2*y, x^3 + x*y*z")
    assert [str(g) for g in J.minimal_generators()] == ["x^2", "x*y"]
    assert J.mu == 2


def test_ideal_operations(ring3, ideal, m3):
    I = ideal(ring3, "x, y")
    product = ideal_ops(I, m3, "product")
    assert product == ideal(ring3, "x^2, x*y, x*z, y^2, y*z")
    assert ideal_ops(product, I, "containment")
    assert not ideal_ops(I, product, "containment")
    assert ideal_ops(I, ideal(ring3, "z"), "sum") == m3
    assert not Ideal(ring3, [ring3.one()]).is_proper()


def test_regular_sequences_and_complete_intersections(ring3, ideal, poly):
    assert is_regular_sequence(ring3, [poly(ring3, "x^2"), poly(ring3, "y^2"), poly(ring3, "z^2")])
    assert not is_regular_sequence(ring3, [poly(ring3, "x*y"), poly(ring3, "x*z")])
    assert is_complete_intersection(ideal(ring3, "x^2 - y*z, z^2"))
    assert not is_complete_intersection(ideal(ring3, "x^2, x*y, y^2"))


def test_fitting_ideal_of_two_by_three_minors(ring3, ideal, m3):
    # the syzygies of (x^2, xy, y^2) have linear entries x, y
    assert fitting_ideal(ideal(ring3, "x^2, x*y, y^2")) == ideal(ring3, "x, y")
    assert fitting_ideal(m3) == m3


def test_syzygies_of_three_monomials(ring3, ideal):
    J = ideal(ring3, "x^2, x*y, y^2")
    kernel = syzygies(ModulePresentation.from_row(ring3, J.minimal_generators()))
    assert kernel.ncols == 2
    assert sorted(kernel.column_degrees) == [3, 3]
    for column in kernel.columns:
        assert sum((c * g for c, g in zip(column, J.minimal_generators())), ring3.zero()).is_zero()


def test_quotient_strands_hilbert_function(ring3, m3):
    strands = QuotientStrands(m3 * m3)
    assert [strands.dimension(d) for d in range(4)] == [1, 3, 0, 0]


def test_normal_form_tracks_groebner_cofactors(ring3, ideal, poly):
    J = ideal(ring3, "x^2, x*y")
    assert J.normal_form(poly(ring3, "x^2*y"))[0].is_zero()

    f = poly(ring3, "x^3 + x*y*z + y^3")
    remainder, quotients = J.normal_form(f, track_cofactors=True)
    assert remainder == poly(ring3, "y^3")
    rebuilt = sum((q * g for q, g in zip(quotients, J.groebner_basis())), remainder)
    assert rebuilt == f
