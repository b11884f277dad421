"""Comparison maps from the Koszul complex of a to a resolution of R/I.

L_1 sends f_r to the cofactors of a_r in the generators of I, L_i multiplies
L_1 images left to right, and Phi_i : K_i -> F_{i-1} (x) K_1 is

    Phi_i(f_sigma) = sum_{r in sigma} sgn(r) L_{i-1}(f_{sigma - r}) (x) f_r

with sgn(r) = (-1)^(|sigma| - 1 - position of r in sigma).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from src.services.complexes.chain_complex import ChainComplex, ComplexMorphism, Element, GradedFreeModule
from src.services.complexes.matrix import PolyMatrix
from src.services.errors import PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event

from .koszul_algebra import KoszulAlgebra
from .products import DGProduct

logger = get_logger(__name__)


def tensor_with_identity(matrix: PolyMatrix, size: int) -> PolyMatrix:
    """matrix (x) 1 on a free module of rank ``size``, left index major."""
    entries = {}
    for (row, col), value in matrix.items():
        for r in range(size):
            entries[(row * size + r, col * size + r)] = value
    return PolyMatrix(matrix.ring, matrix.nrows * size, matrix.ncols * size, entries)


@dataclass
class ComparisonMaps:
    a_ideal: Ideal
    ideal: Ideal
    product: DGProduct
    koszul: KoszulAlgebra
    L: Dict[int, PolyMatrix] = field(default_factory=dict)
    Phi: Dict[int, PolyMatrix] = field(default_factory=dict)

    @property
    def resolution(self) -> ChainComplex:
        return self.product.resolution

    @property
    def size(self) -> int:
        return self.koszul.size

    def tensor_module(self, j: int) -> GradedFreeModule:
        """F_j (x) K_1 with generator degrees deg e_f + deg a_r."""
        forms = self.koszul.forms
        return GradedFreeModule(tuple(d + g.degree for d in self.resolution.module(j).degrees for g in forms))

    def tensor_complex(self) -> ChainComplex:
        """Y_0 = R, Y_j = F_j (x) K_1, with e_f (x) g_r -> -phi_f a_r in degree 1."""
        ring = self.resolution.ring
        F = self.resolution
        c = self.size
        modules = [GradedFreeModule((0,))] + [self.tensor_module(j) for j in range(1, F.length + 1)]
        first = {}
        for f in range(F.rank(1)):
            for r, form in enumerate(self.koszul.forms):
                value = -(F.differential(1)[0, f] * form)
                if not value.is_zero():
                    first[(0, f * c + r)] = value
        differentials = {1: PolyMatrix(ring, 1, F.rank(1) * c, first)}
        for j in range(2, F.length + 1):
            differentials[j] = tensor_with_identity(F.differential(j), c)
        return ChainComplex(ring, modules, differentials, name=f"{F.name}(x)K_1")

    def shifted_koszul(self) -> ChainComplex:
        """X_0 = 0 and X_j = K_{j+1}."""
        K = self.koszul.complex
        modules = [GradedFreeModule()] + [K.module(j + 1) for j in range(1, self.size)]
        differentials = {j: K.differential(j + 1) for j in range(2, self.size)}
        return ChainComplex(K.ring, modules, differentials, name=f"{K.name}[>=2]")

    def psi(self) -> ComplexMorphism:
        """psi_j = Phi_{j+1} : K_{j+1} -> F_j (x) K_1."""
        source = self.shifted_koszul()
        target = self.tensor_complex()
        maps = {j: self.Phi[j + 1] for j in range(1, source.length + 1) if j + 1 in self.Phi}
        return ComplexMorphism(source, target, maps)


def _l_images(maps: ComparisonMaps) -> Dict[int, List[Element]]:
    F = maps.resolution
    koszul = maps.koszul
    images: Dict[int, List[Element]] = {1: [list(maps.L[1].column(r)) for r in range(maps.size)]}
    for i in range(2, maps.size + 1):
        column_images = []
        for sigma in koszul.basis(i):
            if i > F.length:
                column_images.append(F.zero_element(i))
                continue
            value = images[1][sigma[0]]
            for step, r in enumerate(sigma[1:], start=1):
                value = maps.product.multiply(value, step, images[1][r], 1)
            column_images.append(value)
        images[i] = column_images
    return images


def comparison_maps(a_ideal: Ideal, ideal: Ideal, product: DGProduct) -> ComparisonMaps:
    ring = ideal.ring
    if not ideal.contains_ideal(a_ideal):
        raise PreconditionError(f"{a_ideal!r} is not contained in {ideal!r}")
    F = product.resolution
    koszul = KoszulAlgebra(ring, a_ideal.minimal_generators(), name=f"K({a_ideal.name or 'a'})")
    maps = ComparisonMaps(a_ideal, ideal, product, koszul)
    c = koszul.size

    cofactors = [ideal.cofactors(form) for form in koszul.forms]
    maps.L[1] = PolyMatrix.from_columns(ring, F.rank(1), cofactors)
    images = _l_images(maps)
    for i in range(2, c + 1):
        maps.L[i] = PolyMatrix.from_columns(ring, F.rank(i), images[i])

    for i in range(2, c + 1):
        rows = F.rank(i - 1) * c
        columns: List[Element] = []
        for sigma in koszul.basis(i):
            column = [ring.zero() for _ in range(rows)]
            for position, r in enumerate(sigma):
                rest = sigma[:position] + sigma[position + 1 :]
                image = images[i - 1][koszul.index_of(rest)]
                negative = (len(sigma) - 1 - position) % 2 == 1
                for f, value in enumerate(image):
                    if value.is_zero():
                        continue
                    k = f * c + r
                    column[k] = column[k] - value if negative else column[k] + value
            columns.append(column)
        maps.Phi[i] = PolyMatrix.from_columns(ring, rows, columns)
    log_event(logger, "comparison_maps", generators=c, ranks=F.ranks())
    return maps


def verify_phi_chain_map(maps: ComparisonMaps) -> bool:
    """d^F_1 L_1 = d^K_1 and (d^F_{i-1} (x) 1) Phi_i = Phi_{i-1} d^K_i for i >= 2."""
    F = maps.resolution
    K = maps.koszul.complex
    c = maps.size
    if F.differential(1) @ maps.L[1] != K.differential(1):
        return False
    for i in range(2, c + 1):
        if i - 1 > F.length:
            break
        if i == 2:
            # F_0 (x) K_1 = K_1 and Phi_1 is the identity
            left = tensor_with_identity(F.differential(1), c) @ maps.Phi[2]
            right = K.differential(2)
        else:
            left = tensor_with_identity(F.differential(i - 1), c) @ maps.Phi[i]
            right = maps.Phi[i - 1] @ K.differential(i)
        if left != right:
            return False
    log_event(logger, "phi_chain_map_verified", generators=c)
    return True
