"""Graded free modules, chain complexes over R and morphisms between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.services.errors import EngineInvariantError, PreconditionError
from src.services.ring.polynomial import Polynomial, PolynomialRing

from .matrix import PolyMatrix

Element = List[Polynomial]


@dataclass(frozen=True)
class GradedFreeModule:
    degrees: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def shifted(self, amount: int) -> "GradedFreeModule":
        return GradedFreeModule(tuple(d + amount for d in self.degrees))

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.degrees + other.degrees)

    def without(self, index: int) -> "GradedFreeModule":
        return GradedFreeModule(self.degrees[:index] + self.degrees[index + 1 :])


def check_homogeneous_map(matrix: PolyMatrix, source: GradedFreeModule, target: GradedFreeModule, label: str) -> None:
    if matrix.shape != (target.rank, source.rank):
        raise PreconditionError(f"{label} has shape {matrix.shape}, expected {(target.rank, source.rank)}")
    for (row, col), value in matrix.items():
        expected = source.degrees[col] - target.degrees[row]
        if not value.is_homogeneous() or value.degree != expected:
            raise PreconditionError(f"{label} entry ({row}, {col}) = {value} should be homogeneous of degree {expected}")


class ChainComplex:
    """A bounded complex C_0 <- C_1 <- ... <- C_L of graded free R-modules.

    ``differentials[i]`` is d_i : C_i -> C_{i-1} for i = 1..L.
    """

    def __init__(
        self,
        ring: PolynomialRing,
        modules: Sequence[GradedFreeModule],
        differentials: Mapping[int, PolyMatrix],
        name: Optional[str] = None,
        validate: bool = True,
    ):
        self.ring = ring
        self.name = name
        mods = list(modules)
        # trailing zero modules carry no information
        while len(mods) > 1 and mods[-1].rank == 0:
            mods.pop()
        self._modules: Tuple[GradedFreeModule, ...] = tuple(mods)
        self._differentials: Dict[int, PolyMatrix] = {}
        for i in range(1, len(mods)):
            matrix = differentials.get(i)
            if matrix is None:
                matrix = PolyMatrix.zeros(ring, mods[i - 1].rank, mods[i].rank)
            if validate:
                check_homogeneous_map(matrix, mods[i], mods[i - 1], f"d_{i}")
            self._differentials[i] = matrix
        # lifting solvers keyed by (homological degree, internal degree)
        self.strand_cache: Dict[object, object] = {}

    @property
    def length(self) -> int:
        return len(self._modules) - 1

    def module(self, i: int) -> GradedFreeModule:
        if 0 <= i < len(self._modules):
            return self._modules[i]
        return GradedFreeModule()

    @property
    def modules(self) -> Tuple[GradedFreeModule, ...]:
        return self._modules

    def rank(self, i: int) -> int:
        return self.module(i).rank

    def ranks(self) -> List[int]:
        return [m.rank for m in self._modules]

    def differential(self, i: int) -> PolyMatrix:
        if i in self._differentials:
            return self._differentials[i]
        return PolyMatrix.zeros(self.ring, self.rank(i - 1), self.rank(i))

    def apply(self, i: int, element: Sequence[Polynomial]) -> Element:
        return self.differential(i).apply(element)

    def zero_element(self, i: int) -> Element:
        return [self.ring.zero() for _ in range(self.rank(i))]

    def basis_element(self, i: int, index: int) -> Element:
        element = self.zero_element(i)
        element[index] = self.ring.one()
        return element

    def compose_check(self) -> bool:
        for i in range(2, self.length + 1):
            if not (self.differential(i - 1) @ self.differential(i)).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        return not any(self.differential(i).has_unit_entry() for i in range(1, self.length + 1))

    def max_generator_degree(self) -> int:
        return max((d for m in self._modules for d in m.degrees), default=0)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"ChainComplex({label}ranks={self.ranks()})"


def compose_check(complex_: ChainComplex) -> bool:
    return complex_.compose_check()


def require_complex(complex_: ChainComplex) -> None:
    if not complex_.compose_check():
        raise EngineInvariantError(f"{complex_!r} fails d*d = 0")


class ComplexMorphism:
    """Degree-preserving chain map with maps[i] : source_i -> target_{i + shift}."""

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        maps: Mapping[int, PolyMatrix],
        shift: int = 0,
    ):
        self.source = source
        self.target = target
        self.shift = shift
        self._maps: Dict[int, PolyMatrix] = dict(maps)
        for i, matrix in self._maps.items():
            check_homogeneous_map(matrix, source.module(i), target.module(i + shift), f"map_{i}")

    def map(self, i: int) -> PolyMatrix:
        if i in self._maps:
            return self._maps[i]
        return PolyMatrix.zeros(self.source.ring, self.target.rank(i + self.shift), self.source.rank(i))

    def is_chain_map(self) -> bool:
        """Check ``d^T phi_i == phi_{i-1} d^S`` in every degree."""
        for i in range(1, self.source.length + 1):
            left = self.target.differential(i + self.shift) @ self.map(i)
            right = self.map(i - 1) @ self.source.differential(i)
            if left != right:
                return False
        return True
