"""Graded polynomial ring over a prime field and its elements."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Literal, Mapping, Optional, Tuple, Union

from src.services.errors import PreconditionError, RingMismatchError

from .field import PrimeField
from .monomials import (
    Monomial,
    MonomialOrder,
    monomial_degree,
    monomial_mul,
    monomials_of_degree,
    order_key,
)

MINUS_INFINITY = float("-inf")


@dataclass(frozen=True)
class PolynomialRing:
    variables: Tuple[str, ...]
    field: PrimeField = PrimeField()
    order: MonomialOrder = "grevlex"

    def __post_init__(self) -> None:
        if not self.variables:
            raise PreconditionError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError("variable names must be distinct")
        if self.order not in ("grevlex", "lex"):
            raise PreconditionError(f"unsupported monomial order '{self.order}'")

    @classmethod
    def standard(cls, nvars: int, characteristic: int = 32003, order: MonomialOrder = "grevlex") -> "PolynomialRing":
        names = ("x", "y", "z", "w") if nvars <= 4 else tuple(f"x{i + 1}" for i in range(nvars))
        return cls(tuple(names[:nvars]), PrimeField(characteristic), order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return self.field.characteristic

    def key(self, monomial: Monomial) -> Tuple[int, ...]:
        return order_key(self.order)(monomial)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, normalized=True)

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: value})

    def monomial(self, exponents: Iterable[int], coefficient: int = 1) -> "Polynomial":
        exps = tuple(exponents)
        if len(exps) != self.nvars:
            raise PreconditionError("exponent vector length differs from the variable count")
        return Polynomial(self, {exps: coefficient})

    def gen(self, index: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[index] = 1
        return Polynomial(self, {tuple(exps): 1}, normalized=True)

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def basis(self, degree: int) -> List[Monomial]:
        return monomials_of_degree(self.nvars, degree, self.order)

    def variable_index(self, name: str) -> int:
        return self.variables.index(name)


class Polynomial:
    """Immutable polynomial stored as a map from exponent tuples to nonzero residues."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Optional[Mapping[Monomial, int]] = None, *, normalized: bool = False):
        self.ring = ring
        if normalized:
            self._terms: Dict[Monomial, int] = dict(terms or {})
        else:
            p = ring.p
            cleaned: Dict[Monomial, int] = {}
            for monomial, coefficient in (terms or {}).items():
                value = coefficient % p
                if value:
                    cleaned[monomial] = value
            self._terms = cleaned
        self._hash: Optional[int] = None

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "Polynomial") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError("polynomials belong to different rings")

    def _coerce(self, other: Union["Polynomial", int]) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Union["Polynomial", int]) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        result = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            value = (result.get(monomial, 0) + coefficient) % p
            if value:
                result[monomial] = value
            else:
                result.pop(monomial, None)
        return Polynomial(self.ring, result, normalized=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self._terms.items()}, normalized=True)

    def __sub__(self, other: Union["Polynomial", int]) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Union["Polynomial", int]) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return self.ring.zero()
        p = self.ring.p
        result: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = tuple(a + b for a, b in zip(m1, m2))
                result[monomial] = (result.get(monomial, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in result.items() if c}, normalized=True)

    def __rmul__(self, other: int) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "Polynomial":
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, scalar: int) -> "Polynomial":
        p = self.ring.p
        scalar %= p
        if scalar == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * scalar % p for m, c in self._terms.items()}, normalized=True)

    def mul_term(self, monomial: Monomial, coefficient: int = 1) -> "Polynomial":
        p = self.ring.p
        coefficient %= p
        if coefficient == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {monomial_mul(m, monomial): c * coefficient % p for m, c in self._terms.items()},
            normalized=True,
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_monomials(self) -> List[Monomial]:
        return sorted(self._terms, key=self.ring.key, reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self._terms, key=self.ring.key)

    def leading_coefficient(self) -> int:
        return self._terms[self.leading_monomial()]

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(monomial, 0)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inverse(self.leading_coefficient()))

    def total_degree(self) -> Union[int, float]:
        if not self._terms:
            return MINUS_INFINITY
        return max(monomial_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {monomial_degree(m) for m in self._terms}
        return len(degrees) <= 1

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        if not self.is_homogeneous():
            raise PreconditionError(f"{self} is not homogeneous")
        return monomial_degree(next(iter(self._terms)))

    def is_constant(self) -> bool:
        return all(monomial_degree(m) == 0 for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[Tuple[str, str]] = []
        for monomial in self.sorted_monomials():
            coefficient = self.ring.field.symmetric(self._terms[monomial])
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.variables, monomial)
                if e
            ]
            magnitude = abs(coefficient)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            sign = "-" if coefficient < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def poly_arith(f: Polynomial, g: Union[Polynomial, int], op: Literal["add", "mul", "scalar"]) -> Polynomial:
    """Exact ring arithmetic dispatch used by the job layer and tests."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scalar":
        if not isinstance(g, int):
            raise PreconditionError("scalar multiplication needs an integer scalar")
        return f.scale(g)
    raise PreconditionError(f"unknown polynomial operation '{op}'")


def total_degree(f: Polynomial) -> Union[int, float]:
    return f.total_degree()
