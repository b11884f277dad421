"""Exponent-vector monomials and the supported monomial orders."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Literal, Tuple

Monomial = Tuple[int, ...]
MonomialOrder = Literal["grevlex", "lex"]


def monomial_degree(a: Monomial) -> int:
    return sum(a)


def grevlex_key(a: Monomial) -> Tuple[int, ...]:
    # larger key means larger monomial
    return (sum(a),) + tuple(-e for e in reversed(a))


def lex_key(a: Monomial) -> Tuple[int, ...]:
    return a


ORDER_KEYS: Dict[str, Callable[[Monomial], Tuple[int, ...]]] = {
    "grevlex": grevlex_key,
    "lex": lex_key,
}


def order_key(order: str) -> Callable[[Monomial], Tuple[int, ...]]:
    return ORDER_KEYS[order]


def monomial_compare(a: Monomial, b: Monomial, order: str = "grevlex") -> int:
    """Return 1 if a > b, -1 if a < b and 0 if equal."""
    if len(a) != len(b):
        raise ValueError("monomials live in different rings")
    key = ORDER_KEYS[order]
    ka, kb = key(a), key(b)
    return (ka > kb) - (ka < kb)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int, order: str = "grevlex") -> List[Monomial]:
    """All monomials of a given degree, largest first."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for index in combo:
            exps[index] += 1
        result.append(tuple(exps))
    result.sort(key=ORDER_KEYS[order], reverse=True)
    return result
