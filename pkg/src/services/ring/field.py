"""Prime field arithmetic."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from src.services.errors import PreconditionError
from src.services.settings import DEFAULT_CHARACTERISTIC

MAX_CHARACTERISTIC = 2**31


@dataclass(frozen=True)
class PrimeField:
    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self) -> None:
        if self.characteristic >= MAX_CHARACTERISTIC:
            raise PreconditionError(f"characteristic {self.characteristic} must be below 2^31")
        if not isprime(self.characteristic):
            raise PreconditionError(f"characteristic {self.characteristic} is not prime")

    @property
    def p(self) -> int:
        return self.characteristic

    def normalize(self, value: int) -> int:
        return value % self.characteristic

    def inverse(self, value: int) -> int:
        value %= self.characteristic
        if value == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return pow(value, -1, self.characteristic)

    def negate(self, value: int) -> int:
        return (-value) % self.characteristic

    def symmetric(self, value: int) -> int:
        """Representative in (-p/2, p/2], used for printing."""
        value %= self.characteristic
        return value - self.characteristic if value > self.characteristic // 2 else value

    def from_rational(self, numerator: int, denominator: int = 1) -> int:
        return (numerator % self.characteristic) * self.inverse(denominator) % self.characteristic
