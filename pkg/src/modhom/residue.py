from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, isqrt(p) + 1, 2))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p!r}")
    return p


@dataclass(frozen=True)
class Residue:
    """An integer modulo a prime. Comparing with a plain ``int`` compares
    against the stored representative."""

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    @classmethod
    def of(cls, value: int, modulus: int) -> Residue:
        return cls(value % modulus, modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue.of(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue.of(self.value - o, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue.of(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return Residue(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"
