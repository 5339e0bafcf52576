"""Residues modulo D.

The heavy paths in the package work on plain ``int`` (or numpy) values reduced
mod D; :class:`ZModElement` is the checked scalar used at API boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ModulusMismatch, NotAUnit


@dataclass(frozen=True, order=True)
class ZModElement:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> ZModElement:
        if isinstance(other, ZModElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other
        if isinstance(other, int):
            return ZModElement(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ZModElement(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ZModElement(other.value - self.value, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return ZModElement(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def inv(self) -> ZModElement:
        return inv(self)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def _check(a: ZModElement, b: ZModElement) -> int:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"mod {a.modulus} vs mod {b.modulus}")
    return a.modulus


def add(a: ZModElement, b: ZModElement) -> ZModElement:
    return ZModElement(a.value + b.value, _check(a, b))


def mul(a: ZModElement, b: ZModElement) -> ZModElement:
    return ZModElement(a.value * b.value, _check(a, b))


def inv_int(x: int, D: int) -> int:
    """Inverse of ``x`` mod ``D`` as a plain int; raises NotAUnit."""
    x %= D
    if gcd(x, D) != 1:
        raise NotAUnit(f"{x} is not a unit mod {D}")
    return pow(x, -1, D)


def inv(a: ZModElement) -> ZModElement:
    return ZModElement(inv_int(a.value, a.modulus), a.modulus)


@lru_cache(maxsize=None)
def unit_values(D: int) -> tuple[int, ...]:
    if D < 2:
        raise ValueError(f"modulus must be >= 2, got {D}")
    return tuple(x for x in range(1, D) if gcd(x, D) == 1)


def units(D: int) -> list[ZModElement]:
    """All residues coprime to D, ascending."""
    return [ZModElement(x, D) for x in unit_values(D)]


def is_unit(x: int, D: int) -> bool:
    return gcd(x % D, D) == 1
