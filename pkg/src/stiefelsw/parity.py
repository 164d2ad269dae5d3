"""Binomial parity, the Adams counting function phi, and related helpers."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParameterError


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1

    def __bool__(self) -> bool:
        return self is Parity.ODD

    def __add__(self, other: Parity) -> Parity:
        return Parity(self.value ^ other.value)

    def __mul__(self, other: Parity) -> Parity:
        return Parity(self.value & other.value)

    def __str__(self) -> str:
        return self.name.lower()


def binom_parity(a: int, b: int) -> Parity:
    """Parity of C(a, b) by Lucas' theorem.

    C(a, b) is odd iff the binary digits of ``b`` are a subset of those of
    ``a``.  ``C(-1, 0)`` is taken to be 1; any other negative top is refused.
    """
    if b < 0:
        raise ParameterError(f"binomial bottom must be >= 0, got {b}")
    if a < -1 or (a == -1 and b > 0):
        raise ParameterError(f"binomial parity undefined for C({a}, {b})")
    if b == 0:
        return Parity.ODD
    if a < b:
        return Parity.EVEN
    return Parity.ODD if a & b == b else Parity.EVEN


def is_odd_binom(a: int, b: int) -> bool:
    # hot path used by the Steenrod and Wu code; same contract as binom_parity
    if b == 0:
        return True
    return 0 <= b <= a and a & b == b


@dataclass(frozen=True)
class PhiValue:
    m: int
    phi: int
    power: int

    def as_dict(self) -> dict:
        return {"m": self.m, "phi": self.phi, "power": self.power}


def phi(m: int) -> PhiValue:
    """Count 0 < l <= m with l = 0, 1, 2, 4 (mod 8)."""
    if m < 0:
        raise ParameterError(f"phi is defined for m >= 0, got {m}")
    count = sum(1 for l in range(1, m + 1) if l % 8 in (0, 1, 2, 4))
    return PhiValue(m, count, 1 << count)


def phi_closed_form(m: int) -> int:
    if m % 8 in (1, 2, 3, 4, 5):
        return m // 2 + 1
    return m // 2


class Comparison(enum.Enum):
    STRICT = "strict"
    EQUAL = "equal"

    def __str__(self) -> str:
        return self.value


def equality_classifier(m: int) -> Comparison:
    """Compare 2^phi(m-1) with m; the power is never smaller than m."""
    if m < 1:
        raise ParameterError(f"equality_classifier needs m >= 1, got {m}")
    power = phi(m - 1).power
    if power == m:
        return Comparison.EQUAL
    if power > m:
        return Comparison.STRICT
    raise AssertionError(f"2^phi({m - 1}) = {power} < {m}")


def binary_exponents(i: int) -> list[int]:
    """Exponents e with bit e set in ``i``, ascending."""
    out = []
    e = 0
    while i:
        if i & 1:
            out.append(e)
        i >>= 1
        e += 1
    return out


def is_power_of_two(i: int) -> bool:
    return i > 0 and i & (i - 1) == 0
