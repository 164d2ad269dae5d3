"""Mod-2 cohomology of the real Stiefel manifold V_k(R^n).

The ring has generators ``a_{n-k}, ..., a_{n-1}`` with ``a_i^2 = a_{2i}`` when
``2i <= n-1`` and ``a_i^2 = 0`` otherwise; square-free monomials form an
additive basis.

Internally a monomial is a bitmask over the generators (bit ``t`` stands for
``a_{n-k+t}``) and a class is a Python int used as a bitset over those masks,
so GF(2) addition is XOR.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ParameterError

_TERM_RE = re.compile(r"^a(\d+)$")


@dataclass(frozen=True, order=True)
class Monomial:
    """A square-free product of generators, stored as ascending indices."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ParameterError(f"monomial indices must strictly increase: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def degree(self) -> int:
        return sum(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        if not self.indices:
            return "1"
        return "*".join(f"a{i}" for i in self.indices)

    @classmethod
    def parse(cls, text: str) -> Monomial:
        idx = _parse_factors(text)
        if len(set(idx)) != len(idx):
            raise ParameterError(f"monomial {text!r} repeats a generator")
        return cls(tuple(sorted(idx)))


def _parse_factors(text: str) -> list[int]:
    text = text.strip()
    if text == "1":
        return []
    idx = []
    for factor in text.split("*"):
        m = _TERM_RE.match(factor.strip())
        if not m:
            raise ParameterError(f"cannot parse monomial factor {factor!r}")
        idx.append(int(m.group(1)))
    return idx


@dataclass(frozen=True)
class DegreeBand:
    p: int
    lo: int
    hi: int

    def __contains__(self, degree: int) -> bool:
        return self.lo <= degree <= self.hi

    @property
    def width(self) -> int:
        return self.hi - self.lo


def reduce_indices(indices: Iterable[int], n: int, order: str = "smallest") -> tuple[int, ...] | None:
    """Reduce a multiset of generator indices to a square-free monomial.

    A duplicated pair ``{i, i}`` becomes ``{2i}`` when ``2i <= n-1`` and kills
    the term otherwise.  Returns the sorted index tuple, or None for zero.
    ``order`` picks which duplicate is rewritten first ("smallest" or
    "largest"); the result does not depend on it.
    """
    counts = Counter(indices)
    pick = min if order == "smallest" else max
    while True:
        dups = [i for i, c in counts.items() if c >= 2]
        if not dups:
            break
        i = pick(dups)
        if 2 * i > n - 1:
            return None
        counts[i] -= 2
        if counts[i] == 0:
            del counts[i]
        counts[2 * i] += 1
    return tuple(sorted(counts))


@dataclass(frozen=True)
class StiefelRing:
    """H*(V_k(R^n); Z_2) for ``n > k >= 1``."""

    n: int
    k: int
    _cache: dict = field(default_factory=dict, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise ParameterError("n and k must be integers")
        if self.k < 1 or self.n <= self.k:
            raise ParameterError(f"need n > k >= 1, got n={self.n}, k={self.k}")

    @property
    def low(self) -> int:
        return self.n - self.k

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(self.n - self.k, self.n))

    @property
    def top_degree(self) -> int:
        return sum(self.generators)

    # -- mask helpers -------------------------------------------------------

    @cached_property
    def mask_degree(self) -> tuple[int, ...]:
        low = self.low
        out = []
        for mask in range(1 << self.k):
            out.append(sum(low + t for t in range(self.k) if mask >> t & 1))
        return tuple(out)

    @cached_property
    def _masks_by_degree(self) -> dict[int, tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for mask, d in enumerate(self.mask_degree):
            groups.setdefault(d, []).append(mask)
        return {
            d: tuple(sorted(ms, key=lambda m: self.mask_indices(m)))
            for d, ms in groups.items()
        }

    def masks_in_degree(self, degree: int) -> tuple[int, ...]:
        return self._masks_by_degree.get(degree, ())

    def dim(self, degree: int) -> int:
        return len(self.masks_in_degree(degree))

    def mask_indices(self, mask: int) -> tuple[int, ...]:
        low = self.low
        return tuple(low + t for t in range(self.k) if mask >> t & 1)

    def indices_mask(self, indices: Iterable[int]) -> int:
        mask = 0
        for i in indices:
            if not self.low <= i <= self.n - 1:
                raise ParameterError(
                    f"a{i} is not a generator of V_{self.k}(R^{self.n}) "
                    f"(range a{self.low}..a{self.n - 1})"
                )
            mask |= 1 << (i - self.low)
        return mask

    def mono_product(self, m1: int, m2: int) -> int:
        """Product of two basis monomials as a mask, or -1 when it vanishes."""
        if not m1 & m2:
            return m1 | m2
        key = (m1, m2) if m1 < m2 else (m2, m1)
        table = self._cache.setdefault("mono_product", {})
        hit = table.get(key)
        if hit is None:
            red = reduce_indices(self.mask_indices(m1) + self.mask_indices(m2), self.n)
            hit = -1 if red is None else self.indices_mask(red)
            table[key] = hit
        return hit

    # -- public conveniences --------------------------------------------------

    def zero(self) -> CohomologyClass:
        return CohomologyClass(self, 0)

    def one(self) -> CohomologyClass:
        return CohomologyClass(self, 1)

    def gen(self, i: int) -> CohomologyClass:
        return CohomologyClass(self, 1 << self.indices_mask([i]))

    def element(self, text: str) -> CohomologyClass:
        return CohomologyClass.parse(self, text)

    def __str__(self) -> str:
        return f"V_{self.k}(R^{self.n})"


def make_ring(n: int, k: int) -> StiefelRing:
    return StiefelRing(n, k)


def iter_bits(bits: int) -> Iterator[int]:
    """Positions of set bits, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class CohomologyClass:
    """A GF(2) sum of basis monomials; ``bits`` has bit ``m`` set for mask ``m``."""

    ring: StiefelRing
    bits: int

    @classmethod
    def from_monomials(cls, ring: StiefelRing, monos: Iterable[Monomial]) -> CohomologyClass:
        bits = 0
        for mono in monos:
            bits ^= 1 << ring.indices_mask(mono.indices)
        return cls(ring, bits)

    @classmethod
    def parse(cls, ring: StiefelRing, text: str) -> CohomologyClass:
        """Parse ``a4*a5+a9`` style text; ``0`` is zero and ``1`` the unit.

        Products with repeated factors are reduced by the ring relations.
        """
        text = text.strip()
        if not text:
            raise ParameterError("empty class text")
        if text == "0":
            return cls(ring, 0)
        bits = 0
        for term in text.split("+"):
            idx = _parse_factors(term)
            ring.indices_mask(idx)  # range check
            red = reduce_indices(idx, ring.n)
            if red is not None:
                bits ^= 1 << ring.indices_mask(red)
        return cls(ring, bits)

    @property
    def terms(self) -> list[Monomial]:
        return sorted(Monomial(self.ring.mask_indices(m)) for m in iter_bits(self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def degrees(self) -> set[int]:
        return {self.ring.mask_degree[m] for m in iter_bits(self.bits)}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Common degree of the terms; None for zero or inhomogeneous classes."""
        ds = self.degrees
        return next(iter(ds)) if len(ds) == 1 else None

    def _check(self, other: CohomologyClass) -> None:
        if other.ring != self.ring:
            raise ParameterError(f"classes live in different rings: {self.ring} vs {other.ring}")

    def __add__(self, other: CohomologyClass) -> CohomologyClass:
        self._check(other)
        return CohomologyClass(self.ring, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: CohomologyClass) -> CohomologyClass:
        return multiply(self.ring, self, other)

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        return "+".join(str(m) for m in self.terms)

    def __repr__(self) -> str:
        return f"CohomologyClass({self.ring}, {self})"

    def to_json(self) -> list[str]:
        return [str(m) for m in self.terms]


def basis(ring: StiefelRing, degree: int) -> list[Monomial]:
    """Square-free monomials of the given degree, lexicographic by index list."""
    return [Monomial(ring.mask_indices(m)) for m in ring.masks_in_degree(degree)]


def mul_bits(ring: StiefelRing, x: int, y: int) -> int:
    out = 0
    if not x or not y:
        return 0
    for m1 in iter_bits(x):
        for m2 in iter_bits(y):
            r = ring.mono_product(m1, m2)
            if r >= 0:
                out ^= 1 << r
    return out


def multiply(ring: StiefelRing, x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
    if x.ring != ring or y.ring != ring:
        raise ParameterError(f"multiply: operands must belong to {ring}")
    return CohomologyClass(ring, mul_bits(ring, x.bits, y.bits))


def t_band(ring: StiefelRing, p: int) -> DegreeBand:
    """Degrees reachable by products of exactly ``p`` distinct generators."""
    if not 0 <= p <= ring.k:
        raise ParameterError(f"band index p must lie in [0, {ring.k}], got {p}")
    n, k = ring.n, ring.k
    tri = p * (p - 1) // 2
    return DegreeBand(p, p * (n - k) + tri, p * (n - 1) - tri)
