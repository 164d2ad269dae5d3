"""Stiefel-Whitney classes over stunted projective spaces and the degree sets
they permit on V_k(R^n).

Cohomology of RP^(N-1) is Z_2[t]/(t^N); the total class of ``m`` copies of
the canonical line bundle is ``(1 + t)^m``.  Bundles pulled back from the
stunted space P_{n,k} are multiples of ``2^phi(n-k-1)`` copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import StiefelRing, iter_bits
from .errors import HypothesisError, ParameterError
from .parity import binom_parity, phi

MAX_MODULUS = 1 << 16
SPECIAL_CODIMENSIONS = frozenset({1, 2, 4, 8})


@dataclass(frozen=True)
class TruncatedPoly:
    """Element of Z_2[t]/(t^N); bit ``e`` of ``coeffs`` is the t^e coefficient."""

    modulus: int
    coeffs: int = 0

    def __post_init__(self):
        if not 1 <= self.modulus <= MAX_MODULUS:
            raise ParameterError(f"modulus must lie in [1, {MAX_MODULUS}], got {self.modulus}")
        object.__setattr__(self, "coeffs", self.coeffs & ((1 << self.modulus) - 1))

    @classmethod
    def from_exponents(cls, modulus: int, exponents) -> TruncatedPoly:
        c = 0
        for e in exponents:
            c ^= 1 << e
        return cls(modulus, c)

    @classmethod
    def one(cls, modulus: int) -> TruncatedPoly:
        return cls(modulus, 1)

    @property
    def exponents(self) -> list[int]:
        return list(iter_bits(self.coeffs))

    def __getitem__(self, e: int) -> int:
        return self.coeffs >> e & 1

    def _check(self, other: TruncatedPoly) -> None:
        if other.modulus != self.modulus:
            raise ParameterError("truncation moduli differ")

    def __add__(self, other: TruncatedPoly) -> TruncatedPoly:
        self._check(other)
        return TruncatedPoly(self.modulus, self.coeffs ^ other.coeffs)

    def __mul__(self, other: TruncatedPoly) -> TruncatedPoly:
        # carry-less product; __post_init__ drops t^N and above
        self._check(other)
        a, out = self.coeffs, 0
        for e in iter_bits(other.coeffs):
            if e >= self.modulus:
                break
            out ^= a << e
        return TruncatedPoly(self.modulus, out)

    def __pow__(self, m: int) -> TruncatedPoly:
        if m < 0:
            raise ParameterError("negative powers are not defined")
        result, base = TruncatedPoly.one(self.modulus), self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in self.exponents:
            terms.append("1" if e == 0 else "t" if e == 1 else f"t^{e}")
        return " + ".join(terms)

    def to_json(self) -> list[int]:
        return self.exponents


def total_sw_multiple_gamma(N: int, m: int) -> TruncatedPoly:
    """``(1 + t)^m`` in Z_2[t]/(t^N), one Lucas parity per coefficient."""
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    coeffs = 0
    for j in range(min(N, m + 1)):
        if binom_parity(m, j):
            coeffs |= 1 << j
    return TruncatedPoly(N, coeffs)


def image_multiple(n: int, k: int) -> int:
    StiefelRing(n, k)  # parameter validation
    return phi(n - k - 1).power


@dataclass(frozen=True)
class AdmissibleSet:
    n: int
    k: int
    mode: str
    range_hi: int
    degrees: tuple[int, ...]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "mode": self.mode,
                "range_hi": self.range_hi, "degrees": list(self.degrees)}


def admissible_degrees(n: int, k: int, mode: str = "theorem1") -> AdmissibleSet:
    """Degrees in which a Stiefel-Whitney class over V_k(R^n) may be nonzero.

    ``theorem1`` covers ``1 <= i <= 2(n-k)``; ``corollary22`` covers
    ``1 <= i <= n-1`` and needs ``n >= 2k``.  The result is an upper bound on
    what can occur; nothing is claimed about existence.
    """
    StiefelRing(n, k)
    power = phi(n - k - 1).power
    c = n - k
    if mode == "theorem1":
        hi = 2 * c
        if c in SPECIAL_CODIMENSIONS:
            degrees = (c, 2 * c)
        else:
            degrees = (power,) if power <= hi else ()
    elif mode == "corollary22":
        if n < 2 * k:
            raise HypothesisError(f"corollary22 mode needs n >= 2k, got n={n}, k={k}")
        hi = n - 1
        degrees = (power,) if power <= hi else ()
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    return AdmissibleSet(n, k, mode, hi, degrees)


def corollary23_bound(k: int, n_max: int = 200) -> int:
    """Largest ``n <= n_max`` (with ``n >= 2k``) whose corollary22 set is nonempty.

    Returns ``2k - 1`` when there is none.  Past this bound every class of
    degree ``<= n-1`` must vanish (up to ``n_max``).
    """
    bound = 2 * k - 1
    for n in range(max(2 * k, k + 1), n_max + 1):
        if admissible_degrees(n, k, "corollary22").degrees:
            bound = n
    return bound


def stunted_degrees(n: int, k: int, d: int, lo: int, hi: int) -> list[int]:
    """Nonzero exponents of ``w(d * 2^phi(n-k-1) * gamma)`` over RP^(n-1) within [lo, hi]."""
    poly = total_sw_multiple_gamma(n, d * image_multiple(n, k))
    return [e for e in poly.exponents if lo <= e <= hi]


@dataclass
class Theorem1Check:
    pairs: int = 0
    multiples: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_theorem1(n_max: int = 20, d_max: int = 16, pairs=None) -> Theorem1Check:
    """Check that stunted-space classes only land in admissible degrees.

    For each ``(n, k)`` with ``n >= 2k`` and ``0 <= d <= d_max`` the nonzero
    degrees of ``w(d * 2^phi(n-k-1) * gamma)`` inside
    ``[n-k, min(n-1, 2(n-k))]`` must lie in the theorem1 set, and inside
    ``[n-k, n-1]`` in the corollary22 set.
    """
    if pairs is None:
        pairs = [(n, k) for n in range(2, n_max + 1) for k in range(1, n) if n >= 2 * k]
    check = Theorem1Check()
    for n, k in pairs:
        check.pairs += 1
        thm1 = set(admissible_degrees(n, k, "theorem1").degrees)
        cor22 = set(admissible_degrees(n, k, "corollary22").degrees) if n >= 2 * k else None
        for d in range(d_max + 1):
            check.multiples += 1
            stray = set(stunted_degrees(n, k, d, n - k, min(n - 1, 2 * (n - k)))) - thm1
            if cor22 is not None:
                stray |= set(stunted_degrees(n, k, d, n - k, n - 1)) - cor22
            if stray:
                check.failures.append({"n": n, "k": k, "d": d, "degrees": sorted(stray)})
    return check
