"""Formal Stiefel-Whitney class systems on Stiefel manifolds.

A system assigns a homogeneous class ``w_d`` to each degree ``1 <= d <= top``
(``w_0 = 1``).  It is Wu-consistent when for every ``1 <= i <= j``::

    Sq^i(w_j) = sum_{r=0}^{i} C(j - i + r - 1, r) w_{i-r} w_{j+r}

with ``w_d = 0`` past the top degree.  This module checks that identity,
enumerates all consistent systems of a ring by backtracking, and checks the
product/vanishing pattern forced once the first nonzero class sits in degree
``2^q`` (for ``4n > k(k+4)``).
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple

from .cohomology import CohomologyClass, StiefelRing, iter_bits, mul_bits
from .errors import BudgetExceeded, HypothesisError, ParameterError
from .parity import binary_exponents, is_odd_binom, is_power_of_two, phi
from .steenrod import sq_bits

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class CharClassSystem:
    """Total Stiefel-Whitney class of a formal system; ``w[d]`` is a class bitset."""

    ring: StiefelRing
    w: tuple[int, ...]

    def __post_init__(self):
        ring = self.ring
        if len(self.w) != ring.top_degree + 1:
            raise ParameterError("system must list degrees 0..top_degree")
        if self.w[0] != 1:
            raise ParameterError("w_0 must be the unit")
        for d, bits in enumerate(self.w):
            if any(ring.mask_degree[m] != d for m in iter_bits(bits)):
                raise ParameterError(f"w_{d} is not homogeneous of degree {d}")

    @classmethod
    def from_classes(
        cls, ring: StiefelRing, classes: Mapping[int, CohomologyClass | str]
    ) -> CharClassSystem:
        w = [0] * (ring.top_degree + 1)
        w[0] = 1
        for d, c in classes.items():
            if isinstance(c, str):
                c = CohomologyClass.parse(ring, c)
            elif c.ring != ring:
                raise ParameterError(f"w_{d} does not belong to {ring}")
            if d < 1:
                raise ParameterError(f"cannot assign w_{d}; degrees start at 1")
            if d > ring.top_degree:
                if c:
                    raise ParameterError(f"w_{d} is above the top degree {ring.top_degree}")
                continue
            w[d] = c.bits
        return cls(ring, tuple(w))

    @classmethod
    def trivial(cls, ring: StiefelRing) -> CharClassSystem:
        return cls(ring, (1,) + (0,) * ring.top_degree)

    def __getitem__(self, d: int) -> CohomologyClass:
        return CohomologyClass(self.ring, self.bits(d))

    def bits(self, d: int) -> int:
        return self.w[d] if 0 <= d < len(self.w) else 0

    @property
    def classes(self) -> dict[int, CohomologyClass]:
        """Nonzero classes in positive degrees."""
        return {d: self[d] for d in range(1, len(self.w)) if self.w[d]}

    def to_json(self) -> dict[str, list[str]]:
        return {str(d): c.to_json() for d, c in self.classes.items()}

    def __str__(self) -> str:
        parts = [f"w{d}={c}" for d, c in self.classes.items()]
        return " ".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class WuViolation:
    i: int
    j: int
    lhs: CohomologyClass
    rhs: CohomologyClass

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "lhs": str(self.lhs), "rhs": str(self.rhs)}


class WuResult(NamedTuple):
    consistent: bool
    violations: list[WuViolation]


def _wu_rhs_bits(ring: StiefelRing, w: tuple[int, ...], i: int, j: int) -> int:
    top = len(w) - 1
    out = 0
    for r in range(i + 1):
        if j + r > top:
            break
        lo, hi = w[i - r], w[j + r]
        if lo and hi and is_odd_binom(j - i + r - 1, r):
            out ^= mul_bits(ring, lo, hi)
    return out


def wu_rhs(system: CharClassSystem, i: int, j: int) -> CohomologyClass:
    """Right-hand side of Wu's formula for ``Sq^i(w_j)``."""
    if i < 1 or i > j:
        raise ParameterError(f"wu_rhs needs 1 <= i <= j, got i={i}, j={j}")
    if j > system.ring.top_degree:
        raise ParameterError(f"j={j} exceeds top degree {system.ring.top_degree}")
    return CohomologyClass(system.ring, _wu_rhs_bits(system.ring, system.w, i, j))


def _wu_pairs(top: int) -> Iterator[tuple[int, int]]:
    for j in range(1, top + 1):
        for i in range(1, j + 1):
            yield i, j


def _pair_holds(ring: StiefelRing, w: tuple[int, ...], i: int, j: int) -> bool:
    return sq_bits(ring, i, w[j]) == _wu_rhs_bits(ring, w, i, j)


def is_wu_consistent(system: CharClassSystem) -> WuResult:
    ring, w = system.ring, system.w
    violations = []
    for i, j in _wu_pairs(ring.top_degree):
        lhs = sq_bits(ring, i, w[j])
        rhs = _wu_rhs_bits(ring, w, i, j)
        if lhs != rhs:
            violations.append(
                WuViolation(i, j, CohomologyClass(ring, lhs), CohomologyClass(ring, rhs))
            )
    return WuResult(not violations, violations)


def first_nonzero_degree(system: CharClassSystem) -> int | None:
    for d in range(1, len(system.w)):
        if system.w[d]:
            return d
    return None


# -- enumeration --------------------------------------------------------------


def state_space_size(ring: StiefelRing) -> int:
    """Number of raw assignments: product over degrees of 2^dim H^d."""
    return 1 << sum(ring.dim(d) for d in range(1, ring.top_degree + 1))


def cor22_degree(ring: StiefelRing) -> int:
    return phi(ring.n - ring.k - 1).power


def _check_cor22_hypothesis(ring: StiefelRing) -> None:
    if ring.n < 2 * ring.k:
        raise HypothesisError(
            f"the degree constraint needs n >= 2k, got n={ring.n}, k={ring.k}"
        )


def _degree_values(ring: StiefelRing, d: int) -> list[int]:
    """Every homogeneous class of degree ``d`` as a bitset, zero first."""
    masks = ring.masks_in_degree(d)
    out = []
    for sel in range(1 << len(masks)):
        bits = 0
        for t, m in enumerate(masks):
            if sel >> t & 1:
                bits |= 1 << m
        out.append(bits)
    return out


def _candidates(ring, require_cor22, first_nonzero):
    top = ring.top_degree
    allowed = cor22_degree(ring) if require_cor22 else None
    cands = [[1]]
    for d in range(1, top + 1):
        vals = _degree_values(ring, d)
        if require_cor22 and d <= ring.n - 1 and d != allowed:
            vals = [0]
        if first_nonzero is not None:
            if d < first_nonzero:
                vals = [0]
            elif d == first_nonzero:
                vals = [v for v in vals if v]
        cands.append(vals)
    return cands


def enumerate_systems(
    ring: StiefelRing,
    require_wu: bool = True,
    require_cor22: bool = False,
    first_nonzero: int | None = None,
    budget: int = DEFAULT_BUDGET,
    prune: bool = True,
) -> Iterator[CharClassSystem]:
    """Stream every system on ``ring`` that passes the selected filters.

    ``require_cor22`` forces ``w_i = 0`` for ``i <= n-1`` except at
    ``2^phi(n-k-1)`` and needs ``n >= 2k``.  With ``prune`` (the default)
    degrees are filled in increasing order and each Wu pair is checked as soon
    as every degree it mentions is assigned.  ``prune=False`` walks the raw
    product and filters afterwards; it exists as an oracle for the pruned walk.

    Raises BudgetExceeded before yielding anything if the raw state space is
    larger than ``budget``.
    """
    size = state_space_size(ring)
    if size > budget:
        raise BudgetExceeded(size, budget)
    if require_cor22:
        _check_cor22_hypothesis(ring)
    if first_nonzero is not None and first_nonzero < 1:
        raise ParameterError("first_nonzero must be >= 1")
    if prune:
        return _enumerate_pruned(ring, require_wu, require_cor22, first_nonzero)
    return _enumerate_brute(ring, require_wu, require_cor22, first_nonzero)


def _enumerate_brute(ring, require_wu, require_cor22, first_nonzero):
    top = ring.top_degree
    allowed = cor22_degree(ring)
    raw = [[1]] + [_degree_values(ring, d) for d in range(1, top + 1)]
    for w in itertools.product(*raw):
        system = CharClassSystem(ring, w)
        if require_cor22 and any(
            w[d] for d in range(1, min(ring.n - 1, top) + 1) if d != allowed
        ):
            continue
        if first_nonzero is not None and first_nonzero_degree(system) != first_nonzero:
            continue
        if require_wu and not all(_pair_holds(ring, w, i, j) for i, j in _wu_pairs(top)):
            continue
        yield system


def _enumerate_pruned(ring, require_wu, require_cor22, first_nonzero):
    top = ring.top_degree
    cands = _candidates(ring, require_cor22, first_nonzero)
    # pairs grouped by the last degree they read: max(j, i + j) capped at top
    ready: list[list[tuple[int, int]]] = [[] for _ in range(top + 1)]
    if require_wu:
        for i, j in _wu_pairs(top):
            ready[min(i + j, top)].append((i, j))
    w = [0] * (top + 1)
    w[0] = 1

    def fill(d: int) -> Iterator[CharClassSystem]:
        if d > top:
            yield CharClassSystem(ring, tuple(w))
            return
        for v in cands[d]:
            w[d] = v
            if all(_pair_holds(ring, w, i, j) for i, j in ready[d]):
                yield from fill(d + 1)
        w[d] = 0

    return fill(1)


# -- theorem on products of classes ------------------------------------------------


class Verdict(enum.Enum):
    FORCED_ZERO = "forced_zero"
    FREE_GENERATOR = "free_generator"
    FORCED_PRODUCT = "forced_product"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Relation:
    verdict: Verdict
    factors: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.verdict is Verdict.FORCED_PRODUCT:
            return f"forced_product[{','.join(map(str, self.factors))}]"
        return str(self.verdict)

    def to_json(self):
        out = {"verdict": self.verdict.value}
        if self.verdict is Verdict.FORCED_PRODUCT:
            out["factors"] = list(self.factors)
        return out


@dataclass(frozen=True)
class RelationTable:
    ring: StiefelRing
    q: int
    verdicts: dict[int, Relation]

    def to_json(self) -> dict:
        return {str(d): r.to_json() for d, r in self.verdicts.items()}


def theorem2_hypothesis(ring: StiefelRing) -> bool:
    """True when 4n > k(k+4), i.e. n > k(k+4)/4."""
    return 4 * ring.n > ring.k * (ring.k + 4)


def _require_theorem2(ring: StiefelRing) -> None:
    if not theorem2_hypothesis(ring):
        raise HypothesisError(
            f"relations need n > k(k+4)/4; {ring} has n={ring.n}, "
            f"k(k+4)/4={ring.k * (ring.k + 4) / 4:g}"
        )


def derive_relations(ring: StiefelRing, q: int) -> RelationTable:
    """Per-degree verdicts when the first nonzero class has degree ``2^q``.

    Non-multiples of ``2^q`` (and everything below it) vanish; ``2^(q+t)`` is
    unconstrained; any other multiple is the product of the classes in the
    degrees of its binary expansion.
    """
    _require_theorem2(ring)
    if q < 0:
        raise ParameterError(f"q must be >= 0, got {q}")
    base = 1 << q
    verdicts = {}
    for i in range(1, ring.top_degree + 1):
        if i < base or i % base:
            verdicts[i] = Relation(Verdict.FORCED_ZERO)
        elif is_power_of_two(i):
            verdicts[i] = Relation(Verdict.FREE_GENERATOR)
        else:
            verdicts[i] = Relation(
                Verdict.FORCED_PRODUCT, tuple(1 << e for e in binary_exponents(i))
            )
    return RelationTable(ring, q, verdicts)


@dataclass(frozen=True)
class Theorem2Violation:
    degree: int
    relation: Relation
    expected: CohomologyClass
    actual: CohomologyClass

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "relation": str(self.relation),
            "expected": str(self.expected),
            "actual": str(self.actual),
        }


class Theorem2Result(NamedTuple):
    ok: bool
    violations: list[Theorem2Violation]


def check_theorem2(system: CharClassSystem, q: int) -> Theorem2Result:
    ring = system.ring
    _require_theorem2(ring)
    first = first_nonzero_degree(system)
    if first != 1 << q:
        raise HypothesisError(
            f"first nonzero class is in degree {first}, not 2^{q} = {1 << q}"
        )
    table = derive_relations(ring, q)
    violations = []
    for d, rel in table.verdicts.items():
        actual = system.bits(d)
        if rel.verdict is Verdict.FREE_GENERATOR:
            continue
        if rel.verdict is Verdict.FORCED_ZERO:
            expected = 0
        else:
            expected = 1
            for f in rel.factors:
                expected = mul_bits(ring, expected, system.bits(f))
        if actual != expected:
            violations.append(
                Theorem2Violation(
                    d, rel, CohomologyClass(ring, expected), CohomologyClass(ring, actual)
                )
            )
    return Theorem2Result(not violations, violations)


def theorem2_status(system: CharClassSystem) -> bool | None:
    """check_theorem2 outcome, or None when its hypotheses are unmet."""
    first = first_nonzero_degree(system)
    if first is None or not is_power_of_two(first) or not theorem2_hypothesis(system.ring):
        return None
    return check_theorem2(system, first.bit_length() - 1).ok


def system_record(system: CharClassSystem, wu_consistent: bool | None = None) -> dict:
    """JSON-lines record for one enumerated system."""
    if wu_consistent is None:
        wu_consistent = is_wu_consistent(system).consistent
    return {
        "classes": system.to_json(),
        "wu_consistent": wu_consistent,
        "first_nonzero": first_nonzero_degree(system),
        "theorem2_ok": theorem2_status(system),
    }


@dataclass
class Theorem2Summary:
    """Outcome of checking every enumerated system against its relation table."""

    ring: StiefelRing
    require_cor22: bool
    per_q: dict[int, dict[str, int]]
    trivial: int
    not_power_of_two: list[CharClassSystem]
    counterexamples: list[tuple[CharClassSystem, list[Theorem2Violation]]]

    @property
    def total(self) -> int:
        return self.trivial + len(self.not_power_of_two) + sum(
            v["systems"] for v in self.per_q.values()
        )

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.not_power_of_two

    def to_json(self) -> dict:
        return {
            "require_cor22": self.require_cor22,
            "systems": self.total,
            "trivial": self.trivial,
            "per_q": {str(q): v for q, v in sorted(self.per_q.items())},
            "not_power_of_two": [s.to_json() for s in self.not_power_of_two],
            "counterexamples": [
                {"classes": s.to_json(), "violations": [v.to_json() for v in vs]}
                for s, vs in self.counterexamples
            ],
        }


def verify_theorem2(
    ring: StiefelRing,
    require_cor22: bool = True,
    budget: int = DEFAULT_BUDGET,
    keep: int = 10,
) -> Theorem2Summary:
    """Enumerate Wu-consistent systems and run check_theorem2 on each."""
    _require_theorem2(ring)
    per_q: dict[int, dict[str, int]] = {}
    trivial = 0
    odd_first = []
    bad = []
    for system in enumerate_systems(ring, require_wu=True, require_cor22=require_cor22, budget=budget):
        first = first_nonzero_degree(system)
        if first is None:
            trivial += 1
            continue
        if not is_power_of_two(first):
            odd_first.append(system)
            continue
        q = first.bit_length() - 1
        row = per_q.setdefault(q, {"systems": 0, "violations": 0})
        row["systems"] += 1
        result = check_theorem2(system, q)
        if not result.ok:
            row["violations"] += 1
            if len(bad) < keep:
                bad.append((system, result.violations))
    summary = Theorem2Summary(ring, require_cor22, per_q, trivial, odd_first, bad)
    log.info("%s cor22=%s: %d systems, ok=%s", ring, require_cor22, summary.total, summary.ok)
    return summary
