"""Steenrod squares on H*(V_k(R^n); Z_2).

On a generator, ``Sq^i(a_j) = C(j, i) a_{j+i}`` when ``j + i <= n-1`` and zero
otherwise.  Monomials are handled by the Cartan formula, summing over
compositions ``l_1 + ... + l_p = i`` of the product of the generator squares.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import CohomologyClass, StiefelRing, iter_bits, mul_bits
from .errors import ParameterError
from .parity import is_odd_binom


def sq_gen(ring: StiefelRing, i: int, j: int) -> CohomologyClass:
    if not ring.low <= j <= ring.n - 1:
        raise ParameterError(f"a{j} is not a generator of {ring}")
    if i < 0:
        raise ParameterError(f"Sq^{i} is undefined")
    if j + i <= ring.n - 1 and is_odd_binom(j, i):
        return ring.gen(j + i)
    return ring.zero()


def _sq_mask(ring: StiefelRing, i: int, mask: int) -> int:
    table = ring._cache.setdefault("sq", {})
    key = (i, mask)
    hit = table.get(key)
    if hit is not None:
        return hit

    gens = ring.mask_indices(mask)
    top = ring.n - 1
    # per factor: the (l, target-mask) pairs that survive pruning
    options = []
    for g in gens:
        opts = [
            (l, 1 << (g + l - ring.low))
            for l in range(0, min(i, top - g) + 1)
            if is_odd_binom(g, l)
        ]
        options.append(opts)

    out = 0

    def walk(pos: int, remaining: int, acc: int) -> None:
        nonlocal out
        if pos == len(options):
            if remaining == 0:
                out ^= 1 << acc
            return
        for l, target in options[pos]:
            if l > remaining:
                break
            nxt = ring.mono_product(acc, target)
            if nxt >= 0:
                walk(pos + 1, remaining - l, nxt)

    walk(0, i, 0)
    table[key] = out
    return out


def sq_bits(ring: StiefelRing, i: int, bits: int) -> int:
    if i == 0:
        return bits
    out = 0
    for mask in iter_bits(bits):
        out ^= _sq_mask(ring, i, mask)
    return out


def sq(ring: StiefelRing, i: int, x: CohomologyClass) -> CohomologyClass:
    """Apply ``Sq^i`` to a class via the Cartan formula."""
    if i < 0:
        raise ParameterError(f"Sq^{i} is undefined")
    if x.ring != ring:
        raise ParameterError(f"class does not belong to {ring}")
    return CohomologyClass(ring, sq_bits(ring, i, x.bits))


@dataclass
class AxiomReport:
    """Counts of checked instances and any failures, per axiom."""

    checked: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    failed: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def _tick(self, name: str) -> None:
        self.checked[name] = self.checked.get(name, 0) + 1

    def _fail(self, name: str, **detail) -> None:
        self.failures.append({"axiom": name, **detail})


def check_axioms(ring: StiefelRing, max_failures: int = 20) -> AxiomReport:
    """Exhaustively check the Steenrod axioms on every basis monomial of ``ring``.

    Covers Sq^0 = id, instability, the squaring axiom, the Cartan formula on
    basis pairs, and the Adem relations for ``a < 2b``, ``a + b <= top``.
    """
    report = AxiomReport()
    top = ring.top_degree
    monos = list(range(1 << ring.k))
    deg = ring.mask_degree

    def fail(name, **detail):
        report.failed += 1
        if len(report.failures) < max_failures:
            report._fail(name, **detail)

    def show(bits):
        return str(CohomologyClass(ring, bits))

    for m in monos:
        x = 1 << m
        d = deg[m]
        report._tick("sq0_identity")
        if sq_bits(ring, 0, x) != x:
            fail("sq0_identity", x=show(x))
        for i in range(d + 1, top + 1):
            report._tick("instability")
            if sq_bits(ring, i, x):
                fail("instability", x=show(x), i=i)
        report._tick("squaring")
        if sq_bits(ring, d, x) != mul_bits(ring, x, x):
            fail("squaring", x=show(x))

    for m1 in monos:
        for m2 in monos:
            if m2 < m1 or deg[m1] + deg[m2] > top:
                continue
            x, y = 1 << m1, 1 << m2
            xy = mul_bits(ring, x, y)
            for i in range(deg[m1] + deg[m2] + 1):
                rhs = 0
                for a in range(i + 1):
                    rhs ^= mul_bits(ring, sq_bits(ring, a, x), sq_bits(ring, i - a, y))
                report._tick("cartan")
                if sq_bits(ring, i, xy) != rhs:
                    fail("cartan", x=show(x), y=show(y), i=i)

    for b in range(1, top + 1):
        for a in range(1, min(2 * b, top - b + 1)):
            for m in monos:
                x = 1 << m
                lhs = sq_bits(ring, a, sq_bits(ring, b, x))
                rhs = 0
                for c in range(a // 2 + 1):
                    if is_odd_binom(b - c - 1, a - 2 * c):
                        rhs ^= sq_bits(ring, a + b - c, sq_bits(ring, c, x))
                report._tick("adem")
                if lhs != rhs:
                    fail("adem", x=show(x), a=a, b=b)
    return report
