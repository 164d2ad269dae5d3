import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from stiefelsw.cohomology import CohomologyClass, make_ring
from stiefelsw.errors import BudgetExceeded, HypothesisError, ParameterError
from stiefelsw.parity import is_power_of_two
from stiefelsw.wu import (
    CharClassSystem,
    Verdict,
    check_theorem2,
    derive_relations,
    enumerate_systems,
    first_nonzero_degree,
    is_wu_consistent,
    state_space_size,
    system_record,
    verify_theorem2,
    wu_rhs,
)

SNAP = Path(__file__).parent / "snapshots"


def system(ring, **classes):
    return CharClassSystem.from_classes(ring, {int(k[1:]): v for k, v in classes.items()})


# -- wu_rhs -------------------------------------------------------------------


def test_wu_rhs_i4_j8_reduces_to_two_terms():
    # V_3(R^6): H^3 = a3, H^4 = a4, H^8 = a3*a5, H^9 = a4*a5, H^12 = a3*a4*a5
    ring = make_ring(6, 3)
    # r = 0 and r = 4 carry odd weights
    assert str(wu_rhs(system(ring, w4="a4", w8="a3*a5"), 4, 8)) == "a3*a4*a5"
    assert str(wu_rhs(system(ring, w12="a3*a4*a5"), 4, 8)) == "a3*a4*a5"
    # r = 1 (w3 * w9) has weight C(4,1), even
    assert wu_rhs(system(ring, w3="a3", w9="a4*a5"), 4, 8).is_zero()
    s = system(ring, w3="a3", w4="a4", w8="a3*a5", w9="a4*a5", w12="a3*a4*a5")
    assert wu_rhs(s, 4, 8) == s[4] * s[8] + s[12]


def test_wu_rhs_trivial_system_vanishes():
    ring = make_ring(7, 3)
    s = CharClassSystem.trivial(ring)
    for j in range(1, ring.top_degree + 1):
        for i in range(1, j + 1):
            assert wu_rhs(s, i, j).is_zero()


def test_wu_rhs_rejects_bad_pairs():
    s = CharClassSystem.trivial(make_ring(5, 2))
    with pytest.raises(ParameterError):
        wu_rhs(s, 3, 2)
    with pytest.raises(ParameterError):
        wu_rhs(s, 0, 2)


@st.composite
def any_system(draw):
    k = draw(st.integers(1, 4))
    n = draw(st.integers(k + 1, 10))
    ring = make_ring(n, k)
    w = [1]
    for d in range(1, ring.top_degree + 1):
        bits = 0
        for m in ring.masks_in_degree(d):
            if draw(st.booleans()):
                bits |= 1 << m
        w.append(bits)
    return CharClassSystem(ring, tuple(w))


@settings(max_examples=200)
@given(any_system())
def test_wu_rhs_diagonal_is_square(s):
    for i in range(1, s.ring.top_degree + 1):
        assert wu_rhs(s, i, i) == s[i] * s[i]


# -- consistency ----------------------------------------------------------------


def test_trivial_system_is_consistent():
    for n, k in [(4, 2), (7, 3), (9, 4)]:
        ok, violations = is_wu_consistent(CharClassSystem.trivial(make_ring(n, k)))
        assert ok and violations == []


@pytest.mark.parametrize("n", [2, 3, 5, 9, 17])
def test_sphere_top_class_consistent_when_power_of_two(n):
    ring = make_ring(n, 1)
    top = system(ring, **{f"w{n - 1}": f"a{n - 1}"})
    assert is_wu_consistent(top).consistent
    assert is_wu_consistent(CharClassSystem.trivial(ring)).consistent


@pytest.mark.parametrize("n", [4, 6, 7, 8, 10, 13])
def test_sphere_top_class_killed_by_wu_otherwise(n):
    # d = n-1 = 2^t * s with s > 1: Sq^(2^t) w_(d - 2^t) = w_d leaves w_d = 0
    ring = make_ring(n, 1)
    top = system(ring, **{f"w{n - 1}": f"a{n - 1}"})
    assert not is_wu_consistent(top).consistent


def test_sphere_enumeration_counts():
    for n in range(2, 41):
        count = sum(1 for _ in enumerate_systems(make_ring(n, 1)))
        assert count == (2 if is_power_of_two(n - 1) else 1), n


def test_reported_violation():
    ring = make_ring(5, 2)
    ok, violations = is_wu_consistent(system(ring, w3="a3"))
    assert not ok
    by_pair = {(v.i, v.j): v for v in violations}
    v = by_pair[(1, 3)]
    assert str(v.lhs) == "a4" and v.rhs.is_zero()
    # Sq^1(w_2) = w_1 w_2 + w_3 is broken too
    assert str(by_pair[(1, 2)].rhs) == "a3"


def test_system_validation():
    ring = make_ring(5, 3)
    with pytest.raises(ParameterError):
        system(ring, w4="a2")
    with pytest.raises(ParameterError):
        CharClassSystem(ring, (0,) * (ring.top_degree + 1))
    with pytest.raises(ParameterError):
        system(ring, w10="a2")


@pytest.mark.parametrize(
    "ring,classes,expected",
    [
        (make_ring(5, 3), {}, None),
        (make_ring(7, 3), {4: "a4"}, 4),
        (make_ring(5, 3), {2: "a2", 4: "a4"}, 2),
    ],
)
def test_first_nonzero_degree(ring, classes, expected):
    assert first_nonzero_degree(CharClassSystem.from_classes(ring, classes)) == expected


# -- enumeration ---------------------------------------------------------------


def test_first_nonzero_one_is_empty_when_h1_vanishes():
    for n, k in [(4, 2), (7, 3), (9, 4)]:
        assert list(enumerate_systems(make_ring(n, k), first_nonzero=1)) == []


def test_first_nonzero_filter():
    ring = make_ring(5, 4)
    everything = list(enumerate_systems(ring))
    for f in range(1, 8):
        picked = list(enumerate_systems(ring, first_nonzero=f))
        assert picked == [s for s in everything if first_nonzero_degree(s) == f]


def test_budget_exceeded_reports_size():
    ring = make_ring(9, 5)
    assert state_space_size(ring) == 2**31
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_systems(ring)
    assert exc.value.state_space == 2**31


def test_cor22_needs_n_at_least_2k():
    with pytest.raises(HypothesisError):
        enumerate_systems(make_ring(5, 3), require_cor22=True)


def test_cor22_filter_zeroes_low_degrees():
    ring = make_ring(7, 3)
    for s in enumerate_systems(ring, require_wu=False, require_cor22=True):
        assert all(not s.bits(d) for d in range(1, 7) if d != 4)


def test_unfiltered_enumeration_covers_state_space():
    ring = make_ring(6, 3)
    assert sum(1 for _ in enumerate_systems(ring, require_wu=False)) == state_space_size(ring)


def _frozen_counts():
    return json.loads((SNAP / "enumeration_counts.json").read_text())["counts"]


def test_pruned_counts_match_frozen_brute_force():
    for key, row in _frozen_counts().items():
        n, k = map(int, key.split(","))
        ring = make_ring(n, k)
        assert sum(1 for _ in enumerate_systems(ring)) == row["wu"], key
        if "wu_cor22" in row:
            got = sum(1 for _ in enumerate_systems(ring, require_cor22=True))
            assert got == row["wu_cor22"], key


@pytest.mark.parametrize("n,k", [(3, 2), (5, 3), (7, 3), (5, 4), (9, 4)])
def test_pruned_set_equals_brute_force(n, k):
    ring = make_ring(n, k)
    assert set(enumerate_systems(ring)) == set(enumerate_systems(ring, prune=False))


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 3)])
def test_jsonl_snapshot_bit_exact(n, k):
    ring = make_ring(n, k)
    lines = [json.dumps(system_record(s, True)) for s in enumerate_systems(ring)]
    assert "\n".join(lines) + "\n" == (SNAP / f"enumerate_n{n}_k{k}.jsonl").read_text()


def test_enumerated_systems_are_consistent():
    ring = make_ring(5, 4)
    for s in enumerate_systems(ring):
        assert is_wu_consistent(s).consistent


# -- relations table ------------------------------------------------------------


def test_derive_relations_example():
    table = derive_relations(make_ring(7, 3), 2)
    v = table.verdicts
    assert v[4].verdict is Verdict.FREE_GENERATOR
    assert v[8].verdict is Verdict.FREE_GENERATOR
    assert v[12].verdict is Verdict.FORCED_PRODUCT and v[12].factors == (4, 8)
    for d in (1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14, 15):
        assert v[d].verdict is Verdict.FORCED_ZERO
    assert sorted(v) == list(range(1, 16))


def test_derive_relations_beyond_top():
    table = derive_relations(make_ring(7, 3), 5)
    assert all(r.verdict is Verdict.FORCED_ZERO for r in table.verdicts.values())


def test_derive_relations_refuses_small_n():
    with pytest.raises(HypothesisError):
        derive_relations(make_ring(7, 4), 2)
    with pytest.raises(HypothesisError):
        derive_relations(make_ring(5, 3), 2)


def test_derive_relations_deterministic_and_decompositions():
    ring = make_ring(40, 8)
    for q in range(0, 9):
        a, b = derive_relations(ring, q), derive_relations(ring, q)
        assert a == b
        for d, rel in a.verdicts.items():
            if rel.verdict is Verdict.FORCED_PRODUCT:
                assert sum(rel.factors) == d
                assert list(rel.factors) == sorted(set(rel.factors))
                assert all(f % (1 << q) == 0 and is_power_of_two(f) for f in rel.factors)
                assert len(rel.factors) > 1
            if d < 1 << q or d % (1 << q):
                assert rel.verdict is Verdict.FORCED_ZERO


def test_check_theorem2_single_class():
    ring = make_ring(7, 3)
    ok, violations = check_theorem2(system(ring, w4="a4"), 2)
    assert ok and not violations


def test_check_theorem2_on_enumerated_systems():
    ring = make_ring(7, 3)
    found = 0
    for s in enumerate_systems(ring, require_cor22=True, first_nonzero=4):
        found += 1
        assert check_theorem2(s, 2).ok
        assert s[12] == s[4] * s[8]
    assert found == 1


def test_check_theorem2_product_violation():
    # V_3(R^6) is the smallest acceptance ring where a forced product degree is nonzero
    ring = make_ring(6, 3)
    s = system(ring, w4="a4", w12="a3*a4*a5")
    ok, violations = check_theorem2(s, 2)
    assert not ok
    (v,) = violations
    assert v.degree == 12 and v.expected.is_zero() and str(v.actual) == "a3*a4*a5"


def test_check_theorem2_zero_violation():
    ring = make_ring(7, 3)
    ok, violations = check_theorem2(system(ring, w4="a4", w9="a4*a5"), 2)
    assert not ok and [v.degree for v in violations] == [9]


def test_check_theorem2_q_mismatch():
    ring = make_ring(7, 3)
    with pytest.raises(HypothesisError):
        check_theorem2(system(ring, w4="a4"), 3)
    with pytest.raises(HypothesisError):
        check_theorem2(CharClassSystem.trivial(ring), 2)


def test_verify_theorem2_records_wu_only_outcome():
    ring = make_ring(9, 4)
    strict = verify_theorem2(ring)
    loose = verify_theorem2(ring, require_cor22=False)
    assert strict.ok
    assert loose.total >= strict.total
    data = loose.to_json()
    assert set(data) >= {"systems", "per_q", "counterexamples", "not_power_of_two"}


def test_system_record_fields():
    ring = make_ring(7, 3)
    rec = system_record(system(ring, w4="a4"))
    assert rec == {"classes": {"4": ["a4"]}, "wu_consistent": True, "first_nonzero": 4, "theorem2_ok": True}
    rec = system_record(system(make_ring(5, 3), w2="a2", w4="a4"))
    assert rec["theorem2_ok"] is None


def test_theorem2_beyond_acceptance_rings():
    from stiefelsw.wu import theorem2_hypothesis

    rings_checked = 0
    for k in range(1, 6):
        for n in range(k + 1, 19):
            ring = make_ring(n, k)
            if not theorem2_hypothesis(ring):
                continue
            assert verify_theorem2(ring, budget=2**40).ok, ring
            rings_checked += 1
    assert rings_checked == sum(
        1 for k in range(1, 6) for n in range(k + 1, 19) if 4 * n > k * (k + 4)
    )
