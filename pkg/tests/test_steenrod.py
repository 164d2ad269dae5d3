import pytest

from stiefelsw.cohomology import CohomologyClass, make_ring
from stiefelsw.errors import ParameterError
from stiefelsw.steenrod import check_axioms, sq, sq_gen

from .oracles import cartan_sq_monomial, pascal_mod2


def test_sq_gen_examples():
    r52, r53 = make_ring(5, 2), make_ring(5, 3)
    assert sq_gen(r52, 1, 3) == r52.gen(4)
    assert sq_gen(r52, 1, 4).is_zero()
    for j in r53.generators:
        assert sq_gen(r53, 0, j) == r53.gen(j)
    assert sq_gen(r53, 2, 2) == r53.gen(4) == r53.gen(2) * r53.gen(2)


def test_sq_gen_rejects_non_generator():
    with pytest.raises(ParameterError):
        sq_gen(make_ring(5, 2), 1, 2)


def test_sq_examples():
    r = make_ring(7, 3)
    x = r.element("a4*a5")
    assert str(sq(r, 1, x)) == "a4*a6"
    assert sq(r, 9, x).is_zero()
    assert (x * x).is_zero()
    for i in range(1, 5):
        assert sq(r, i, r.one()).is_zero()


def test_sq_matches_unpruned_cartan_oracle():
    tri = pascal_mod2(64)
    for k in range(1, 5):
        for n in range(k + 1, 13):
            ring = make_ring(n, k)
            for m in range(1 << ring.k):
                idx = ring.mask_indices(m)
                for i in range(0, sum(idx) + 2):
                    expected = cartan_sq_monomial(n, i, idx, tri)
                    got = sq(ring, i, CohomologyClass(ring, 1 << m))
                    assert sorted(t.indices for t in got.terms) == sorted(expected), (ring, idx, i)


@pytest.mark.parametrize("n,k", [(5, 2), (9, 3), (12, 4)])
def test_axioms_hold(n, k):
    report = check_axioms(make_ring(n, k))
    assert report.ok, report.failures
    assert set(report.checked) == {"sq0_identity", "instability", "squaring", "cartan", "adem"}


def test_axiom_checker_detects_broken_rule(monkeypatch):
    import stiefelsw.steenrod as steenrod

    monkeypatch.setattr(steenrod, "is_odd_binom", lambda a, b: b == 0 or b <= a)
    report = check_axioms(make_ring(9, 3))
    assert not report.ok
