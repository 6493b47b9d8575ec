import pytest
from hypothesis import given, strategies as st

from cmpc.codes import AGE, ENTANGLED, POLYDOT, SchemeParams, coded_powers
from cmpc.powerset import (
    PowerSet,
    check_decodability,
    h_support,
    important_powers,
    minkowski_sum,
)

small_sets = st.sets(st.integers(0, 40), max_size=8)


def test_minkowski_identity_element():
    s = PowerSet({3, 5, 9})
    assert minkowski_sum(PowerSet({0}), s) == s


def test_minkowski_enumeration():
    assert minkowski_sum(PowerSet({0, 1}), PowerSet({0, 2})) == PowerSet({0, 1, 2, 3})


@given(small_sets, small_sets)
def test_minkowski_commutes(a, b):
    assert minkowski_sum(PowerSet(a), PowerSet(b)) == minkowski_sum(PowerSet(b), PowerSet(a))


@given(small_sets, small_sets, small_sets)
def test_minkowski_associative(a, b, c):
    pa, pb, pc = PowerSet(a), PowerSet(b), PowerSet(c)
    assert minkowski_sum(pa, minkowski_sum(pb, pc)) == minkowski_sum(minkowski_sum(pa, pb), pc)


def test_rejects_negative_powers():
    with pytest.raises(ValueError):
        PowerSet({-1, 2})


def test_polydot_coded_product_support():
    # D1 for PolyDot s=t=2 spans 0..t*theta'-1 = 0..11
    params = SchemeParams(POLYDOT, 2, 2, 2)
    d1 = minkowski_sum(
        PowerSet(coded_powers(params, "A").values()),
        PowerSet(coded_powers(params, "B").values()),
    )
    assert d1 == PowerSet(range(12))


def test_h_support_example_age():
    params = SchemeParams(AGE, 2, 2, 2, 2)
    support = h_support(params)
    assert support == PowerSet(range(17))
    assert len(support) == 17


def test_h_support_entangled_vs_quoted_count():
    # the published Entangled count for (2,2,2) is 19; the published
    # construction's support is one shorter (a documented erratum), and the
    # support is what the oracle counts
    params = SchemeParams(ENTANGLED, 2, 2, 2)
    assert len(h_support(params)) == 18


def test_important_powers_polydot():
    params = SchemeParams(POLYDOT, 2, 2, 2)
    assert important_powers(params) == PowerSet({2, 3, 8, 9})


def test_important_powers_age_example():
    params = SchemeParams(AGE, 2, 2, 2, 2)
    assert important_powers(params) == PowerSet({1, 3, 7, 9})


def test_important_powers_single_output_block():
    params = SchemeParams(AGE, 3, 1, 2, 0)
    assert important_powers(params) == PowerSet({2})  # {s-1}


def test_decodability_grid():
    for s in range(1, 7):
        for t in range(1, 7):
            if s * t > 36:
                continue
            for z in range(1, 11):
                for lam in range(0, min(z, 4) + 1):
                    if lam > z:
                        continue
                    params = SchemeParams(AGE, s, t, z, lam)
                    report = check_decodability(params)
                    assert report["ok"], (s, t, z, lam, report)
                    assert report["important_count"] == t * t


def test_decodability_sabotage(monkeypatch):
    # shift S_B down into the important range: collisions must be detected
    import cmpc.codes as codes_mod

    params = SchemeParams(AGE, 2, 2, 2, 2)
    assert check_decodability(params)["ok"]
    original = codes_mod.secret_powers

    def shifted(params_, side, with_branch=False):
        powers = original(params_, side)
        if side == "B":
            powers = [e - 9 for e in powers]  # lands on important powers 1, 3
        return (powers, "sabotage") if with_branch else powers

    monkeypatch.setattr(codes_mod, "secret_powers", shifted)
    report = check_decodability(params)
    assert not report["ok"] and report["collisions"]


def test_decodability_trivial_t1_s1():
    params = SchemeParams(AGE, 1, 1, 1, 0)
    report = check_decodability(params)
    assert report["ok"] and report["important_count"] == 1


def test_h_support_cardinality_is_oracle_for_polydot_example():
    params = SchemeParams(POLYDOT, 2, 2, 2)
    assert len(h_support(params)) == 17
