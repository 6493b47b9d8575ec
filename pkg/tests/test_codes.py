import numpy as np
import pytest

from cmpc.codes import (
    AGE,
    ENTANGLED,
    POLYDOT,
    SchemeParams,
    build_share,
    coded_powers,
    dump_share,
    evaluate_share,
    secret_powers,
)
from cmpc.errors import OutOfRange, ShapeMismatch, UnsupportedPartition
from cmpc.field import PrimeField
from cmpc.partition import PartitionSpec, split
from cmpc.powerset import check_decodability


def test_age_coded_powers_example():
    params = SchemeParams(AGE, 2, 2, 2, 2)
    assert coded_powers(params, "A") == {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    assert coded_powers(params, "B") == {(1, 0): 0, (0, 0): 1, (1, 1): 6, (0, 1): 7}


def test_polydot_coded_powers_b():
    params = SchemeParams(POLYDOT, 2, 2, 2)
    assert sorted(coded_powers(params, "B").values()) == [0, 2, 6, 8]


def test_age_secret_powers_example():
    params = SchemeParams(AGE, 2, 2, 2, 2)
    assert secret_powers(params, "A") == [4, 5]
    assert secret_powers(params, "B") == [10, 11]


def test_polydot_secret_powers_low_z_branch():
    # z = 2 <= ts - t = 2 routes to the single-run branch with p = 0
    params = SchemeParams(POLYDOT, 2, 2, 2)
    powers, branch = secret_powers(params, "A", with_branch=True)
    assert powers == [4, 5] and branch == "F_A2"


def test_polydot_rejects_no_partition():
    with pytest.raises(UnsupportedPartition):
        SchemeParams(POLYDOT, 1, 1, 3)


def test_lambda_out_of_range():
    with pytest.raises(OutOfRange):
        SchemeParams(AGE, 2, 2, 2, 3)
    SchemeParams(AGE, 2, 2, 2, 3, allow_large_lambda=True)  # large-gap probe


def test_entangled_is_age_lambda_zero():
    for s in range(1, 5):
        for t in range(1, 5):
            for z in range(1, 6):
                ent = SchemeParams(ENTANGLED, s, t, z)
                age0 = SchemeParams(AGE, s, t, z, 0)
                for side in "AB":
                    assert coded_powers(ent, side) == coded_powers(age0, side)
                    assert secret_powers(ent, side) == secret_powers(age0, side)


def test_degree_shift_lambda_z_vs_zero():
    # deg F_B grows by exactly z*(t-1) when the gap moves from 0 to z
    for s in range(1, 5):
        for t in range(2, 6):
            for z in range(1, 6):
                hi = SchemeParams(AGE, s, t, z, z)
                lo = SchemeParams(AGE, s, t, z, 0)
                deg_hi = max(
                    max(coded_powers(hi, "B").values()), max(secret_powers(hi, "B"))
                )
                deg_lo = max(
                    max(coded_powers(lo, "B").values()), max(secret_powers(lo, "B"))
                )
                assert deg_hi - deg_lo == z * (t - 1)


def test_conditions_hold_construction_grid():
    # C1-C3 / C4-C6 verified pointwise through the decodability check
    for scheme in (POLYDOT, AGE):
        for s in range(1, 6):
            for t in range(1, 6):
                if scheme == POLYDOT and s == t == 1:
                    continue
                for z in (1, 2, 5, 9):
                    lams = range(0, z + 1) if scheme == AGE else (0,)
                    for lam in lams:
                        params = SchemeParams(scheme, s, t, z, lam)
                        assert check_decodability(params)["ok"], (scheme, s, t, z, lam)
                        sa = set(secret_powers(params, "A"))
                        sb = set(secret_powers(params, "B"))
                        assert len(sa) == z and len(sb) == z
                        assert not sa & set(coded_powers(params, "A").values())
                        assert not sb & set(coded_powers(params, "B").values())


def _shares_for(seed, params=None, m=4):
    field = PrimeField(101)
    params = params or SchemeParams(AGE, 2, 2, 2, 2)
    spec = PartitionSpec(m, params.s, params.t)
    rng = np.random.default_rng(seed)
    A = field.rand_matrix(rng, (m, m))
    blocks = split(A, spec, "A_transposed")
    return build_share(blocks, params, "A", field, np.random.default_rng(seed + 1)), field


def test_build_share_secret_count_and_layout():
    share, _ = _shares_for(0)
    assert share.support == [0, 1, 2, 3, 4, 5]  # worked example layout
    assert len([e for e in share.support if e >= 4]) == 2  # z secret terms


def test_build_share_deterministic():
    s1, _ = _shares_for(3)
    s2, _ = _shares_for(3)
    assert s1.support == s2.support
    assert all(np.array_equal(s1.terms[e], s2.terms[e]) for e in s1.support)


def test_build_share_shape_mismatch():
    field = PrimeField(101)
    params = SchemeParams(AGE, 2, 2, 2, 2)
    blocks = {(i, j): np.zeros((2, 2), dtype=np.int64) for i in range(2) for j in range(2)}
    blocks[(0, 0)] = np.zeros((3, 3), dtype=np.int64)
    with pytest.raises(ShapeMismatch):
        build_share(blocks, params, "A", field, np.random.default_rng(0))


def test_evaluate_at_one_sums_coefficients():
    share, field = _shares_for(5)
    total = sum(share.terms.values()) % field.p
    assert np.array_equal(evaluate_share(field, share, 1), total)


def test_evaluate_mod_wraparound():
    # 2^3 = 8 = 1 mod 7: a single cubic term evaluates to its coefficient
    from cmpc.codes import SharePolynomial

    field = PrimeField(7)
    c = np.array([[3, 5], [1, 2]])
    share = SharePolynomial(terms={3: c}, block_shape=(2, 2))
    assert np.array_equal(evaluate_share(field, share, 2), c)


def test_evaluate_matches_dense_horner():
    share, field = _shares_for(9)
    for alpha in (2, 17, 53):
        dense = [share.terms.get(e, np.zeros((2, 2), dtype=np.int64)) for e in range(share.degree + 1)]
        acc = np.zeros((2, 2), dtype=np.int64)
        for coeff in reversed(dense):
            acc = (acc * alpha + coeff) % field.p
        assert np.array_equal(evaluate_share(field, share, alpha), acc)


def test_dump_share_format():
    share, _ = _shares_for(1)
    lines = dump_share(share).splitlines()
    assert len(lines) == len(share.support)
    assert lines[0].startswith("0: ")
