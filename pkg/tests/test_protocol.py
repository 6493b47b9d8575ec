import numpy as np
import pytest

from cmpc.codes import AGE, ENTANGLED, POLYDOT, SchemeParams
from cmpc.counts import recovery_threshold
from cmpc.errors import InsufficientEvaluations
from cmpc.field import PrimeField
from cmpc.protocol import (
    ProtocolConfig,
    dense_reference_product,
    interpolation_rank,
    phase3_reconstruct,
    run_protocol,
)

FIELD = PrimeField()


def _run(scheme, s, t, z, m, seed=0, lam=None, responding=None):
    if scheme == AGE:
        params = SchemeParams(AGE, s, t, z, z if lam is None else lam)
    elif scheme == ENTANGLED:
        params = SchemeParams(ENTANGLED, s, t, z, 0)
    else:
        params = SchemeParams(POLYDOT, s, t, z)
    config = ProtocolConfig(params=params, m=m, field=FIELD, seed=seed, responding_workers=responding)
    rng = np.random.default_rng(seed + 100)
    A = FIELD.rand_matrix(rng, (m, m))
    B = FIELD.rand_matrix(rng, (m, m))
    Y, tr = run_protocol(A, B, config)
    return A, B, Y, tr, config


def test_identity_inputs_identity_output():
    params = SchemeParams(AGE, 2, 2, 1, 1)
    config = ProtocolConfig(params=params, m=4, field=FIELD, seed=1)
    eye = np.eye(4, dtype=np.int64)
    Y, _ = run_protocol(eye, eye, config)
    assert np.array_equal(Y, eye)


def test_end_to_end_age_example():
    A, B, Y, _, config = _run(AGE, 2, 2, 2, 12, seed=7)
    assert config.n_workers == 17
    assert np.array_equal(Y, dense_reference_product(FIELD, A, B))


def test_end_to_end_polydot_example():
    A, B, Y, _, config = _run(POLYDOT, 2, 2, 2, 12, seed=9)
    assert config.n_workers == 17
    assert np.array_equal(Y, dense_reference_product(FIELD, A, B))


def test_straggler_subset_suffices():
    # any t^2+z responses reconstruct; pick an arbitrary subset of 6 from 17
    responding = [16, 3, 11, 7, 0, 9]
    A, B, Y, _, _ = _run(AGE, 2, 2, 2, 12, seed=5, responding=responding)
    assert np.array_equal(Y, dense_reference_product(FIELD, A, B))


def test_every_subset_small_instance():
    from itertools import combinations

    A, B, _, tr, config = _run(AGE, 3, 2, 2, 12, seed=11, lam=None)
    threshold = recovery_threshold(2, 2)
    ref = dense_reference_product(FIELD, A, B)
    count = 0
    for subset in combinations(range(config.n_workers), threshold):
        responses = [(tr.alphas[n], tr.i_values[n]) for n in subset]
        assert np.array_equal(phase3_reconstruct(config, responses), ref)
        count += 1
        if count >= 60:  # a healthy sample; the acceptance suite goes wider
            break


def test_below_threshold_rejected():
    _, _, _, tr, config = _run(AGE, 2, 2, 2, 4, seed=2)
    threshold = recovery_threshold(2, 2)
    responses = [(tr.alphas[n], tr.i_values[n]) for n in range(threshold - 1)]
    with pytest.raises(InsufficientEvaluations):
        phase3_reconstruct(config, responses)


def test_one_short_subset_rank_deficient_by_one():
    _, _, _, tr, config = _run(AGE, 2, 2, 2, 4, seed=3)
    threshold = recovery_threshold(2, 2)
    rank = interpolation_rank(config, tr.alphas[: threshold - 1])
    assert rank == threshold - 1  # t^2+z unknowns, deficiency exactly 1


def test_transcript_deterministic():
    _, _, _, tr1, _ = _run(POLYDOT, 2, 2, 1, 4, seed=13)
    _, _, _, tr2, _ = _run(POLYDOT, 2, 2, 1, 4, seed=13)
    assert tr1.alphas == tr2.alphas
    assert tr1.dump() == tr2.dump()
    assert all(np.array_equal(a, b) for a, b in zip(tr1.i_values, tr2.i_values))


def test_transcript_message_count():
    _, _, _, tr, config = _run(AGE, 2, 2, 2, 4, seed=4)
    n = config.n_workers
    assert tr.messages == n * (n - 1)


def test_share_delivery_sizes():
    # each worker receives 2 * m^2/(st) scalars in phase 1
    _, _, _, tr, config = _run(AGE, 2, 2, 2, 12, seed=6)
    per_worker = tr.shares_a[0].size + tr.shares_b[0].size
    assert per_worker == 2 * 12 * 12 // (2 * 2)


def test_grid_correctness_all_schemes():
    for m in (4, 6):
        for s in (1, 2, 3):
            for t in (1, 2, 3):
                if m % s or m % t:
                    continue
                for scheme in (AGE, ENTANGLED, POLYDOT):
                    if scheme == POLYDOT and s == t == 1:
                        continue
                    A, B, Y, _, _ = _run(scheme, s, t, 2, m, seed=17)
                    assert np.array_equal(Y, dense_reference_product(FIELD, A, B)), (
                        scheme,
                        m,
                        s,
                        t,
                    )


def test_minority_warning_flag():
    params = SchemeParams(AGE, 1, 2, 3, 3)
    config = ProtocolConfig(params=params, m=4, field=FIELD, seed=0)
    # z = 3 vs N: the flag reflects the attack-model assumption z < N/2
    assert config.minority_warning == (3 >= config.n_workers / 2)
