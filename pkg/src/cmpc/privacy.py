"""Collusion-privacy checks.

The masking argument: the z random coefficients of each share map onto the
z observed residuals through the generalized Vandermonde on the secret
power set.  When that matrix is nonsingular for every component of the
colluders' view, the view is uniform whatever the data.  We verify the
rank condition exactly and, on tiny fields, the resulting uniformity by
full enumeration.
"""

from itertools import product

import numpy as np

from . import codes
from .errors import TooLargeForExhaustive
from .field import rank_mod_p

EXHAUSTIVE_LIMIT = 100_000


def _nonsingular(field, alphas_subset, powers):
    rows = [[field.pow(a, e) for e in powers] for a in alphas_subset]
    return rank_mod_p(field, rows) == len(powers)


def masking_rank_check(params, field, alphas, subset):
    """True iff every masked component of a z-subset's view is uniform.

    Checks the z x z systems alpha_n^{power_w} for the secret powers of F_A,
    F_B and of the exchanged G polynomials (powers t^2 .. t^2+z-1).
    """
    if len(subset) != params.z:
        raise ValueError("subset size must equal z")
    pts = [alphas[n] for n in subset]
    t, z = params.t, params.z
    checks = (
        codes.secret_powers(params, "A"),
        codes.secret_powers(params, "B"),
        list(range(t * t, t * t + z)),
    )
    return all(_nonsingular(field, pts, powers) for powers in checks)


def collusion_out_of_model(params, subset):
    """Subsets larger than z are outside the attack model; flag, don't claim."""
    return len(subset) > params.z


def _enumerate_matrices(p, shape):
    cells = int(np.prod(shape))
    for values in product(range(p), repeat=cells):
        yield np.array(values, dtype=np.int64).reshape(shape)


def exhaustive_uniformity_test(field, params, m, secrets_one, secrets_two, alpha, ablate=False):
    """Enumerate every mask choice and compare single-worker view multisets
    for two different secret inputs.

    Tiny configurations only (p <= 13, m <= 2, z = 1, t = 1).  The view is
    checked component-wise: the share pair (F_A(alpha), F_B(alpha)) over all
    (A-mask, B-mask), and one exchanged value G(alpha) over its mask.  With
    masking ablated the multisets must differ, which the caller asserts.
    Returns the two multisets as dicts: {"shares": ..., "exchanged": ...}.
    """
    if field.p > 13 or m > 2 or params.z != 1 or params.t != 1:
        raise TooLargeForExhaustive("uniformity enumeration needs p<=13, m<=2, z=1, t=1")
    s, t = params.s, params.t
    mask_a_shape = (m // t, m // s)
    mask_b_shape = (m // s, m // t)
    mask_g_shape = (m // t, m // t)
    n_states = field.p ** (
        mask_a_shape[0] * mask_a_shape[1] + mask_b_shape[0] * mask_b_shape[1]
    )
    if n_states > EXHAUSTIVE_LIMIT:
        raise TooLargeForExhaustive(f"{n_states} mask states exceed the limit")

    from .partition import PartitionSpec, split

    spec = PartitionSpec(m, s, t)
    results = []
    for A, B in (secrets_one, secrets_two):
        blocks_a = split(field.reduce(A), spec, "A_transposed")
        blocks_b = split(field.reduce(B), spec, "B")
        ca = codes.coded_powers(params, "A")
        cb = codes.coded_powers(params, "B")
        (sa_exp,) = codes.secret_powers(params, "A")
        (sb_exp,) = codes.secret_powers(params, "B")
        base_a = sum(
            blocks_a[idx] * field.pow(alpha, e) for idx, e in ca.items()
        ) % field.p
        base_b = sum(
            blocks_b[idx] * field.pow(alpha, e) for idx, e in cb.items()
        ) % field.p
        share_views = {}
        for mask_a in _enumerate_matrices(field.p, mask_a_shape):
            fa = (base_a + (0 if ablate else mask_a) * field.pow(alpha, sa_exp)) % field.p
            for mask_b in _enumerate_matrices(field.p, mask_b_shape):
                fb = (base_b + (0 if ablate else mask_b) * field.pow(alpha, sb_exp)) % field.p
                key = (fa.tobytes(), fb.tobytes())
                share_views[key] = share_views.get(key, 0) + 1
        # one exchanged value: r*H(alpha') + mask * alpha^{t^2}; the data
        # enters through H, so probe with H built from the actual product
        h_val = field.matmul(field.reduce(np.asarray(A).T), field.reduce(B))
        g_views = {}
        for mask_g in _enumerate_matrices(field.p, mask_g_shape):
            g = (h_val + (0 if ablate else mask_g) * field.pow(alpha, t * t)) % field.p
            key = g.tobytes()
            g_views[key] = g_views.get(key, 0) + 1
        results.append({"shares": share_views, "exchanged": g_views})
    return results[0], results[1]


def _batch_dets(field, mats):
    """Determinants mod p of a (batch, z, z) int array, z <= 3 closed form."""
    p = field.p
    mats = mats % p
    z = mats.shape[1]
    if z == 1:
        return mats[:, 0, 0]
    if z == 2:
        return (mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]) % p
    if z == 3:
        a = mats[:, 0, 0] * ((mats[:, 1, 1] * mats[:, 2, 2] - mats[:, 1, 2] * mats[:, 2, 1]) % p)
        b = mats[:, 0, 1] * ((mats[:, 1, 0] * mats[:, 2, 2] - mats[:, 1, 2] * mats[:, 2, 0]) % p)
        c = mats[:, 0, 2] * ((mats[:, 1, 0] * mats[:, 2, 1] - mats[:, 1, 1] * mats[:, 2, 0]) % p)
        return (a - b + c) % p
    raise ValueError("batch determinant supports z <= 3")


def batch_masking_rank_check(params, field, alphas, subsets):
    """Vectorized masking_rank_check over many z-subsets (z <= 3).

    Returns a boolean array, one verdict per subset; agrees with the scalar
    masking_rank_check elementwise.
    """
    t, z = params.t, params.z
    power_sets = (
        codes.secret_powers(params, "A"),
        codes.secret_powers(params, "B"),
        list(range(t * t, t * t + z)),
    )
    subs = np.asarray(list(subsets), dtype=np.int64)
    pts = np.asarray(alphas, dtype=np.int64)[subs]  # (batch, z)
    ok = np.ones(len(subs), dtype=bool)
    for powers in power_sets:
        mats = np.stack(
            [np.stack([pow_mod(field, pts[:, n], e) for e in powers], axis=1) for n in range(z)],
            axis=1,
        )  # (batch, z, z)
        ok &= _batch_dets(field, mats) != 0
    return ok


def pow_mod(field, values, exponent):
    """Elementwise modular power of an int64 array."""
    result = np.ones_like(values)
    base = values % field.p
    e = exponent
    while e:
        if e & 1:
            result = result * base % field.p
        base = base * base % field.p
        e >>= 1
    return result


def subset_survey(params, field, alphas, limit=10_000, rng=None):
    """Rank-check every z-subset when feasible, else a random sample.

    Returns (checked, failures).
    """
    from itertools import combinations
    from math import comb

    n = len(alphas)
    z = params.z
    failures = []
    if comb(n, z) <= limit:
        subsets = combinations(range(n), z)
        checked = 0
        for sub in subsets:
            checked += 1
            if not masking_rank_check(params, field, alphas, list(sub)):
                failures.append(sub)
        return checked, failures
    rng = rng or np.random.default_rng(0)
    for _ in range(limit):
        sub = sorted(rng.choice(n, size=z, replace=False).tolist())
        if not masking_rank_check(params, field, alphas, sub):
            failures.append(tuple(sub))
    return limit, failures
