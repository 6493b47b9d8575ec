"""Three-phase protocol simulation: sources share, workers compute and
exchange, the master reconstructs Y = A^T B.

Workers are deterministic in-process actors; one synchronous all-to-all
round carries the exchanged evaluations.  The transcript records every
delivered value and the per-worker operation counters that the cost
formulas predict.  Counter increments sit next to the arithmetic they
account for, so the audit compares formulas against actually-performed work.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import codes, partition, powerset
from .counts import recovery_threshold
from .errors import InsufficientEvaluations, SingularVandermonde
from .field import PrimeField, draw_eval_points, lagrange_interpolate

MAX_ALPHA_REDRAWS = 8


@dataclass
class ProtocolConfig:
    params: codes.SchemeParams
    m: int
    field: PrimeField = dc_field(default_factory=PrimeField)
    seed: int = 0
    responding_workers: list | None = None
    n_workers: int | None = None  # defaults to |P(H)| for the params

    def __post_init__(self):
        self.spec = partition.PartitionSpec(self.m, self.params.s, self.params.t)
        if self.n_workers is None:
            self.n_workers = len(powerset.h_support(self.params))
        if self.params.z >= self.n_workers / 2:
            # the attack model assumes a colluding minority; constructions
            # only use z, so this is a warning rather than an error
            self.minority_warning = True
        else:
            self.minority_warning = False


@dataclass
class Transcript:
    alphas: list
    shares_a: list
    shares_b: list
    share_poly_a: object = None
    share_poly_b: object = None
    h_values: list = dc_field(default_factory=list)
    g_values: dict = dc_field(default_factory=dict)  # sender -> (n_workers, mt, mt) array
    i_values: list = dc_field(default_factory=list)
    mults: list = dc_field(default_factory=list)
    stored: list = dc_field(default_factory=list)
    exchanged: int = 0
    messages: int = 0

    def count_mults(self, worker, amount):
        self.mults[worker] += amount

    def count_stored(self, worker, amount):
        self.stored[worker] += amount

    def dump(self):
        """Line-oriented audit dump: phase,worker,kind,count."""
        lines = []
        for n in range(len(self.mults)):
            lines.append(f"1,{n},stored_shares,{self.shares_a[n].size + self.shares_b[n].size}")
        for n in range(len(self.mults)):
            lines.append(f"2,{n},mults,{self.mults[n]}")
            lines.append(f"2,{n},stored,{self.stored[n]}")
        lines.append(f"2,-,exchanged,{self.exchanged}")
        lines.append(f"2,-,messages,{self.messages}")
        for n in range(len(self.i_values)):
            lines.append(f"3,{n},i_value,{self.i_values[n].size}")
        return "\n".join(lines)


def rng_streams(seed, n_workers):
    """Domain-separated generators: sources, point draw, one per worker."""
    kids = np.random.SeedSequence(seed).spawn(3 + n_workers)
    rngs = [np.random.default_rng(k) for k in kids]
    return rngs[0], rngs[1], rngs[2], rngs[3:]


def phase1_share(A, B, config, rng_a, rng_b, rng_alpha):
    """Sources split, build F_A/F_B, and deliver evaluations to workers."""
    f = config.field
    blocks_a = partition.split(f.reduce(A), config.spec, "A_transposed")
    blocks_b = partition.split(f.reduce(B), config.spec, "B")
    share_a = codes.build_share(blocks_a, config.params, "A", f, rng_a)
    share_b = codes.build_share(blocks_b, config.params, "B", f, rng_b)
    alphas = draw_eval_points(f, config.n_workers, rng_alpha)
    tr = Transcript(
        alphas=alphas,
        shares_a=[share_a.evaluate(f, a) for a in alphas],
        shares_b=[share_b.evaluate(f, a) for a in alphas],
        share_poly_a=share_a,
        share_poly_b=share_b,
        mults=[0] * config.n_workers,
        stored=[0] * config.n_workers,
    )
    for n in range(config.n_workers):
        tr.count_stored(n, tr.shares_a[n].size + tr.shares_b[n].size)
    return share_a, share_b, tr


def extraction_table(config, alphas):
    """r_n^{(i,l)} for every important power, known to all workers.

    Needs exactly one evaluation point per element of P(H); a singular
    generalized Vandermonde raises for the caller to redraw the points.
    One shared inverse serves all t^2 targets (its columns are the
    per-target coefficient vectors of sparse_extraction_coefficients).
    """
    from .field import extraction_inverse

    f = config.field
    params = config.params
    support = list(powerset.h_support(params))
    if len(alphas) != len(support):
        raise ValueError("worker count must equal |P(H)| for coefficient extraction")
    vinv = extraction_inverse(f, alphas, support)
    index = {power: k for k, power in enumerate(support)}
    t = params.t
    table = {}
    for i in range(t):
        for l in range(t):
            u = powerset.important_power_of(params, i, l)
            table[(i, l)] = [int(v) for v in vinv[:, index[u]]]
    return table


def phase2_compute_exchange(config, tr, rng_workers, r_table=None):
    """Workers form H, mask it into G_n(x), and exchange evaluations."""
    f = config.field
    params = config.params
    t, z = params.t, params.z
    n_workers = config.n_workers
    mt = config.m // t
    if r_table is None:
        r_table = extraction_table(config, tr.alphas)

    tr.h_values = []
    for n in range(n_workers):
        h_n = f.matmul(tr.shares_a[n], tr.shares_b[n])
        tr.count_mults(n, tr.shares_a[n].shape[0] * tr.shares_a[n].shape[1] * tr.shares_b[n].shape[1])
        tr.count_stored(n, h_n.size)
        tr.h_values.append(h_n)

    g_polys = []
    for n in range(n_workers):
        # t^2 scaled copies of H at exponents i+tl, then z random terms
        terms = {}
        for i in range(t):
            for l in range(t):
                coeff = (r_table[(i, l)][n] * tr.h_values[n]) % f.p
                tr.count_mults(n, mt * mt)
                terms[i + t * l] = coeff
        tr.count_stored(n, t * t)  # the r coefficients themselves
        rng = rng_workers[n]
        for w in range(z):
            mask = f.rand_matrix(rng, (mt, mt))
            terms[t * t + w] = mask
            tr.count_stored(n, mask.size)
        g_polys.append(codes.SharePolynomial(terms=terms, block_shape=(mt, mt)))

    # evaluate every G_n at every alpha in one modular contraction; the
    # counters account for the same scalar products the loop form would do:
    # (t^2 + z - 1) per point and worker, the constant term being free
    exps = sorted(g_polys[0].terms)
    power_table = np.array(
        [[f.pow(a, e) for e in exps] for a in tr.alphas], dtype=np.int64
    )  # (n_workers, n_terms)
    if len(exps) * (f.p - 1) ** 2 >= 2**63:
        raise OverflowError("prime too large for vectorized evaluation")
    i_acc = np.zeros((n_workers, mt, mt), dtype=np.int64)
    block = mt * mt
    for n in range(n_workers):
        coeffs = np.stack([g_polys[n].terms[e] for e in exps])  # (n_terms, mt, mt)
        values = np.einsum("ke,kij->eij", power_table.T, coeffs) % f.p
        tr.count_mults(n, n_workers * (len(exps) - 1) * block)
        i_acc = (i_acc + values) % f.p
        tr.g_values[n] = values
        # sender keeps all n_workers computed values; each of the n_workers-1
        # peers stores the copy it receives
        tr.count_stored(n, n_workers * block)
        tr.exchanged += (n_workers - 1) * block
        tr.messages += n_workers - 1
    for n in range(n_workers):
        tr.count_stored(n, (n_workers - 1) * block)

    tr.i_values = []
    for n in range(n_workers):
        tr.count_stored(n, block)
        tr.i_values.append(i_acc[n])
    return tr


def phase3_reconstruct(config, responses):
    """Interpolate I(x) from (alpha, I(alpha)) pairs and assemble Y."""
    params = config.params
    t, z = params.t, params.z
    threshold = recovery_threshold(t, z)
    if len(responses) < threshold:
        raise InsufficientEvaluations(
            f"master needs {threshold} responses, got {len(responses)}"
        )
    coeffs = lagrange_interpolate(config.field, responses, t * t + z - 1)
    blocks = {}
    for g in range(t * t):
        blocks[(g % t, g // t)] = coeffs[g]
    return partition.assemble_product(blocks)


def run_protocol(A, B, config):
    """Full run.  Returns (Y, transcript); redraws evaluation points when the
    extraction system comes out singular."""
    for attempt in range(MAX_ALPHA_REDRAWS):
        rng_a, rng_b, rng_alpha, rng_workers = rng_streams(
            config.seed + attempt * 7919, config.n_workers
        )
        _, _, tr = phase1_share(A, B, config, rng_a, rng_b, rng_alpha)
        try:
            r_table = extraction_table(config, tr.alphas)
        except SingularVandermonde:
            continue
        phase2_compute_exchange(config, tr, rng_workers, r_table)
        responders = config.responding_workers
        if responders is None:
            responders = list(range(config.n_workers))
        responses = [(tr.alphas[n], tr.i_values[n]) for n in responders]
        Y = phase3_reconstruct(config, responses)
        return Y, tr
    raise SingularVandermonde(f"no invertible point set after {MAX_ALPHA_REDRAWS} draws")


def interpolation_rank(config, alphas_subset):
    """Rank of the master's interpolation system for a response subset."""
    from .field import rank_mod_p

    t, z = config.params.t, config.params.z
    rows = [[config.field.pow(a, k) for k in range(t * t + z)] for a in alphas_subset]
    return rank_mod_p(config.field, rows)


def dense_reference_product(field, A, B):
    """Oracle: dense A^T B over the field."""
    return field.matmul(field.reduce(np.asarray(A).T), field.reduce(B))
