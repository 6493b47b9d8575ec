"""Share-polynomial constructions for PolyDot-CMPC, AGE-CMPC and Entangled-CMPC.

Entangled-CMPC is AGE-CMPC with the exponent gap lam fixed to 0; it shares
the whole code path.  Secret exponents follow the published branch rules;
the zero-denominator conventions are:

  PolyDot p:  s == 1        -> p = t - 1
              otherwise     -> p = min((z-1) // (ts-t), t-1)
  AGE q:      lam == 0      -> q = t - 1   (all finite gap intervals empty)
              otherwise     -> q = min((z-1) // lam, t-1)
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import InternalBranchError, OutOfRange, ShapeMismatch, UnsupportedPartition

POLYDOT = "polydot"
AGE = "age"
ENTANGLED = "entangled"
SSMM_COUNT_ONLY = "ssmm"
GCSA_COUNT_ONLY = "gcsa-na"

CONSTRUCTIVE_SCHEMES = (POLYDOT, AGE, ENTANGLED)


@dataclass(frozen=True)
class SchemeParams:
    """Scheme identity plus the partition/collusion parameters.

    lam is the AGE exponent gap (0 for Entangled); PolyDot ignores it.
    allow_large_lambda permits lam > z, which is only meaningful for the
    gap-inefficiency checks and is rejected by the count formulas.
    """

    scheme: str
    s: int
    t: int
    z: int
    lam: int = 0
    allow_large_lambda: bool = dc_field(default=False, compare=False)

    def __post_init__(self):
        if self.scheme not in (POLYDOT, AGE, ENTANGLED, SSMM_COUNT_ONLY, GCSA_COUNT_ONLY):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.s < 1 or self.t < 1:
            raise ValueError("s and t must be positive")
        if self.z < 1:
            raise ValueError("z must be >= 1")
        if self.scheme == POLYDOT and self.s == 1 and self.t == 1:
            raise UnsupportedPartition("PolyDot-CMPC excludes s = t = 1")
        if self.scheme == ENTANGLED and self.lam != 0:
            raise ValueError("Entangled-CMPC fixes lam = 0")
        if self.scheme == AGE and self.lam < 0:
            raise OutOfRange("lam must be >= 0")
        if self.scheme == AGE and self.lam > self.z and not self.allow_large_lambda:
            raise OutOfRange("lam > z never helps; pass allow_large_lambda to build anyway")

    # -- derived scalars ---------------------------------------------------
    @property
    def theta_prime(self):
        return self.t * (2 * self.s - 1)

    @property
    def theta(self):
        return self.t * self.s + self.lam

    @property
    def p(self):
        if self.s == 1:
            return self.t - 1
        return min((self.z - 1) // (self.t * self.s - self.t), self.t - 1)

    @property
    def tau(self):
        return self.theta_prime - self.t * self.s - self.t

    @property
    def p_prime(self):
        if self.tau - self.z + 1 <= 0:
            raise OutOfRange("p' undefined unless z <= tau")
        return min((self.z - 1) // (self.tau - self.z + 1), self.t - 1)

    @property
    def q(self):
        if self.lam == 0:
            return self.t - 1
        return min((self.z - 1) // self.lam, self.t - 1)

    @property
    def upsilon_prime(self):
        ts, t, s = self.t * self.s, self.t, self.s
        return max(Fraction(ts - 2 * t - s + 2), Fraction(ts - 2 * t + 1, 2))


def coded_powers(params, side):
    """Exponent of each data block in the coded term, as {(block index): exp}.

    Side "A" indexes A^T blocks (i, j), side "B" indexes B blocks (k, l).
    Exponents are injective over blocks for every valid parameter choice.
    """
    s, t = params.s, params.t
    if params.scheme == POLYDOT:
        if side == "A":
            return {(i, j): i + t * j for i in range(t) for j in range(s)}
        if side == "B":
            tp = params.theta_prime
            return {(k, l): t * (s - 1 - k) + l * tp for k in range(s) for l in range(t)}
    elif params.scheme in (AGE, ENTANGLED):
        if side == "A":
            return {(i, j): j + s * i for i in range(t) for j in range(s)}
        if side == "B":
            th = params.theta
            return {(k, l): (s - 1 - k) + th * l for k in range(s) for l in range(t)}
    else:
        raise ValueError(f"{params.scheme} is count-only, no share construction")
    raise ValueError(f"unknown side {side!r}")


def _polydot_secret_a(params):
    s, t, z = params.s, params.t, params.z
    ts, tp, p = t * s, params.theta_prime, params.p
    if z > ts - t and s != 1 and t != 1:
        powers = [ts + tp * l + w for l in range(p) for w in range(ts - t)]
        powers += [ts + tp * p + u for u in range(z - p * (ts - t))]
        return sorted(powers), "F_A1"
    return [ts + tp * p + u for u in range(z)], "F_A2"


def _polydot_secret_b(params):
    s, t, z = params.s, params.t, params.z
    ts, tp, tau = t * s, params.theta_prime, params.tau
    if z > tau or t == 1 or s == 1:
        return [ts + tp * (t - 1) + r for r in range(z)], "F_B1"
    if 2 * z > tau + 1:
        pp = params.p_prime
        powers = [ts + tp * lp + d for lp in range(pp) for d in range(tau - z + 1)]
        powers += [ts + tp * pp + v for v in range(z - pp * (tau - z + 1))]
        return sorted(powers), "F_B2"
    return [ts + v for v in range(z)], "F_B3"


def _age_secret_a(params):
    s, t, z, lam = params.s, params.t, params.z, params.lam
    ts, th = t * s, params.theta
    if t == 1:
        return [s + u for u in range(z)], "S_A2"
    if z > lam:
        q = params.q
        powers = [ts + th * l + w for l in range(q) for w in range(lam)]
        powers += [ts + th * q + u for u in range(z - q * lam)]
        return sorted(powers), "S_A1"
    return [ts + u for u in range(z)], "S_A2"


def secret_powers(params, side, with_branch=False):
    """The z secret-term exponents for one side, per the published branches."""
    if params.scheme == POLYDOT:
        powers, branch = _polydot_secret_a(params) if side == "A" else _polydot_secret_b(params)
    elif params.scheme in (AGE, ENTANGLED):
        if side == "A":
            powers, branch = _age_secret_a(params)
        elif side == "B":
            powers, branch = (
                [params.t * params.s + params.theta * (params.t - 1) + r for r in range(params.z)],
                "S_B",
            )
        else:
            raise ValueError(f"unknown side {side!r}")
    else:
        raise ValueError(f"{params.scheme} is count-only, no share construction")
    if len(powers) != params.z or len(set(powers)) != params.z:
        raise InternalBranchError(f"secret power construction broken for {params}")
    return (powers, branch) if with_branch else powers


@dataclass
class SharePolynomial:
    """Sparse polynomial with matrix coefficients, exponent -> block."""

    terms: dict
    block_shape: tuple

    @property
    def support(self):
        return sorted(self.terms)

    @property
    def degree(self):
        return max(self.terms)

    def evaluate(self, field, alpha):
        acc = np.zeros(self.block_shape, dtype=np.int64)
        for exp, coeff in self.terms.items():
            acc = (acc + coeff * field.pow(alpha, exp)) % field.p
        return acc


def build_share(blocks, params, side, field, rng):
    """F(x) = C(x) + S(x): data blocks at the coded powers, fresh uniform
    random blocks at the secret powers."""
    coded = coded_powers(params, side)
    if set(coded) != set(blocks):
        raise ShapeMismatch("block grid does not match the partition spec")
    shapes = {b.shape for b in blocks.values()}
    if len(shapes) != 1:
        raise ShapeMismatch("blocks have inconsistent shapes")
    shape = shapes.pop()
    terms = {exp: field.reduce(blocks[idx]) for idx, exp in coded.items()}
    for exp in secret_powers(params, side):
        if exp in terms:
            raise AssertionError("secret power collides with a coded power")
        terms[exp] = field.rand_matrix(rng, shape)
    return SharePolynomial(terms=terms, block_shape=shape)


def evaluate_share(field, share, alpha):
    return share.evaluate(field, alpha)


def dump_share(share):
    """Documented text dump: one `exponent: rows` record per term."""
    lines = []
    for exp in share.support:
        rows = ";".join(",".join(str(int(v)) for v in row) for row in share.terms[exp])
        lines.append(f"{exp}: {rows}")
    return "\n".join(lines)
