"""The set-of-powers calculus and the brute-force support oracle.

h_support enumerates the exact support of H(x) = F_A(x) F_B(x) from the
construction, as the union of the four Minkowski sums of coded/secret power
sets.  Its cardinality is the required worker count, independent of any
closed form; the count formulas are checked against it pointwise.
"""

import numpy as np

from . import codes


class PowerSet:
    """Sorted, deduplicated set of non-negative integer exponents."""

    __slots__ = ("elements",)

    def __init__(self, elements=()):
        elems = frozenset(int(e) for e in elements)
        if any(e < 0 for e in elems):
            raise ValueError("powers must be non-negative")
        object.__setattr__(self, "elements", elems)

    def __contains__(self, v):
        return v in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        other_elems = other.elements if isinstance(other, PowerSet) else frozenset(other)
        return self.elements == other_elems

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"PowerSet({sorted(self.elements)})"

    def union(self, other):
        return PowerSet(self.elements | other.elements)

    def intersection(self, other):
        return PowerSet(self.elements & other.elements)


def minkowski_sum(a, b):
    """{x + y : x in a, y in b}, deduplicated."""
    xs = np.fromiter(a.elements, dtype=np.int64)
    ys = np.fromiter(b.elements, dtype=np.int64)
    if xs.size == 0 or ys.size == 0:
        return PowerSet()
    return PowerSet(np.unique(np.add.outer(xs, ys)).tolist())


def _support_arrays(params):
    ca = np.fromiter(codes.coded_powers(params, "A").values(), dtype=np.int64)
    cb = np.fromiter(codes.coded_powers(params, "B").values(), dtype=np.int64)
    sa = np.asarray(codes.secret_powers(params, "A"), dtype=np.int64)
    sb = np.asarray(codes.secret_powers(params, "B"), dtype=np.int64)
    return ca, cb, sa, sb


def h_support(params):
    """Support of H(x): D1 u D2 u D3 u D4 over the published constructions."""
    ca, cb, sa, sb = _support_arrays(params)
    pieces = [np.add.outer(x, y).ravel() for x, y in ((ca, cb), (ca, sb), (sa, cb), (sa, sb))]
    return PowerSet(np.unique(np.concatenate(pieces)).tolist())


def important_powers(params):
    """The t^2 exponents of H(x) whose coefficients are the product blocks."""
    s, t = params.s, params.t
    if params.scheme == codes.POLYDOT:
        tp = params.theta_prime
        exps = [i + t * (s - 1) + tp * l for i in range(t) for l in range(t)]
    else:
        th = params.theta
        exps = [(s - 1) + s * i + th * l for i in range(t) for l in range(t)]
    return PowerSet(exps)


def important_power_of(params, i, l):
    """Exponent carrying the product block Y_{i,l}."""
    if params.scheme == codes.POLYDOT:
        return i + params.t * (params.s - 1) + params.theta_prime * l
    return (params.s - 1) + params.s * i + params.theta * l


def check_decodability(params):
    """Decodability, verified pointwise: the important powers are t^2
    distinct exponents hit by no garbage term.

    Garbage terms: the j != k cross products of the coded terms, plus the
    three secret-term product supports.  Returns a small report dict; key "ok" is the verdict.
    """
    s, t = params.s, params.t
    imp = important_powers(params)
    ca_map = codes.coded_powers(params, "A")
    cb_map = codes.coded_powers(params, "B")
    ea = np.array([[exp, j] for (_, j), exp in ca_map.items()], dtype=np.int64)
    eb = np.array([[exp, k] for (k, _), exp in cb_map.items()], dtype=np.int64)
    sums = np.add.outer(ea[:, 0], eb[:, 0])
    mixed = np.not_equal.outer(ea[:, 1], eb[:, 1])  # j != k cross terms
    cross = np.unique(sums[mixed])
    ca, cb, sa, sb = _support_arrays(params)
    pieces = [cross] + [np.add.outer(x, y).ravel() for x, y in ((ca, sb), (sa, cb), (sa, sb))]
    garbage = np.unique(np.concatenate(pieces))
    imp_arr = np.fromiter(imp.elements, dtype=np.int64)
    overlap = sorted(np.intersect1d(imp_arr, garbage).tolist())
    distinct = len(imp) == t * t
    return {
        "ok": distinct and not overlap,
        "important_count": len(imp),
        "expected_count": t * t,
        "collisions": overlap,
    }
