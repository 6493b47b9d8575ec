"""Prime-field arithmetic, evaluation points, and exact modular solvers.

Matrices are numpy int64 arrays with entries reduced to [0, p).  All solvers
work entry-exact over Z_p (Gaussian elimination with modular inverses), no
floating point anywhere.
"""

import numpy as np

from .errors import DegeneratePoints, InsufficientEvaluations, SingularVandermonde

DEFAULT_PRIME = 1_000_003


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic mod a prime p.  Scalars are plain ints in [0, p)."""

    def __init__(self, p=DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def neg(self, a):
        return (-a) % self.p

    def reduce(self, mat):
        """Canonical representative of an integer matrix (or scalar)."""
        return np.asarray(mat, dtype=np.int64) % self.p

    def rand_matrix(self, rng, shape):
        """Uniform random matrix over the field from a numpy Generator."""
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def matmul(self, a, b):
        """Exact modular matrix product.

        int64 is safe as long as inner_dim * (p-1)^2 < 2^63; guarded here.
        """
        inner = a.shape[1]
        if inner * (self.p - 1) ** 2 >= 2**63:
            raise OverflowError("p too large for int64 matmul at this dimension")
        return (a @ b) % self.p


def draw_eval_points(field, n, rng):
    """n distinct nonzero points of Z_p, deterministic for a given generator."""
    if n >= field.p:
        raise ValueError(f"cannot draw {n} distinct nonzero points mod {field.p}")
    points = []
    seen = set()
    while len(points) < n:
        x = int(rng.integers(1, field.p))
        if x not in seen:
            seen.add(x)
            points.append(x)
    return points


def _inverse_matrix(field, rows):
    """Invert a square matrix of field scalars via modular Gauss-Jordan.
    Raises SingularVandermonde when rank-deficient.

    Only pivot rows and elimination factors are kept canonical; the bulk of
    the matrix accumulates unreduced updates (products of two reduced values
    summed over at most n pivots), which stays within int64 for
    n * (p-1)^2 < 2^62 and saves the elementwise mod on every step.
    """
    n = len(rows)
    p = field.p
    if (n + 1) * (p - 1) ** 2 >= 2**62:
        raise OverflowError("prime too large for delayed-reduction elimination")
    aug = np.concatenate(
        [np.asarray(rows, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1
    )
    for col in range(n):
        column = aug[col:, col] % p
        nz = np.nonzero(column)[0]
        if nz.size == 0:
            raise SingularVandermonde("singular system over the prime field")
        pivot = col + int(nz[0])
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] %= p
        aug[col] = aug[col] * field.inv(int(aug[col, col])) % p
        factors = aug[:, col] % p
        factors[col] = 0
        aug -= np.outer(factors, aug[col])
    return aug[:, n:] % p


def rank_mod_p(field, rows):
    """Rank of a matrix of field scalars via modular Gaussian elimination."""
    p = field.p
    mat = np.asarray(rows, dtype=np.int64) % p
    nrows, ncols = mat.shape
    rank = 0
    for col in range(ncols):
        nz = np.nonzero(mat[rank:, col])[0]
        if nz.size == 0:
            continue
        pivot = rank + int(nz[0])
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        mat[rank] = mat[rank] * field.inv(int(mat[rank, col])) % p
        factors = mat[:, col].copy()
        factors[rank] = 0
        mat = (mat - np.outer(factors, mat[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def lagrange_interpolate(field, points, degree_bound):
    """Coefficients of the unique degree <= degree_bound polynomial through
    the given (abscissa, matrix) points, blockwise per matrix entry.

    Uses the first degree_bound+1 points to solve and checks the remainder
    agree; extra inconsistent points raise ValueError.
    """
    if len({x for x, _ in points}) != len(points):
        raise DegeneratePoints("duplicate abscissae")
    need = degree_bound + 1
    if len(points) < need:
        raise InsufficientEvaluations(f"need {need} points, got {len(points)}")
    xs = [x for x, _ in points[:need]]
    vand = [[field.pow(x, k) for k in range(need)] for x in xs]
    vinv = _inverse_matrix(field, vand)
    values = np.stack([field.reduce(y) for _, y in points[:need]])  # (need, *shape)
    flat = values.reshape(need, -1)
    if need * (field.p - 1) ** 2 < 2**63:
        coeffs_flat = (vinv @ flat) % field.p
    else:
        obj = vinv.astype(object) @ flat.astype(object)
        coeffs_flat = (obj % field.p).astype(np.int64)
    coeffs = [coeffs_flat[i].reshape(values.shape[1:]) for i in range(need)]
    for x, y in points[need:]:
        acc = np.zeros_like(coeffs[0])
        for k, c in enumerate(coeffs):
            acc = (acc + c * field.pow(x, k)) % field.p
        if not np.array_equal(acc, field.reduce(y)):
            raise ValueError("evaluations inconsistent with the degree bound")
    return coeffs


def sparse_extraction_coefficients(field, alphas, support, target_power):
    """Coefficients r with sum_n r_n f(alpha_n) = coeff of x^target_power for
    every polynomial f supported on `support`.

    Solves the generalized Vandermonde system V[k][n] = alpha_n^{p_k} against
    the indicator of the target power; singular V raises SingularVandermonde.
    """
    support = sorted(support)
    if len(alphas) != len(support):
        raise ValueError("need exactly one evaluation point per support power")
    if target_power not in support:
        raise ValueError("target power not in support")
    vinv = extraction_inverse(field, alphas, support)
    target_idx = support.index(target_power)
    # r_n solves sum_n alpha_n^{p_k} r_n = delta_{k,target}: a V^{-1} column
    return [int(vinv[n, target_idx]) for n in range(len(alphas))]


def extraction_inverse(field, alphas, support):
    """Inverse of the generalized Vandermonde V[k][n] = alpha_n^{p_k}; its
    columns are the extraction coefficient vectors for each support power."""
    support = sorted(support)
    rows = [[field.pow(a, k) for a in alphas] for k in support]
    return _inverse_matrix(field, rows)
