"""Block partitioning of square matrices and reassembly of Y = A^T B."""

from dataclasses import dataclass

import numpy as np

from .errors import IndivisibleDimension, ShapeMismatch


@dataclass(frozen=True)
class PartitionSpec:
    m: int
    s: int
    t: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ValueError("partition counts must be >= 1")
        if self.m % self.s != 0:
            raise IndivisibleDimension(f"s={self.s} does not divide m={self.m}")
        if self.m % self.t != 0:
            raise IndivisibleDimension(f"t={self.t} does not divide m={self.m}")


def split(matrix, spec, role):
    """Partition a square matrix into the grid of blocks used by the codes.

    role "A_transposed": blocks A_{i,j} of A^T, i in [0,t), j in [0,s),
    each of shape (m/t, m/s).  role "B": blocks B_{k,l}, k in [0,s),
    l in [0,t), each of shape (m/s, m/t).
    """
    matrix = np.asarray(matrix)
    if matrix.shape != (spec.m, spec.m):
        raise ShapeMismatch(f"expected {spec.m}x{spec.m} matrix, got {matrix.shape}")
    if role == "A_transposed":
        mt, ms = spec.m // spec.t, spec.m // spec.s
        at = matrix.T
        return {
            (i, j): at[i * mt : (i + 1) * mt, j * ms : (j + 1) * ms]
            for i in range(spec.t)
            for j in range(spec.s)
        }
    if role == "B":
        ms, mt = spec.m // spec.s, spec.m // spec.t
        return {
            (k, l): matrix[k * ms : (k + 1) * ms, l * mt : (l + 1) * mt]
            for k in range(spec.s)
            for l in range(spec.t)
        }
    raise ValueError(f"unknown role {role!r}")


def assemble_product(blocks):
    """Assemble the t x t grid of product blocks Y_{i,l} into the full matrix.

    blocks maps (i, l) -> (m/t, m/t) array; block (i, l) lands at row-block i,
    column-block l.
    """
    if not blocks:
        raise ShapeMismatch("empty block grid")
    t = max(i for i, _ in blocks) + 1
    if set(blocks) != {(i, l) for i in range(t) for l in range(t)}:
        raise ShapeMismatch("block grid is not a complete t x t grid")
    shape = next(iter(blocks.values())).shape
    if any(b.shape != shape for b in blocks.values()):
        raise ShapeMismatch("blocks have inconsistent shapes")
    rows = [np.hstack([blocks[i, l] for l in range(t)]) for i in range(t)]
    return np.vstack(rows)


def load_matrix(path):
    """Read a matrix of integers from plain-text or CSV (one row per line)."""
    with open(path) as fh:
        text = fh.read()
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        sep = "," if "," in line else None
        rows.append([int(v) for v in line.split(sep)])
    if not rows:
        raise ValueError(f"no matrix data in {path}")
    if len({len(r) for r in rows}) != 1:
        raise ShapeMismatch("ragged rows in matrix file")
    return np.array(rows, dtype=np.int64)


def save_matrix(path, matrix):
    with open(path, "w") as fh:
        for row in np.asarray(matrix):
            fh.write(",".join(str(int(v)) for v in row) + "\n")
