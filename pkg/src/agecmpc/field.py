"""Prime-field scalar and block-matrix arithmetic, plus Vandermonde solvers.

Scalars are Python ints in ``[0, p)``. Blocks are 2-D ``numpy.uint64`` arrays
with every entry reduced mod ``p``; the multiply kernels dispatch through
:mod:`agecmpc._kernels` (compiled extension when available, exact numpy
fallback otherwise). The default modulus is the Mersenne prime ``2**61 - 1``,
which leaves ample headroom for the matrix sizes this package targets while
keeping blocks in native 64-bit storage.

The two linear solvers at the bottom are the decoding workhorses:
:func:`solve_vandermonde` recovers dense polynomial coefficients from point
evaluations (master-side reconstruction), and :func:`invert_on_support`
inverts the generalized Vandermonde matrix ``M[n, j] = points[n]**support[j]``
whose inverse rows are the re-sharing coefficients used by the workers.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ._kernels import matmul_mod, scale_mod

DEFAULT_PRIME = (1 << 61) - 1

# Deterministic Miller-Rabin witness set for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ZeroInverse(ArithmeticError):
    """A multiplicative inverse of zero was requested."""


class DuplicatePoints(ValueError):
    """Interpolation points must be pairwise distinct."""


class SingularSupportMatrix(ArithmeticError):
    """The generalized Vandermonde matrix is singular; resample the points."""


class ShapeMismatch(ValueError):
    """Operands do not have conforming shapes."""


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n below 3.3e24."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
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
    """Arithmetic mod a prime p, for scalars and uint64 blocks.

    p must stay below 2**62 so sums of two reduced entries fit in uint64 and
    products fit in the kernels' 128-bit accumulators.
    """

    def __init__(self, p: int = DEFAULT_PRIME):
        if not 2 <= p < (1 << 62):
            raise ValueError(f"modulus must be in [2, 2**62), got {p}")
        if not is_probable_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # -- scalars ----------------------------------------------------------

    def element(self, x: int) -> int:
        return int(x) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    # -- blocks -----------------------------------------------------------

    def block(self, data) -> np.ndarray:
        """Coerce array-like integer data into a reduced uint64 block."""
        arr = np.asarray(data, dtype=object) % self.p
        return arr.astype(np.uint64)

    def zeros(self, shape: tuple[int, int]) -> np.ndarray:
        return np.zeros(shape, dtype=np.uint64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.uint64)

    def random_block(self, shape: tuple[int, int], rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.uint64)

    def mat_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape != b.shape:
            raise ShapeMismatch(f"cannot add blocks of shapes {a.shape} and {b.shape}")
        return (a + b) % self.p

    def mat_sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape != b.shape:
            raise ShapeMismatch(f"cannot subtract blocks of shapes {a.shape} and {b.shape}")
        return (a + (self.p - b)) % self.p

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ShapeMismatch(f"cannot multiply blocks of shapes {a.shape} and {b.shape}")
        return matmul_mod(a, b, self.p)

    def mat_scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return scale_mod(c % self.p, a, self.p)


# -- scalar linear algebra (list-of-lists Gaussian elimination) -----------


def invert_matrix(field: PrimeField, rows: Sequence[Sequence[int]]) -> list[list[int]] | None:
    """Gauss-Jordan inverse of a square scalar matrix; None if singular."""
    n = len(rows)
    p = field.p
    aug = [[v % p for v in row] + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_piv = field.inv(aug[col][col])
        aug[col] = [v * inv_piv % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [(vr - factor * vc) % p for vr, vc in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def matrix_rank(field: PrimeField, rows: Sequence[Sequence[int]]) -> int:
    """Row rank of a scalar matrix over the field."""
    p = field.p
    work = [[v % p for v in row] for row in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv_piv = field.inv(work[rank][col])
        work[rank] = [v * inv_piv % p for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [(vr - factor * vc) % p for vr, vc in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def solve_vandermonde(
    field: PrimeField, points: Sequence[int], values: Sequence[np.ndarray]
) -> list[np.ndarray]:
    """Coefficients c_0..c_{k-1} of the dense polynomial through (point, block) pairs.

    The classic Vandermonde system is always solvable for distinct points, so
    the only rejection is :class:`DuplicatePoints`. Exact over the field.
    """
    pts = [field.element(x) for x in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("evaluation points must be distinct")
    if len(pts) != len(values):
        raise ValueError("need exactly one value per point")
    shape = values[0].shape
    if any(v.shape != shape for v in values):
        raise ShapeMismatch("all value blocks must share one shape")
    k = len(pts)
    vand = [[field.pow(x, j) for j in range(k)] for x in pts]
    inv = invert_matrix(field, vand)
    assert inv is not None, "Vandermonde with distinct points cannot be singular"
    coeffs = []
    for j in range(k):
        acc = field.zeros(shape)
        for n in range(k):
            if inv[j][n]:
                acc = field.mat_add(acc, field.mat_scale(inv[j][n], values[n]))
        coeffs.append(acc)
    return coeffs


def invert_on_support(
    field: PrimeField, points: Sequence[int], support: Sequence[int]
) -> list[list[int]]:
    """Inverse of the generalized Vandermonde matrix M[n, j] = points[n]**support[j].

    Row j of the result gives coefficients r with sum_n r[n] * points[n]**e
    equal to 1 when e == support[j] and 0 for every other e in the support;
    extracting the row of a target exponent yields its re-sharing
    coefficients. Unlike the dense case this matrix can be singular for
    unlucky point sets, signalled by :class:`SingularSupportMatrix` so the
    caller can resample.
    """
    pts = [field.element(x) for x in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("evaluation points must be distinct")
    if any(x == 0 for x in pts):
        raise ValueError("evaluation points must be nonzero")
    if len(pts) != len(support):
        raise ValueError("need exactly one point per support exponent")
    matrix = [[field.pow(x, e) for e in support] for x in pts]
    inv = invert_matrix(field, matrix)
    if inv is None:
        raise SingularSupportMatrix(
            f"support matrix is singular for points {pts[:4]}... over p={field.p}"
        )
    return inv
