"""Share-polynomial construction over the field.

Partitions the two source matrices, assembles the masked share polynomials
(coded blocks on the data exponents, uniform random blocks on the mask
exponents), evaluates shares at worker points, and multiplies two sparse
block polynomials symbolically. The symbolic product is the second,
coefficient-level oracle for the product support.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from .field import PrimeField, ShapeMismatch
from .powersets import (
    IndivisibleDimensions,
    PartitionScheme,
    PowerSet,
    powers_secret_a,
    powers_secret_b,
)

Side = Literal["a", "b"]


class MaskedPolynomial:
    """Sparse polynomial with block coefficients over a prime field.

    ``coeffs`` maps exponent -> uint64 block; all blocks share one shape.
    """

    def __init__(self, field: PrimeField, coeffs: dict[int, np.ndarray], block_shape: tuple[int, int]):
        for exp, block in coeffs.items():
            if exp < 0:
                raise ValueError("exponents must be non-negative")
            if block.shape != block_shape:
                raise ShapeMismatch(
                    f"coefficient at x^{exp} has shape {block.shape}, expected {block_shape}"
                )
        self.field = field
        self.coeffs = dict(coeffs)
        self.block_shape = block_shape

    @property
    def support(self) -> PowerSet:
        return tuple(sorted(self.coeffs))

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def evaluate(self, x: int) -> np.ndarray:
        """Sum of coeff * x**exponent, walking the sorted support.

        The running power is updated by repeated multiplication between
        consecutive exponents; by convention x**0 is 1 even at x = 0, so
        evaluation at zero returns the constant coefficient.
        """
        fld = self.field
        x = fld.element(x)
        acc = fld.zeros(self.block_shape)
        power, exponent = 1, 0
        for exp in self.support:
            for _ in range(exp - exponent):
                power = fld.mul(power, x)
            exponent = exp
            acc = fld.mat_add(acc, fld.mat_scale(power, self.coeffs[exp]))
        return acc


def partition(matrix: np.ndarray, side: Side, scheme: PartitionScheme) -> list[list[np.ndarray]]:
    """Split a source matrix into the code's block grid.

    Side "a" splits the transpose into a t x s grid of (m/t) x (m/s) blocks;
    side "b" splits the matrix itself into an s x t grid of (m/s) x (m/t)
    blocks. Reassembling the grids reproduces the transpose (resp. the
    matrix) exactly.
    """
    m = scheme.m
    if m is None:
        raise ValueError("scheme has no matrix dimension m set")
    if matrix.shape != (m, m):
        raise ShapeMismatch(f"expected a {m}x{m} matrix, got {matrix.shape}")
    # divisibility by s and t is guaranteed by PartitionScheme validation
    if side == "a":
        rows, cols = scheme.t, scheme.s
        grid_src = matrix.T
    elif side == "b":
        rows, cols = scheme.s, scheme.t
        grid_src = matrix
    else:
        raise ValueError(f"side must be 'a' or 'b', got {side!r}")
    rh, cw = m // rows, m // cols
    return [
        [np.ascontiguousarray(grid_src[r * rh : (r + 1) * rh, c * cw : (c + 1) * cw]) for c in range(cols)]
        for r in range(rows)
    ]


def _mask_rng(seed_seq: np.random.SeedSequence) -> np.random.Generator:
    # Philox: counter-based, so per-stream draws are reproducible and
    # independent of scheduling.
    return np.random.Generator(np.random.Philox(seed_seq))


def build_masked_polynomials(
    a: np.ndarray,
    b: np.ndarray,
    scheme: PartitionScheme,
    rng_seed: int | np.random.SeedSequence,
    field: PrimeField | None = None,
    *,
    zero_masks: bool = False,
) -> tuple[MaskedPolynomial, MaskedPolynomial]:
    """Build the two share polynomials: coded blocks plus z random masks each.

    The A share places block (i, j) of the transpose at exponent j + s*i and
    masks on the A-side secret exponents; the B share places block (k, l) at
    exponent (s-1-k) + theta*l and masks on the B-side secret exponents.
    Masks are drawn uniformly from the full field via two independent
    Philox substreams of ``rng_seed``, so equal seeds give identical
    polynomials. ``zero_masks`` is a test hook that zeroes every mask block.
    """
    field = field or PrimeField()
    root = rng_seed if isinstance(rng_seed, np.random.SeedSequence) else np.random.SeedSequence(rng_seed)
    seq_a, seq_b = root.spawn(2)
    s, t = scheme.s, scheme.t
    theta = scheme.theta

    a_blocks = partition(a, "a", scheme)
    b_blocks = partition(b, "b", scheme)
    shape_a = a_blocks[0][0].shape
    shape_b = b_blocks[0][0].shape

    coeffs_a: dict[int, np.ndarray] = {}
    for i in range(t):
        for j in range(s):
            coeffs_a[j + s * i] = a_blocks[i][j]
    rng_a = _mask_rng(seq_a)
    for exp in powers_secret_a(scheme):
        block = field.random_block(shape_a, rng_a)
        coeffs_a[exp] = field.zeros(shape_a) if zero_masks else block

    coeffs_b: dict[int, np.ndarray] = {}
    for k in range(s):
        for l in range(t):
            coeffs_b[(s - 1 - k) + theta * l] = b_blocks[k][l]
    rng_b = _mask_rng(seq_b)
    for exp in powers_secret_b(scheme):
        block = field.random_block(shape_b, rng_b)
        coeffs_b[exp] = field.zeros(shape_b) if zero_masks else block

    return (
        MaskedPolynomial(field, coeffs_a, shape_a),
        MaskedPolynomial(field, coeffs_b, shape_b),
    )


def multiply(fa: MaskedPolynomial, fb: MaskedPolynomial) -> MaskedPolynomial:
    """Full symbolic product of two sparse block polynomials."""
    if fa.block_shape[1] != fb.block_shape[0]:
        raise ShapeMismatch(
            f"cannot multiply block shapes {fa.block_shape} and {fb.block_shape}"
        )
    fld = fa.field
    out_shape = (fa.block_shape[0], fb.block_shape[1])
    coeffs: dict[int, np.ndarray] = {}
    for e1, c1 in fa.coeffs.items():
        for e2, c2 in fb.coeffs.items():
            term = fld.mat_mul(c1, c2)
            exp = e1 + e2
            coeffs[exp] = fld.mat_add(coeffs[exp], term) if exp in coeffs else term
    return MaskedPolynomial(fld, coeffs, out_shape)


def symbolic_product_support(fa: MaskedPolynomial, fb: MaskedPolynomial) -> PowerSet:
    """Exponents whose product coefficient is a nonzero block.

    Coefficient-level oracle: agrees with the sumset-based support except
    when random coefficients cancel exactly, which happens with probability
    at most (support size)/p per exponent.
    """
    product = multiply(fa, fb)
    return tuple(exp for exp in product.support if product.coeffs[exp].any())
