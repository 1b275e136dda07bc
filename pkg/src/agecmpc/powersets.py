"""Integer exponent-set algebra for the adaptive-gap entangled code family.

Everything here is pure combinatorics on the partition parameters: which
polynomial exponents carry data blocks, which carry masks, and the exact
support of the share product. The product support doubles as the brute-force
oracle against which the closed-form worker counts are validated.

Conventions (with ``theta = t*s + lam``):

* coded A exponents:  ``j + s*i``            -> ``{0, ..., t*s - 1}``
* coded B exponents:  ``(s-1-k) + theta*l``
* important exponents (the ones whose product coefficients are the output
  blocks): ``(s-1) + s*i + theta*l``
* mask (secret) exponents: the z smallest feasible values for the A side,
  and z consecutive values starting right after the largest important
  exponent for the B side.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

PowerSet = tuple[int, ...]


class IndivisibleDimensions(ValueError):
    """Matrix dimension is not divisible by the partition counts."""


@dataclass(frozen=True)
class PartitionScheme:
    """Partitioning/privacy parameters: (m, s, t, z, lam).

    s row-wise and t column-wise partitions (s=t=1 excluded: that is the
    uncoded regime), z colluding workers, and the gap parameter
    0 <= lam <= z that widens the B-side exponent stride. The matrix
    dimension m is optional; set it for anything that touches actual blocks.
    """

    s: int
    t: int
    z: int
    lam: int = 0
    m: int | None = None

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < 1:
            raise ValueError("partition counts s and t must be >= 1")
        if self.s == 1 and self.t == 1:
            raise ValueError("s = t = 1 means no partitioning; not supported")
        if self.z < 1:
            raise ValueError("number of colluding workers z must be >= 1")
        if not 0 <= self.lam <= self.z:
            raise ValueError(f"gap parameter must satisfy 0 <= lam <= z, got {self.lam}")
        if self.m is not None:
            if self.m < 1:
                raise ValueError("matrix dimension m must be positive")
            if self.m % self.s or self.m % self.t:
                raise IndivisibleDimensions(
                    f"m={self.m} must be divisible by both s={self.s} and t={self.t}"
                )

    @property
    def theta(self) -> int:
        return self.t * self.s + self.lam

    @property
    def q(self) -> int:
        """Number of fully used inter-stride gaps for A-side mask placement.

        ``min((z-1) // lam, t-1)`` for lam > 0. For lam = 0 the finite gaps
        are empty, so q degenerates to t-1 and the mask interval formula
        collapses to the single run after the last coded stride.
        """
        if self.lam == 0:
            return self.t - 1
        return min((self.z - 1) // self.lam, self.t - 1)

    @property
    def recovery_threshold(self) -> int:
        """Responses the master needs in the final phase: t**2 + z."""
        return self.t * self.t + self.z

    def with_lam(self, lam: int) -> "PartitionScheme":
        return replace(self, lam=lam)

    def with_m(self, m: int) -> "PartitionScheme":
        return replace(self, m=m)


@lru_cache(maxsize=None)
def powers_coded_a(scheme: PartitionScheme) -> PowerSet:
    """Exponents of the A-side coded term: {j + s*i} = {0, ..., ts-1}."""
    return tuple(range(scheme.t * scheme.s))


@lru_cache(maxsize=None)
def powers_coded_b(scheme: PartitionScheme) -> PowerSet:
    """Exponents of the B-side coded term: {(s-1-k) + theta*l}."""
    s, t, theta = scheme.s, scheme.t, scheme.theta
    return tuple(sorted({(s - 1 - k) + theta * l for k in range(s) for l in range(t)}))


@lru_cache(maxsize=None)
def powers_secret_a(scheme: PartitionScheme) -> PowerSet:
    """The z smallest A-side mask exponents compatible with decodability.

    t = 1: {s, ..., s+z-1}. Otherwise the feasible region is the union of
    the length-lam gaps between coded strides plus everything from
    ts + theta*(t-1) upward; the first q gaps are taken in full and the
    remaining z - q*lam exponents come from the next feasible run.
    """
    s, t, z, lam = scheme.s, scheme.t, scheme.z, scheme.lam
    ts, theta, q = t * s, scheme.theta, scheme.q
    if t == 1:
        return tuple(range(s, s + z))
    powers: list[int] = []
    for l in range(q):
        powers.extend(range(ts + theta * l, (l + 1) * theta))
    powers.extend(range(ts + q * theta, ts + q * theta + z - q * lam))
    return tuple(powers)


@lru_cache(maxsize=None)
def powers_secret_b(scheme: PartitionScheme) -> PowerSet:
    """B-side mask exponents: z consecutive values after the top important power."""
    ts, theta, t, z = scheme.t * scheme.s, scheme.theta, scheme.t, scheme.z
    return tuple(range(ts + theta * (t - 1), ts + theta * (t - 1) + z))


@lru_cache(maxsize=None)
def important_powers(scheme: PartitionScheme) -> dict[tuple[int, int], int]:
    """Map (i, l) -> (s-1) + s*i + theta*l, ascending in exponent order."""
    s, t, theta = scheme.s, scheme.t, scheme.theta
    return {(i, l): (s - 1) + s * i + theta * l for l in range(t) for i in range(t)}


def _sumset(a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    return frozenset(x + y for x in a for y in b)


@lru_cache(maxsize=None)
def _product_parts(
    scheme: PartitionScheme,
) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]:
    """The four sumsets whose union is the product support: coded*coded,
    coded*mask, mask*coded, mask*mask."""
    ca = frozenset(powers_coded_a(scheme))
    cb = frozenset(powers_coded_b(scheme))
    sa = frozenset(powers_secret_a(scheme))
    sb = frozenset(powers_secret_b(scheme))
    return _sumset(ca, cb), _sumset(ca, sb), _sumset(sa, cb), _sumset(sa, sb)


@lru_cache(maxsize=None)
def product_support(scheme: PartitionScheme) -> PowerSet:
    """Exact exponent support of the share product, by brute-force sumsets.

    This is the enumeration oracle: the number of workers the protocol
    actually needs equals its cardinality.
    """
    d1, d2, d3, d4 = _product_parts(scheme)
    return tuple(sorted(d1 | d2 | d3 | d4))


@lru_cache(maxsize=None)
def check_secret_conditions(scheme: PartitionScheme) -> bool:
    """True iff no important exponent collides with a mask-bearing sumset."""
    _, d2, d3, d4 = _product_parts(scheme)
    imp = set(important_powers(scheme).values())
    return not imp & (d2 | d3 | d4)


@lru_cache(maxsize=None)
def check_decodability(scheme: PartitionScheme) -> bool:
    """True iff every output block can be read off the product.

    Requires (a) all t**2 important exponents distinct, (b) no collision
    with the coded cross terms (row indices j != k), and (c) the mask
    placement conditions.
    """
    s, t, theta = scheme.s, scheme.t, scheme.theta
    imp = set(important_powers(scheme).values())
    if len(imp) != t * t:
        return False
    # coded cross terms; empty when s == 1
    cross = {
        j + s * i + (s - 1 - k) + theta * l
        for i in range(t)
        for l in range(t)
        for j in range(s)
        for k in range(s)
        if j != k
    }
    if imp & cross:
        return False
    return check_secret_conditions(scheme)
