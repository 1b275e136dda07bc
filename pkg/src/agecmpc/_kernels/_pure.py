"""Pure-numpy kernel fallback.

Routes the 61-bit multiplies through object-dtype (unbounded Python ints),
so results are exact for any modulus the package accepts. Slow but always
available; the compiled ``_fast`` module is the production path.
"""

from __future__ import annotations

import numpy as np


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    prod = np.dot(a.astype(object), b.astype(object)) % p
    return prod.astype(np.uint64)


def scale_mod(c: int, a: np.ndarray, p: int) -> np.ndarray:
    return ((int(c) * a.astype(object)) % p).astype(np.uint64)
