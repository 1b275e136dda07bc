from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from agecmpc import PartitionScheme, PrimeField


@pytest.fixture(scope="session")
def field() -> PrimeField:
    return PrimeField()


@st.composite
def schemes(draw, max_s: int = 6, max_t: int = 6, max_z: int = 12, min_t: int = 1):
    """Valid partition schemes (no matrix dimension)."""
    s = draw(st.integers(1, max_s))
    t = draw(st.integers(min_t, max_t))
    if s == 1 and t == 1:
        t = 2
    z = draw(st.integers(1, max_z))
    lam = draw(st.integers(0, z))
    return PartitionScheme(s=s, t=t, z=z, lam=lam)


@st.composite
def matrix_schemes(draw, max_mult: int = 2, max_z: int = 4):
    """Schemes with a small matrix dimension divisible by s and t."""
    s = draw(st.integers(1, 3))
    t = draw(st.integers(1, 3))
    if s == 1 and t == 1:
        t = 2
    z = draw(st.integers(1, max_z))
    lam = draw(st.integers(0, z))
    m = s * t * draw(st.integers(1, max_mult))
    return PartitionScheme(s=s, t=t, z=z, lam=lam, m=m)


def random_matrix(field: PrimeField, m: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    return field.random_block((m, m), rng)
