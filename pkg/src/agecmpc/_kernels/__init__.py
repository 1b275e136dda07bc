"""Backend selection for the hot mod-p kernels.

Two interchangeable implementations exist:

``fast``
    Compiled Cython extension (``_fast``) doing 64x64->128-bit multiply
    with a single reduction per output entry.
``pure``
    Exact object-dtype numpy fallback (``_pure``); always available.

The compiled backend is picked when importable. Set ``AGE_MPC_BACKEND=pure``
(or ``fast``) to force a choice, or call :func:`set_backend` at runtime
(used by the benchmark and the backend-agreement tests).
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _fast
except ImportError:
    _fast = None

_BACKENDS = {"pure": _pure}
if _fast is not None:
    _BACKENDS["fast"] = _fast

_active = _BACKENDS.get(os.environ.get("AGE_MPC_BACKEND", ""), None)
if _active is None:
    _active = _BACKENDS.get("fast", _pure)


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    return "fast" if _active is _BACKENDS.get("fast") else "pure"


def set_backend(name: str) -> None:
    """Switch the active kernel backend ("fast" or "pure")."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _active = _BACKENDS[name]


def matmul_mod(a, b, p):
    """Schoolbook matrix product of uint64 blocks, entries reduced mod p."""
    return _active.matmul_mod(a, b, p)


def scale_mod(c, a, p):
    """Scalar-times-block product of a uint64 block, entries reduced mod p."""
    return _active.scale_mod(c, a, p)
