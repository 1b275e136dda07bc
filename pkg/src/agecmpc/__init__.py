"""Adaptive-gap entangled (AGE) coded multi-party matrix multiplication.

A finite-field toolkit for privacy-preserving distributed computation of
A^T B with two sources, N semi-honest workers (any z of which may collude),
and one master:

* :mod:`agecmpc.field`       prime-field scalars/blocks and Vandermonde solvers
* :mod:`agecmpc.powersets`   exponent-set algebra and the enumeration oracle
* :mod:`agecmpc.workercount` closed-form worker counts and baseline comparison
* :mod:`agecmpc.coding`      masked share-polynomial construction
* :mod:`agecmpc.protocol`    deterministic three-phase protocol simulation
* :mod:`agecmpc.costmodel`   resource formulas and counter reconciliation
* :mod:`agecmpc.cli`         plan / sweep / run / oracle commands
"""

from ._kernels import available_backends, backend_name, set_backend
from .costmodel import CostReport, SchemeMismatch, predicted_costs, reconcile
from .field import (
    DEFAULT_PRIME,
    DuplicatePoints,
    PrimeField,
    ShapeMismatch,
    SingularSupportMatrix,
    ZeroInverse,
    invert_on_support,
    solve_vandermonde,
)
from .coding import IndivisibleDimensions, MaskedPolynomial, build_masked_polynomials, partition
from .powersets import (
    PartitionScheme,
    check_decodability,
    check_secret_conditions,
    important_powers,
    powers_coded_a,
    powers_coded_b,
    powers_secret_a,
    powers_secret_b,
    product_support,
)
from .protocol import (
    InsufficientResponders,
    TooManyColluders,
    Transcript,
    adversary_view,
    mask_rank_check,
    run_protocol,
)
from .workercount import (
    NoCaseMatched,
    WorkerCountReport,
    compare,
    gamma,
    n_age,
    n_entangled,
    n_gcsa_na,
    n_polydot,
    n_ssmm,
)

__version__ = "0.1.0"
