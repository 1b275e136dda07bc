"""Three-phase protocol simulation: share, compute-and-exchange, reconstruct.

Two sources hold m x m matrices A and B; N workers evaluate the masked share
polynomials at fixed points, multiply their shares, re-share scaled results
plus fresh masks, and a master reconstructs A^T B from any t**2 + z summed
responses. The whole run is deterministic in (inputs, seed): every random
draw comes from a Philox substream assigned up front, and the message log is
built in a fixed (phase, sender, receiver) order, so transcripts are
byte-reproducible regardless of scheduling.

Cost accounting (scalar multiplications, stored scalars, transmitted
scalars) follows fixed conventions so the measured counters reconcile
exactly with the closed-form predictions in :mod:`agecmpc.costmodel`:

* the share product costs rows*inner*cols scalar multiplications;
* scaling the product by the t**2 re-sharing coefficients costs m**2 total;
* evaluating the re-share polynomial charges t**2 - 1 + z scalar-block
  products per point (the constant term is free);
* scalar-scalar power updates are not counted;
* nothing is ever deleted, so storage accumulates across phases.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import coding
from .field import (
    DuplicatePoints,
    PrimeField,
    SingularSupportMatrix,
    invert_on_support,
    matrix_rank,
    solve_vandermonde,
)
from .powersets import (
    PartitionScheme,
    PowerSet,
    important_powers,
    powers_secret_a,
    powers_secret_b,
    product_support,
)

MAX_POINT_RESAMPLES = 16


class InsufficientResponders(ValueError):
    """Fewer than t**2 + z responses were offered for reconstruction."""


class TooManyColluders(ValueError):
    """A colluding set larger than z was requested."""


@dataclass
class Message:
    phase: int
    sender: str
    receiver: str
    kind: str
    scalars: int
    digest: str


@dataclass
class WorkerCounters:
    mults: int = 0
    stored: int = 0
    sent: int = 0


@dataclass
class WorkerState:
    """Everything one worker holds across the run."""

    id: int
    alpha: int
    fa_share: np.ndarray | None = None
    fb_share: np.ndarray | None = None
    h: np.ndarray | None = None
    rows: dict[tuple[int, int], int] = dc_field(default_factory=dict)
    masks: list[np.ndarray] = dc_field(default_factory=list)
    inbox: dict[int, np.ndarray] = dc_field(default_factory=dict)
    i_value: np.ndarray | None = None
    counters: WorkerCounters = dc_field(default_factory=WorkerCounters)


@dataclass
class Transcript:
    """Full protocol record: parameters, traffic, counters, and the result."""

    scheme: PartitionScheme
    prime: int
    points: tuple[int, ...]
    support: PowerSet
    n_workers: int
    messages: list[Message]
    counters: dict[int, WorkerCounters]
    i_values: dict[int, np.ndarray]
    responders: tuple[int, ...]
    y: np.ndarray

    def y_digest(self) -> str:
        return _digest(self.y)

    def phase2_scalars(self) -> int:
        return sum(msg.scalars for msg in self.messages if msg.phase == 2)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "scheme": {
                "s": self.scheme.s,
                "t": self.scheme.t,
                "z": self.scheme.z,
                "lambda": self.scheme.lam,
                "m": self.scheme.m,
            },
            "prime": self.prime,
            "points": list(self.points),
            "support": list(self.support),
            "n_workers": self.n_workers,
            "counters": {
                str(wid): {"mults": c.mults, "stored": c.stored, "sent": c.sent}
                for wid, c in sorted(self.counters.items())
            },
            "messages": [
                {
                    "phase": m.phase,
                    "sender": m.sender,
                    "receiver": m.receiver,
                    "kind": m.kind,
                    "scalars": m.scalars,
                    "digest": m.digest,
                }
                for m in self.messages
            ],
            "responders": list(self.responders),
            "y_digest": self.y_digest(),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _digest(block: np.ndarray) -> str:
    h = hashlib.sha256()
    h.update(str(block.shape).encode())
    h.update(np.ascontiguousarray(block, dtype=np.uint64).tobytes())
    return h.hexdigest()[:16]


def _choose_points(
    field: PrimeField,
    support: PowerSet,
    seed_seq: np.random.SeedSequence,
) -> tuple[tuple[int, ...], list[list[int]]]:
    """Evaluation points plus the inverse of their support matrix.

    Starts from the canonical assignment alpha_n = n and, should that support
    matrix be singular, resamples distinct nonzero points from a seeded
    stream up to a bounded number of times.
    """
    n = len(support)
    if field.p <= n:
        raise ValueError(f"field modulus {field.p} too small for {n} distinct worker points")
    points = tuple(range(1, n + 1))
    try:
        return points, invert_on_support(field, points, support)
    except SingularSupportMatrix:
        pass
    rng = np.random.Generator(np.random.Philox(seed_seq))
    for _ in range(MAX_POINT_RESAMPLES):
        sample: set[int] = set()
        while len(sample) < n:
            draw = rng.integers(1, field.p, size=n - len(sample), dtype=np.uint64)
            sample.update(int(v) for v in draw)
        points = tuple(sorted(sample))
        try:
            return points, invert_on_support(field, points, support)
        except SingularSupportMatrix:
            continue
    raise SingularSupportMatrix(
        f"no invertible support matrix found after {MAX_POINT_RESAMPLES} resamples"
    )


def phase2_interpolation_rows(
    field: PrimeField,
    points: Sequence[int],
    support: Sequence[int],
    targets: Mapping[tuple[int, int], int],
) -> dict[tuple[int, int], tuple[int, ...]]:
    """Re-sharing coefficient rows, one per target exponent.

    Row r for target u satisfies sum_n r[n] * points[n]**e = [e == u] for
    every e in the support, hence sum_n r[n] * H(points[n]) equals the
    product coefficient at u for any H supported on the given exponents.
    """
    inverse = invert_on_support(field, points, support)
    index = {exp: pos for pos, exp in enumerate(support)}
    rows = {}
    for key, u in targets.items():
        if u not in index:
            raise ValueError(f"target exponent {u} not in support")
        rows[key] = tuple(inverse[index[u]])
    return rows


def build_gn(
    field: PrimeField,
    scheme: PartitionScheme,
    h_block: np.ndarray,
    rows: Mapping[tuple[int, int], int],
    mask_blocks: Sequence[np.ndarray],
) -> coding.MaskedPolynomial:
    """One worker's re-share polynomial.

    The first t**2 exponents carry the re-sharing coefficients times the
    worker's product share (coefficient (i, l) at exponent i + t*l); the last
    z exponents carry fresh uniform masks. Degree is always t**2 + z - 1.
    """
    t = scheme.t
    if len(mask_blocks) != scheme.z:
        raise ValueError(f"expected {scheme.z} mask blocks, got {len(mask_blocks)}")
    coeffs: dict[int, np.ndarray] = {}
    for (i, l), r in rows.items():
        coeffs[i + t * l] = field.mat_scale(r, h_block)
    for w, block in enumerate(mask_blocks):
        coeffs[t * t + w] = block
    return coding.MaskedPolynomial(field, coeffs, (h_block.shape[0], h_block.shape[1]))


def phase3_reconstruct(
    field: PrimeField,
    scheme: PartitionScheme,
    responses: Sequence[tuple[int, np.ndarray]],
) -> dict[tuple[int, int], np.ndarray]:
    """Solve for the summed re-share polynomial and read out the output blocks.

    Needs at least t**2 + z distinct-point responses; any valid subset of
    that size determines the same degree-(t**2+z-1) polynomial, whose
    coefficient at exponent i + t*l is output block (i, l).
    """
    threshold = scheme.recovery_threshold
    if len(responses) < threshold:
        raise InsufficientResponders(
            f"need {threshold} responses, got {len(responses)}"
        )
    alphas = [field.element(alpha) for alpha, _ in responses]
    if len(set(alphas)) != len(alphas):
        raise DuplicatePoints("response points must be distinct")
    chosen = list(responses[:threshold])
    coeffs = solve_vandermonde(field, [a for a, _ in chosen], [v for _, v in chosen])
    t = scheme.t
    return {(i, l): coeffs[i + t * l] for i in range(t) for l in range(t)}


def assemble_output(scheme: PartitionScheme, grid: Mapping[tuple[int, int], np.ndarray]) -> np.ndarray:
    """Stitch the t x t block grid back into the m x m product matrix."""
    t = scheme.t
    return np.block([[grid[(i, l)] for l in range(t)] for i in range(t)])


def run_protocol(
    a: np.ndarray,
    b: np.ndarray,
    scheme: PartitionScheme,
    rng_seed: int | np.random.SeedSequence,
    *,
    phase3_subset: Sequence[int] | None = None,
    field: PrimeField | None = None,
) -> tuple[np.ndarray, Transcript]:
    """Execute all three phases and return (A^T B, transcript).

    The worker count is the exact product-support size for the scheme's gap
    parameter. ``phase3_subset`` selects which workers answer the master
    (default: workers 1..t**2+z).
    """
    fld = field or PrimeField()
    if scheme.m is None:
        raise ValueError("scheme needs the matrix dimension m for a protocol run")
    m, s, t, z = scheme.m, scheme.s, scheme.t, scheme.z
    a = fld.block(a)
    b = fld.block(b)

    support = product_support(scheme)
    n_workers = len(support)
    root = rng_seed if isinstance(rng_seed, np.random.SeedSequence) else np.random.SeedSequence(rng_seed)
    poly_seq, points_seq, workers_root = root.spawn(3)
    worker_seqs = workers_root.spawn(n_workers)

    points, support_inv = _choose_points(fld, support, points_seq)
    fa, fb = coding.build_masked_polynomials(a, b, scheme, poly_seq, fld)

    workers = {n: WorkerState(id=n, alpha=points[n - 1]) for n in range(1, n_workers + 1)}
    messages: list[Message] = []

    block_a_scalars = (m // t) * (m // s)
    block_h_scalars = (m // t) * (m // t)

    # Phase 1: sources evaluate their shares at every worker point.
    for n, worker in workers.items():
        worker.fa_share = fa.evaluate(worker.alpha)
        worker.fb_share = fb.evaluate(worker.alpha)
        messages.append(
            Message(1, "source_a", f"worker_{n}", "share_a", block_a_scalars, _digest(worker.fa_share))
        )
        messages.append(
            Message(1, "source_b", f"worker_{n}", "share_b", block_a_scalars, _digest(worker.fb_share))
        )
        worker.counters.stored += 2 * block_a_scalars

    # Phase 2: multiply shares, re-share scaled results plus fresh masks.
    support_index = {exp: pos for pos, exp in enumerate(support)}
    targets = important_powers(scheme)
    gn_values: dict[int, dict[int, np.ndarray]] = {}
    for n, worker in workers.items():
        worker.h = fld.mat_mul(worker.fa_share, worker.fb_share)
        worker.counters.mults += (m // t) * (m // s) * (m // t)
        worker.counters.stored += block_h_scalars

        worker.rows = {
            key: support_inv[support_index[u]][n - 1] for key, u in targets.items()
        }
        worker.counters.stored += t * t

        rng = np.random.Generator(np.random.Philox(worker_seqs[n - 1]))
        worker.masks = [fld.random_block((m // t, m // t), rng) for _ in range(z)]
        worker.counters.stored += z * block_h_scalars

        gn = build_gn(fld, scheme, worker.h, worker.rows, worker.masks)
        worker.counters.mults += t * t * block_h_scalars  # m**2: scaling h by t**2 coefficients

        gn_values[n] = {dest: gn.evaluate(workers[dest].alpha) for dest in workers}
        worker.counters.mults += n_workers * (t * t - 1 + z) * block_h_scalars
        worker.counters.stored += n_workers * block_h_scalars

    for sender in sorted(workers):
        for receiver in sorted(workers):
            if receiver == sender:
                continue
            payload = gn_values[sender][receiver]
            messages.append(
                Message(
                    2,
                    f"worker_{sender}",
                    f"worker_{receiver}",
                    "g_share",
                    block_h_scalars,
                    _digest(payload),
                )
            )
            workers[sender].counters.sent += block_h_scalars
            workers[receiver].inbox[sender] = payload
            workers[receiver].counters.stored += block_h_scalars

    for n, worker in workers.items():
        acc = gn_values[n][n]
        for sender in sorted(worker.inbox):
            acc = fld.mat_add(acc, worker.inbox[sender])
        worker.i_value = acc
        worker.counters.stored += block_h_scalars

    # Phase 3: chosen responders send their sums to the master.
    threshold = scheme.recovery_threshold
    if phase3_subset is None:
        responders = tuple(range(1, threshold + 1))
    else:
        responders = tuple(phase3_subset)
        if len(set(responders)) < threshold:
            raise InsufficientResponders(
                f"phase-3 subset must contain at least {threshold} distinct workers"
            )
        if any(r not in workers for r in responders):
            raise ValueError("phase-3 subset references unknown worker ids")
    for n in responders:
        messages.append(
            Message(
                3,
                f"worker_{n}",
                "master",
                "i_value",
                block_h_scalars,
                _digest(workers[n].i_value),
            )
        )

    grid = phase3_reconstruct(
        fld, scheme, [(workers[n].alpha, workers[n].i_value) for n in responders]
    )
    y = assemble_output(scheme, grid)

    transcript = Transcript(
        scheme=scheme,
        prime=fld.p,
        points=points,
        support=support,
        n_workers=n_workers,
        messages=messages,
        counters={n: workers[n].counters for n in sorted(workers)},
        i_values={n: workers[n].i_value for n in sorted(workers)},
        responders=responders,
        y=y,
    )
    return y, transcript


def reconstruct_from_transcript(
    transcript: Transcript, worker_ids: Sequence[int], field: PrimeField | None = None
) -> np.ndarray:
    """Re-run the master's reconstruction from a chosen responder subset."""
    fld = field or PrimeField(transcript.prime)
    responses = [
        (transcript.points[n - 1], transcript.i_values[n]) for n in worker_ids
    ]
    grid = phase3_reconstruct(fld, transcript.scheme, responses)
    return assemble_output(transcript.scheme, grid)


def adversary_view(transcript: Transcript, colluders: Iterable[int]) -> dict[int, list[Message]]:
    """Messages received by each colluding worker (their entire view)."""
    colluder_set = sorted(set(colluders))
    if len(colluder_set) > transcript.scheme.z:
        raise TooManyColluders(
            f"at most z={transcript.scheme.z} workers may collude, got {len(colluder_set)}"
        )
    names = {f"worker_{n}": n for n in colluder_set}
    view: dict[int, list[Message]] = {n: [] for n in colluder_set}
    for msg in transcript.messages:
        if msg.receiver in names:
            view[names[msg.receiver]].append(msg)
    return view


def mask_rank_check(
    scheme: PartitionScheme,
    colluders: Iterable[int],
    field: PrimeField | None = None,
    points: Sequence[int] | None = None,
) -> bool:
    """Structural privacy witness for a colluding set.

    For each of the three mask families (A-share masks, B-share masks, and
    the re-share masks on exponents t**2..t**2+z-1) the matrix
    [alpha_n ** p] over colluders n and mask exponents p must have full row
    rank; then the colluders' view is a full-rank linear image of uniform
    masks, i.e. itself uniform.
    """
    fld = field or PrimeField()
    colluder_set = sorted(set(colluders))
    if len(colluder_set) > scheme.z:
        raise TooManyColluders(
            f"at most z={scheme.z} workers may collude, got {len(colluder_set)}"
        )
    if points is None:
        points = range(1, len(product_support(scheme)) + 1)
    points = list(points)
    alphas = [fld.element(points[n - 1]) for n in colluder_set]
    t = scheme.t
    families = (
        powers_secret_a(scheme),
        powers_secret_b(scheme),
        tuple(range(t * t, t * t + scheme.z)),
    )
    for exponents in families:
        matrix = [[fld.pow(alpha, e) for e in exponents] for alpha in alphas]
        if matrix_rank(fld, matrix) != len(colluder_set):
            return False
    return True


def exhaustive_mask_rank_check(
    scheme: PartitionScheme, field: PrimeField | None = None, points: Sequence[int] | None = None
) -> bool:
    """mask_rank_check over every colluding set of size exactly z."""
    n = len(product_support(scheme))
    return all(
        mask_rank_check(scheme, subset, field, points)
        for subset in combinations(range(1, n + 1), scheme.z)
    )
