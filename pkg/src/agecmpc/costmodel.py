"""Closed-form per-worker resource costs and transcript reconciliation.

The three formulas (scalar multiplications, stored scalars, exchanged
scalars) use the same accounting conventions as the simulator's counters,
so reconciliation against a real transcript must come out to zero deltas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .powersets import PartitionScheme
from .protocol import Transcript


class SchemeMismatch(ValueError):
    """Transcript and cost report describe different runs."""


@dataclass(frozen=True)
class CostReport:
    """Predicted per-run resource usage for a scheme at a given worker count."""

    scheme: PartitionScheme
    n_workers: int
    xi: int  # scalar multiplications per worker
    sigma: int  # scalars stored per worker
    zeta: int  # scalars exchanged among workers

    def to_dict(self) -> dict:
        return {
            "scheme": {
                "s": self.scheme.s,
                "t": self.scheme.t,
                "z": self.scheme.z,
                "lambda": self.scheme.lam,
                "m": self.scheme.m,
            },
            "n_workers": self.n_workers,
            "xi": self.xi,
            "sigma": self.sigma,
            "zeta": self.zeta,
        }


def predicted_costs(scheme: PartitionScheme, n_workers: int) -> CostReport:
    """Closed-form (xi, sigma, zeta) for a scheme ran with n_workers workers.

    xi    = m**3/(s*t**2) + m**2 + N*(t**2 + z - 1)*m**2/t**2
    sigma = (2N + z + 1)*m**2/t**2 + 2*m**2/(s*t) + t**2
    zeta  = N*(N - 1)*m**2/t**2
    """
    m, s, t, z = scheme.m, scheme.s, scheme.t, scheme.z
    if m is None:
        raise ValueError("scheme needs the matrix dimension m for cost prediction")
    n = n_workers
    block = (m // t) * (m // t)
    xi = (m // t) * (m // s) * (m // t) + m * m + n * (t * t + z - 1) * block
    sigma = (2 * n + z + 1) * block + 2 * (m // s) * (m // t) + t * t
    zeta = n * (n - 1) * block
    return CostReport(scheme=scheme, n_workers=n, xi=xi, sigma=sigma, zeta=zeta)


def reconcile(transcript: Transcript, report: CostReport) -> dict[str, tuple[int, int, int]]:
    """Per-field (predicted, measured, delta) between formulas and counters.

    The simulated protocol is symmetric, so per-worker counters are required
    to agree across workers before being compared against the prediction.
    """
    if transcript.scheme != report.scheme:
        raise SchemeMismatch("transcript and report were built for different schemes")
    if transcript.n_workers != report.n_workers:
        raise SchemeMismatch(
            f"transcript ran {transcript.n_workers} workers, report assumes {report.n_workers}"
        )
    counters = list(transcript.counters.values())
    mults = {c.mults for c in counters}
    stored = {c.stored for c in counters}
    if len(mults) != 1 or len(stored) != 1:
        raise SchemeMismatch("per-worker counters are not homogeneous")
    measured_xi = mults.pop()
    measured_sigma = stored.pop()
    measured_zeta = transcript.phase2_scalars()
    return {
        "xi": (report.xi, measured_xi, measured_xi - report.xi),
        "sigma": (report.sigma, measured_sigma, measured_sigma - report.sigma),
        "zeta": (report.zeta, measured_zeta, measured_zeta - report.zeta),
    }
