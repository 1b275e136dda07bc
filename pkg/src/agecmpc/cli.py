"""Command-line front end: planning, parameter sweeps, protocol runs, and
closed-form-versus-enumeration validation. Emits CSV/JSON for plotting.

Subcommands:

* ``plan``   -- worker counts, optimal gap, per-gap table, baseline comparison
* ``sweep``  -- CSV over all divisor pairs of a fixed partition product
* ``run``    -- execute the protocol on seeded inputs and reconcile counters
* ``oracle`` -- grid validation of the closed forms against enumeration

Every subcommand is deterministic given its flags and seed; exit status is 0
iff all internal assertions pass. ``AGE_MPC_PRIME`` overrides the default
field prime when ``--prime`` is not given.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import costmodel, powersets, protocol, workercount
from .field import DEFAULT_PRIME, PrimeField

SCHEMA_VERSION = 1

_SCHEME_COLUMNS = ["s", "t", "z", "m", "scheme_name", "N", "lambda_star", "xi", "sigma", "zeta"]


def _default_prime() -> int:
    env = os.environ.get("AGE_MPC_PRIME")
    return int(env) if env else DEFAULT_PRIME


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _plan_csv(report: workercount.WorkerCountReport) -> str:
    buf = io.StringIO()
    buf.write("record,lambda,count,case\n")
    for lam, count, case in report.gamma_table:
        buf.write(f"gamma,{lam},{count},{case}\n")
    buf.write(f"age,{'' if report.lambda_star is None else report.lambda_star},{report.n_age},\n")
    buf.write(f"entangled,,{report.n_entangled},\n")
    buf.write(f"ssmm,,{report.n_ssmm},\n")
    buf.write(f"gcsa_na,,{report.n_gcsa_na},\n")
    buf.write(f"polydot,,{'' if report.n_polydot is None else report.n_polydot},\n")
    return buf.getvalue()


def cmd_plan(args: argparse.Namespace) -> int:
    scheme = powersets.PartitionScheme(s=args.s, t=args.t, z=args.z, m=args.m)
    report = workercount.compare(scheme)
    if args.format == "csv":
        _emit(_plan_csv(report), args.out)
    else:
        payload = {"schema_version": SCHEMA_VERSION, **report.to_dict()}
        _emit(json.dumps(payload, indent=2), args.out)
    return 0 if all(report.lemma_checks.values()) else 1


def _sweep_rows(st: int, z: int, m: int) -> list[dict]:
    rows = []
    for s in sorted(d for d in range(1, st + 1) if st % d == 0):
        t = st // s
        if s == 1 and t == 1:
            continue
        if m % s or m % t:
            raise ValueError(f"m={m} is not divisible by the partition pair (s={s}, t={t})")
        base = powersets.PartitionScheme(s=s, t=t, z=z, m=m)
        age_n, lambda_star = workercount.n_age(base)
        counts = [
            ("age-cmpc", age_n, lambda_star),
            ("entangled-cmpc", workercount.n_entangled(base), None),
            ("ssmm", workercount.n_ssmm(base), None),
            ("gcsa-na", workercount.n_gcsa_na(base), None),
            ("polydot-cmpc", workercount.n_polydot(base), None),
        ]
        for name, n, lam_star in counts:
            row = {"s": s, "t": t, "z": z, "m": m, "scheme_name": name}
            if n is None:
                row.update({"N": None, "lambda_star": None, "xi": None, "sigma": None, "zeta": None})
            else:
                costs = costmodel.predicted_costs(base, n)
                row.update(
                    {
                        "N": n,
                        "lambda_star": lam_star,
                        "xi": costs.xi,
                        "sigma": costs.sigma,
                        "zeta": costs.zeta,
                    }
                )
            rows.append(row)
    return rows


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(",".join(_SCHEME_COLUMNS) + "\n")
    for row in rows:
        buf.write(
            ",".join("" if row[col] is None else str(row[col]) for col in _SCHEME_COLUMNS) + "\n"
        )
    return buf.getvalue()


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = _sweep_rows(args.st, args.z, args.m)
    if args.format == "json":
        _emit(json.dumps({"schema_version": SCHEMA_VERSION, "rows": rows}, indent=2), args.out)
    else:
        _emit(_rows_to_csv(rows), args.out)
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    field = PrimeField(args.prime)
    lam = args.lam
    if lam is None:
        _, lam = workercount.n_age(powersets.PartitionScheme(s=args.s, t=args.t, z=args.z))
        lam = 0 if lam is None else lam
    scheme = powersets.PartitionScheme(s=args.s, t=args.t, z=args.z, lam=lam, m=args.m)

    root = np.random.SeedSequence(args.seed)
    input_seq, proto_seq, subset_seq = root.spawn(3)
    if args.identity:
        a = field.identity(args.m)
        b = field.identity(args.m)
    else:
        rng = np.random.Generator(np.random.Philox(input_seq))
        a = field.random_block((args.m, args.m), rng)
        b = field.random_block((args.m, args.m), rng)

    subset = tuple(range(1, args.phase3_subset + 1)) if args.phase3_subset else None
    y, transcript = protocol.run_protocol(
        a, b, scheme, rng_seed=proto_seq, phase3_subset=subset, field=field
    )
    expected = field.mat_mul(field.block(a.T), b)
    correct = bool(np.array_equal(y, expected))

    report = costmodel.predicted_costs(scheme, transcript.n_workers)
    deltas = costmodel.reconcile(transcript, report)

    subset_rng = np.random.Generator(np.random.Philox(subset_seq))
    threshold = scheme.recovery_threshold
    subset_results = []
    for _ in range(args.subset_trials):
        ids = sorted(
            int(v) + 1 for v in subset_rng.choice(transcript.n_workers, size=threshold, replace=False)
        )
        y_sub = protocol.reconstruct_from_transcript(transcript, ids, field)
        subset_results.append(bool(np.array_equal(y_sub, y)))

    verdict = {
        "schema_version": SCHEMA_VERSION,
        "scheme": {"s": args.s, "t": args.t, "z": args.z, "lambda": lam, "m": args.m},
        "n_workers": transcript.n_workers,
        "correct": correct,
        "counters": next(iter(transcript.counters.values())).__dict__,
        "reconcile": {k: {"predicted": v[0], "measured": v[1], "delta": v[2]} for k, v in deltas.items()},
        "recovery_subsets": {"trials": len(subset_results), "all_correct": all(subset_results)},
        "y_digest": transcript.y_digest(),
    }
    _emit(json.dumps(verdict, indent=2), args.out)
    ok = correct and all(v[2] == 0 for v in deltas.values()) and all(subset_results)
    return 0 if ok else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    tuples = 0
    mismatches = []
    undecodable = []
    for s in range(1, args.s_max + 1):
        for t in range(2, args.t_max + 1):
            for z in range(1, args.z_max + 1):
                for lam in range(0, z + 1):
                    scheme = powersets.PartitionScheme(s=s, t=t, z=z, lam=lam)
                    tuples += 1
                    count, case = workercount.gamma(scheme)
                    oracle = len(powersets.product_support(scheme))
                    if count != oracle:
                        mismatches.append(
                            {"s": s, "t": t, "z": z, "lambda": lam, "case": case,
                             "closed_form": count, "enumerated": oracle}
                        )
                    if not powersets.check_decodability(scheme):
                        undecodable.append({"s": s, "t": t, "z": z, "lambda": lam})
    summary = {
        "schema_version": SCHEMA_VERSION,
        "tuples_checked": tuples,
        "gamma_mismatches": len(mismatches),
        "decodability_failures": len(undecodable),
        "first_counterexample": mismatches[0] if mismatches else None,
        "ok": not mismatches and not undecodable,
    }
    _emit(json.dumps(summary, indent=2), args.out)
    return 0 if summary["ok"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agecmpc",
        description="Adaptive-gap entangled coded multi-party matrix multiplication toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--prime", type=int, default=_default_prime(), help="field prime")
        p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], help="output format")

    plan = sub.add_parser("plan", help="worker counts and baseline comparison")
    plan.add_argument("--s", type=int, required=True)
    plan.add_argument("--t", type=int, required=True)
    plan.add_argument("--z", type=int, required=True)
    plan.add_argument("--m", type=int, default=None)
    add_common(plan)
    plan.set_defaults(func=cmd_plan, format_default="json")

    sweep = sub.add_parser("sweep", help="CSV over divisor pairs of a fixed s*t")
    sweep.add_argument("--st", type=int, required=True, help="fixed partition product s*t")
    sweep.add_argument("--z", type=int, required=True)
    sweep.add_argument("--m", type=int, required=True)
    add_common(sweep)
    sweep.set_defaults(func=cmd_sweep, format_default="csv")

    run = sub.add_parser("run", help="execute the protocol and reconcile counters")
    run.add_argument("--m", type=int, required=True)
    run.add_argument("--s", type=int, required=True)
    run.add_argument("--t", type=int, required=True)
    run.add_argument("--z", type=int, required=True)
    run.add_argument("--lambda", dest="lam", type=int, default=None, help="gap override (default: optimal)")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--identity", action="store_true", help="use identity inputs instead of random")
    run.add_argument("--phase3-subset", type=int, default=None, help="use only the first K responders")
    run.add_argument("--subset-trials", type=int, default=5, help="random recovery subsets to test")
    add_common(run)
    run.set_defaults(func=cmd_run, format_default="json")

    oracle = sub.add_parser("oracle", help="validate closed forms against enumeration on a grid")
    oracle.add_argument("--s-max", type=int, required=True)
    oracle.add_argument("--t-max", type=int, required=True)
    oracle.add_argument("--z-max", type=int, required=True)
    add_common(oracle)
    oracle.set_defaults(func=cmd_oracle, format_default="json")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.format_default
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
