"""Benchmark the compiled kernel backend against the pure-numpy fallback.

Times the raw block-matmul kernel at several sizes and one full protocol
run per backend. Usage::

    python benchmarks/bench_backends.py [--m 60] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from agecmpc import PartitionScheme, PrimeField, run_protocol, set_backend
from agecmpc._kernels import available_backends, matmul_mod


def time_call(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_matmul(field: PrimeField, repeats: int) -> None:
    rng = np.random.Generator(np.random.Philox(0))
    print(f"{'matmul n x n':<16}" + "".join(f"{name:>12}" for name in available_backends()))
    for n in (16, 32, 64, 128):
        a = field.random_block((n, n), rng)
        b = field.random_block((n, n), rng)
        cells = []
        for name in available_backends():
            set_backend(name)
            cells.append(time_call(lambda: matmul_mod(a, b, field.p), repeats))
        print(f"{n:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in cells))


def bench_protocol(field: PrimeField, m: int, repeats: int) -> None:
    scheme = PartitionScheme(s=2, t=3, z=3, lam=1, m=m)
    rng = np.random.Generator(np.random.Philox(1))
    a = field.random_block((m, m), rng)
    b = field.random_block((m, m), rng)
    print(f"\nfull protocol run (m={m}, s=2, t=3, z=3, N=35)")
    for name in available_backends():
        set_backend(name)
        elapsed = time_call(lambda: run_protocol(a, b, scheme, rng_seed=3), repeats)
        print(f"  {name:<6} {elapsed * 1e3:>10.1f}ms")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=60, help="matrix dimension for the protocol run")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    field = PrimeField()
    print(f"backends available: {available_backends()}\n")
    bench_matmul(field, args.repeats)
    bench_protocol(field, args.m, args.repeats)
    set_backend("fast" if "fast" in available_backends() else "pure")


if __name__ == "__main__":
    main()
