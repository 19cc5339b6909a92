"""Benchmark the compiled window kernel against the pure-Python fallback.

Usage: python -m btuples.benchmark [--field SPEC] [--width N] [--repeat K]

Runs identical indicator windows through every importable backend, checks
the outputs agree bit for bit, and prints throughput per backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from .bnum import _window_inputs
from .field import parse_field
from .kernels import available_backends


def time_backend(fn, lo, hi, inputs, repeat: int) -> tuple[float, np.ndarray]:
    primes, degs, modulus, f1 = inputs
    best = float("inf")
    bits = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        bits = fn(lo, hi, primes, degs, modulus, f1)
        best = min(best, time.perf_counter() - t0)
    return best, bits


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--field", default="quadratic:-1")
    parser.add_argument("--width", type=int, default=2_000_000)
    parser.add_argument("--lo", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    fld = parse_field(args.field)
    lo = args.lo
    hi = lo + args.width - 1
    inputs = _window_inputs(fld, hi)
    backends = available_backends()

    print(f"field={fld.label} window=[{lo}, {hi}] ({args.width} values), best of {args.repeat}")
    results = {}
    for name in sorted(backends):
        seconds, bits = time_backend(backends[name], lo, hi, inputs, args.repeat)
        results[name] = (seconds, bits)
        rate = args.width / seconds / 1e6
        print(f"  {name:<7} {seconds:9.4f} s   {rate:8.2f} Mvalues/s")

    names = sorted(results)
    for other in names[1:]:
        if not np.array_equal(results[names[0]][1], results[other][1]):
            print(f"MISMATCH between {names[0]} and {other}")
            return 1
    if len(names) == 2:
        speedup = results["python"][0] / results["cython"][0] if "cython" in results else 0.0
        if speedup:
            print(f"  speedup: compiled is {speedup:.1f}x the fallback")
    elif "cython" not in results:
        print("  (compiled kernel not built; only the fallback was timed)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
