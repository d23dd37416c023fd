#!/usr/bin/env python3
"""Benchmark the compiled composition kernel against the pure-Python
fallback on a full 16-rule chip.

Run:  python benchmarks/bench_kernels.py [--states N]
"""

import argparse
import time

import numpy as np

from fuzzchip import kernels


def build_arrays(rng, n_rules=16, n_inputs=4, n_outputs=2):
    ant = rng.integers(0, 16, size=(n_rules, n_inputs, 16)).astype(np.uint8)
    con = rng.integers(0, 16, size=(n_rules, n_outputs, 16)).astype(np.uint8)
    return ant, con


def time_backend(evaluator, impl, ant, con, states, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        evaluator(ant, con, states, impl=impl)
        best = min(best, time.perf_counter() - started)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--states", type=int, default=100_000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    ant, con = build_arrays(rng)
    backends = kernels.available_backends()

    # pure-Python timing on the full batch is prohibitive; scale it down
    # and report per-state rates for both
    pure_states = rng.integers(0, 16, size=(max(args.states // 50, 1000), 4)).astype(np.uint8)
    full_states = rng.integers(0, 16, size=(args.states, 4)).astype(np.uint8)

    print(f"active backend: {kernels.BACKEND}")
    print("chip: 16 rules, 4 inputs, 2 outputs")
    for name, evaluator in (("minmax", kernels.minmax_eval), ("product", kernels.product_eval)):
        rates = {}
        elapsed = time_backend(evaluator, backends["pure"], ant, con, pure_states)
        rates["pure"] = pure_states.shape[0] / elapsed
        if "compiled" in backends:
            elapsed = time_backend(evaluator, backends["compiled"], ant, con, full_states)
            rates["compiled"] = full_states.shape[0] / elapsed
        line = f"{name:8s}  pure: {rates['pure']:>12,.0f} states/s"
        if "compiled" in rates:
            line += (
                f"   compiled: {rates['compiled']:>12,.0f} states/s"
                f"   speedup: {rates['compiled'] / rates['pure']:.1f}x"
            )
        print(line)

    if "compiled" not in backends:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
