"""Compare the compiled and pure-Python compose/reduce kernels.

Run with ``python3 benchmarks/bench_kernel.py [--pairs N] [--leaves K]``.
Both backends get the same random tables and their outputs are compared
before any timing is reported.
"""

from __future__ import annotations

import argparse
import random
import timeit

from thompsonfrac import _vkernel_py
from thompsonfrac.thompson import random_v

try:
    from thompsonfrac import _vkernel
except ImportError:  # extension not built
    _vkernel = None


def make_inputs(n: int, leaves: int, seed: int) -> list:
    rng = random.Random(seed)
    return [(random_v(rng, leaves).pairs, random_v(rng, leaves).pairs) for _ in range(n)]


def run(kernel, inputs):
    return [kernel.compose_reduce(a, b) for a, b in inputs]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=int, default=2000)
    p.add_argument("--leaves", type=int, default=24)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    inputs = make_inputs(args.pairs, args.leaves, args.seed)
    backends = [("python", _vkernel_py)] + ([("compiled", _vkernel)] if _vkernel else [])
    results = {name: run(k, inputs) for name, k in backends}
    if len(results) == 2 and results["python"] != results["compiled"]:
        raise SystemExit("backends disagree")

    print(f"{args.pairs} compositions, up to {args.leaves} leaves per table")
    best = {}
    for name, k in backends:
        best[name] = min(timeit.repeat(lambda: run(k, inputs), number=1, repeat=args.repeat))
        print(f"{name:>9}: {best[name] * 1e6 / args.pairs:8.1f} us/composition")
    if len(best) == 2:
        print(f"  speedup: {best['python'] / best['compiled']:.1f}x")


if __name__ == "__main__":
    main()
