#!/usr/bin/env python3
"""Time the compiled and pure-Python kernels on the workloads the verifiers use.

    python benchmarks/bench_kernels.py --order 40 --repeat 5
"""

import argparse
import random
import timeit
from fractions import Fraction

from legsq import _pykernels, kernels
from legsq.identities import verify_main1

try:
    from legsq import _ckernels
except ImportError:
    _ckernels = None


def workloads(order: int, seed: int):
    rng = random.Random(seed)
    big = [rng.randrange(-10**60, 10**60) for _ in range(order + 1)]
    big2 = [rng.randrange(-10**60, 10**60) for _ in range(order + 1)]
    fr = [Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(order + 1)]
    fr2 = [Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(order + 1)]
    return {
        "convolve int": lambda k: k.convolve(big, big2, order),
        "convolve Fraction": lambda k: k.convolve(fr, fr2, order),
        "u_n table (n=2000)": lambda k: k.apery_like_table(2000, 13, 4, 3, 3),
        f"main1 N={order}": lambda k: _with_backend(k, lambda: verify_main1(order).passed),
    }


def _with_backend(module, fn):
    saved = kernels.convolve, kernels.apery_like_table
    kernels.convolve, kernels.apery_like_table = module.convolve, module.apery_like_table
    try:
        return fn()
    finally:
        kernels.convolve, kernels.apery_like_table = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled extension not built; timing the pure-Python kernels only")

    print(f"{'workload':<22}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if len(backends) == 2 else ""))
    for label, fn in workloads(args.order, args.seed).items():
        results = [fn(k) for _, k in backends]
        assert all(r == results[0] for r in results), label
        times = []
        for _, k in backends:
            number = 50 if label.startswith("convolve") else 1
            best = min(timeit.repeat(lambda: fn(k), number=number, repeat=args.repeat)) / number
            times.append(best)
        row = f"{label:<22}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.2f}x"
        print(row)


if __name__ == "__main__":
    main()
