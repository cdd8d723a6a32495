"""Compare the compiled partition-search kernel with the pure-Python
fallback on the exact-optimum workload (the hot loop behind opt_cc and
opt_fair).

Usage: python3 benchmarks/bench_kernels.py [--sizes 6,7,8,9] [--reps 5]
"""

import argparse
import random
import time

import numpy as np

from faircc import SignedCompleteGraph
from faircc._kernels import IMPLEMENTATION, get_implementation


def random_instance(n, seed):
    rng = random.Random(seed)
    signs = np.ones((n, n), dtype=np.int8)
    for u in range(n):
        for v in range(u + 1, n):
            signs[u, v] = signs[v, u] = -1 if rng.random() < 0.5 else 1
    np.fill_diagonal(signs, 0)
    g = SignedCompleteGraph(n, signs)
    neg = (g.signs < 0).astype(np.uint8).tolist()
    colors = [v % 2 for v in range(n)]
    return neg, colors


def bench(kernel, cases, fair):
    start = time.perf_counter()
    results = []
    for neg, colors in cases:
        results.append(kernel(neg, colors, 0, [1, 1], [1, 1], fair))
    return time.perf_counter() - start, results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="6,7,8,9")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    kernels = {"python": get_implementation("python")}
    if IMPLEMENTATION == "cython":
        kernels["cython"] = get_implementation("cython")
    else:
        print("compiled kernel unavailable, benchmarking fallback only")

    print(f"{'n':>3} {'mode':>12}", *(f"{name:>12}" for name in kernels), sep="  ")
    for n in sizes:
        cases = [random_instance(n, seed) for seed in range(args.reps)]
        for fair in (False, True):
            mode = "fair" if fair else "unconstrained"
            times, outputs = {}, {}
            for name, kernel in kernels.items():
                times[name], outputs[name] = bench(kernel, cases, fair)
            if len(outputs) == 2 and outputs["python"] != outputs["cython"]:
                raise SystemExit("kernel results disagree")
            row = [f"{n:>3} {mode:>12}"]
            row += [f"{times[name] / args.reps * 1000:>10.2f}ms" for name in kernels]
            print(*row, sep="  ")
    if len(kernels) == 2:
        print("results verified identical between implementations")


if __name__ == "__main__":
    main()
