"""Compare the compiled and pure-Python Weyl closure kernels.

    python3 benchmarks/bench_weyl.py [--repeat N]
"""

import argparse
import time

from multfree import _purepy, data, kernels
from multfree.roots import reflection_matrix

CASES = [("B", 4), ("D", 5), ("E", 6)]


def generators(letter, n):
    Phi = data.cartan_datum(letter, n)
    return [tuple(x for row in reflection_matrix(a, c) for x in row)
            for a, c in zip(Phi.simple_roots, Phi.simple_coroots)], n


def best_of(f, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = f()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled kernel not available; only the Python timing is shown")
    from importlib import import_module

    try:
        compiled = import_module("multfree._speedups").weyl_closure
    except ImportError:
        compiled = None
    print(f"{'type':<6}{'order':>8}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for letter, n in CASES:
        gens, n = generators(letter, n)
        tp, ref = best_of(lambda: _purepy.weyl_closure(gens, n, 10 ** 6), args.repeat)
        if compiled is None:
            print(f"{letter}{n:<5}{len(ref[0]):>8}{tp:>12.3f}{'-':>12}{'-':>10}")
            continue
        tc, got = best_of(lambda: compiled(list(gens), n, 10 ** 6), args.repeat)
        assert got == ref, "backends disagree"
        print(f"{letter}{n:<5}{len(ref[0]):>8}{tp:>12.3f}{tc:>12.3f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
