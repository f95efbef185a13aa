"""Compare the compiled and pure-Python integer HNF kernels.

    python benchmarks/bench_hnf.py [--reps 5] [--seed 1]

Workloads are lattices of the shape the ideal and module code produces
(many generators, few columns, small entries), plus square full-rank
matrices that stress intermediate growth.
"""
import argparse
import random
import timeit

from stacked_bases import _hnf_py, lattice


def workload(rng, m, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


CASES = [
    ("ideal 8x2", 8, 2, 20, 400),
    ("module 24x6", 24, 6, 10, 100),
    ("module 48x8", 48, 8, 5, 40),
    ("square 6x6", 6, 6, 9, 100),
    ("square 6x6 wide", 6, 6, 50, 100),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    ext = lattice._hnf_ext
    if ext is None:
        print("compiled kernel not available; build with pip install -e . --no-build-isolation")
    print(f"{'workload':16} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'fallbacks':>9}")
    for name, m, n, bound, count in CASES:
        rng = random.Random(args.seed)
        mats = [workload(rng, m, n, bound) for _ in range(count)]
        fallbacks = 0
        for A in mats:
            want = _hnf_py.hnf(A, n)
            if ext is not None:
                try:
                    got = ext.hnf(A, n)
                except OverflowError:
                    fallbacks += 1
                    continue
                assert got == want, name
        py = min(timeit.repeat(lambda: [_hnf_py.hnf(A, n) for A in mats], number=1, repeat=args.reps))
        if ext is None:
            print(f"{name:16} {py * 1e3:10.1f} {'-':>10} {'-':>8} {'-':>9}")
            continue
        cy = min(timeit.repeat(lambda: [lattice.hnf(A, n) for A in mats], number=1, repeat=args.reps))
        print(f"{name:16} {py * 1e3:10.1f} {cy * 1e3:10.1f} {py / cy:7.1f}x {fallbacks:9d}")


if __name__ == "__main__":
    main()
