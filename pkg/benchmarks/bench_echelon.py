"""Compare the compiled and pure-Python elimination kernels.

Usage: python3 benchmarks/bench_echelon.py [--sizes 20 40 80] [--repeat 3] [--seed 0]

Each case is a random integer matrix with small entries; both kernels get
identical copies and their outputs are compared before timings are printed.
The last case times a real workload (Sp(5)/SU(5) certificate plus Heis_3
cohomology) under each backend in a subprocess.
"""
import argparse
import os
import random
import subprocess
import sys
import time

from dgatool import _echelon_py

try:
    from dgatool import _echelon
except ImportError:
    _echelon = None


def random_matrix(rng, n, m, density=0.5, bound=9):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(m)] for _ in range(n)]


def best_of(fn, rows, ncols, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        copy = [list(r) for r in rows]
        t = time.perf_counter()
        out = fn(copy, ncols)
        best = min(best, time.perf_counter() - t)
    return best, out


WORKLOAD = """
import time
from dgatool import catalog as cat
from dgatool.cohomology import betti_numbers
from dgatool.regularity import formality_certificate
t = time.perf_counter()
P = cat.polynomial_ring(22)
formality_certificate(P, [P.parse(s) for s in cat.SP5_SEQUENCE], 19)
betti_numbers(cat.heisenberg_model(3))
print(time.perf_counter() - t)
"""


def workload(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["DGATOOL_PURE"] = "1"
    else:
        env.pop("DGATOOL_PURE", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _echelon is None:
        print("compiled kernel not built; only the fallback is available")
    rng = random.Random(args.seed)
    print(f"{'matrix':>12} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in args.sizes:
        rows = random_matrix(rng, n, n + n // 2)
        tp, rp = best_of(_echelon_py.echelon, rows, n + n // 2, args.repeat)
        if _echelon is None:
            print(f"{n:>5}x{n + n // 2:<6} {tp:12.4f} {'-':>12} {'-':>8}")
            continue
        tc, rc = best_of(_echelon.echelon, rows, n + n // 2, args.repeat)
        if rp != rc:
            raise SystemExit(f"kernels disagree on the {n}x{n + n // 2} case")
        print(f"{n:>5}x{n + n // 2:<6} {tp:12.4f} {tc:12.4f} {tp / tc:8.2f}")
    wp = workload(pure=True)
    if _echelon is not None:
        wc = workload(pure=False)
        print(f"{'workload':>12} {wp:12.4f} {wc:12.4f} {wp / wc:8.2f}")
    else:
        print(f"{'workload':>12} {wp:12.4f}")


if __name__ == "__main__":
    main()
