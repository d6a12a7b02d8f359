"""Compare the compiled and pure-Python sampling kernels.

    python benchmarks/bench_kernels.py [--points 2000] [--repeat 3]

Both backends get the same closed-form basis (taken from catalog algebras)
and the same random points; results must match exactly.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from nilsym import _kernels
from nilsym._kernels import _pykernels
from nilsym.catalog import named
from nilsym.symplectic import _integer_grams, _stack, closed_two_forms

try:
    from nilsym._kernels import _ckernels
except ImportError:
    _ckernels = None


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    rng = random.Random(args.seed)
    print(f"{'algebra':12s} {'n':>3s} {'m':>3s} {'kernel':10s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name in ("h3_a1", "dim6_1", "k8", "h82_rigid", "n42"):
        L = named(name).algebra
        grams = _integer_grams(closed_two_forms(L))
        stack = _stack(grams, L.dim)
        m = len(grams)
        pts = np.array([[rng.randint(0, _kernels.PRIME - 1) for _ in range(m)] for _ in range(args.points)],
                       dtype=np.int64)
        for kernel in ("sample_pfaffians", "sample_ranks"):
            py, cy = getattr(_pykernels, kernel), getattr(_ckernels, kernel)
            if not np.array_equal(py(stack, pts, _kernels.PRIME), cy(stack, pts, _kernels.PRIME)):
                raise SystemExit(f"backend mismatch on {name} / {kernel}")
            tp = _best(lambda: py(stack, pts, _kernels.PRIME), args.repeat)
            tc = _best(lambda: cy(stack, pts, _kernels.PRIME), args.repeat)
            print(f"{name:12s} {L.dim:3d} {m:3d} {kernel[7:]:10s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
