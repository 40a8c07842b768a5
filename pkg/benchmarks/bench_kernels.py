"""Compare the compiled and numpy elimination kernels.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.  Reports the best
time per backend for random matrices mod small primes, for the raw rank kernel
and for an end-to-end graded computation that leans on it.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dle import kernels
from dle.arithmetic import LocalSurfaceCase
from dle.complexes import euler_char
from dle.derived import derived_exterior


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def rank_job(shape, p, seed=0):
    rng = np.random.default_rng(seed)
    mats = [rng.integers(0, p, size=shape, dtype=np.int64) for _ in range(20)]

    def run():
        return [kernels.rank_array(m.copy(), p) for m in mats]
    return run


def graded_job(p, r):
    case = LocalSurfaceCase.of(p)

    def run():
        return euler_char(derived_exterior(r, case.k_res))
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    jobs = [
        ("rank 40x40 mod 2", rank_job((40, 40), 2)),
        ("rank 120x150 mod 3", rank_job((120, 150), 3)),
        ("rank 300x300 mod 5", rank_job((300, 300), 5)),
        ("chi(lambda~^2 k), p = 3", graded_job(3, 2)),
        ("chi(lambda~^3 k), p = 2", graded_job(2, 3)),
    ]
    backends = kernels.available_backends()
    print(f"{'job':28s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    prev = kernels.backend_name()
    try:
        for label, job in jobs:
            results, times = [], []
            for b in backends:
                kernels.use_backend(b)
                results.append(job())
                times.append(best_of(job, args.repeat))
            if any(r != results[0] for r in results):
                raise SystemExit(f"backends disagree on {label}")
            line = f"{label:28s}" + "".join(f"{t * 1000:10.2f}ms" for t in times)
            if len(times) > 1:
                line += f"{times[1] / times[0]:11.1f}x"
            print(line)
    finally:
        kernels.use_backend(prev)


if __name__ == "__main__":
    main()
