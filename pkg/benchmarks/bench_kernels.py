"""Compare the compiled mod-p kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py            # kernel timings
    python3 benchmarks/bench_kernels.py --pipeline # plus end-to-end runs in subprocesses

Kernel timings call both implementations directly on the same inputs and
check that the outputs agree.  The pipeline section runs a few enumerations
once with the compiled kernels and once with WEAKHOPF_PURE_PYTHON=1.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from weakhopf import _pykernels

try:
    from weakhopf import _ckernels
except ImportError:
    _ckernels = None

PIPELINE = {
    "classify z2 on F3[t]/t^2": "classify(ctx('z2-F3-dual-numbers'))",
    "H^2 indiscrete2 over F3 (prefilter)": "cohomology_h2(ctx('indiscrete2-F3-translation'), prefilter=True)",
    "enumerate Reg(H, A) indiscrete2 over F2": "enumerate_cochains(ctx('indiscrete2-F2-translation'), 1, False)",
}


def best_of(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10**5:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def bench_kernels(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for p in (2, 3, 65521):
        for n in (8, 32, 96):
            a = rng.integers(0, p, size=(n, n), dtype=np.int64)
            b = rng.integers(0, p, size=(n, n), dtype=np.int64)
            # structure maps are sparse 0/1 matrices; measure that shape too
            s = (rng.random((n, n)) < 0.1).astype(np.int64)
            for label, x, y in (("matmul dense", a, b), ("matmul sparse", s, b)):
                py = best_of(lambda: _pykernels.matmul_mod(x, y, p), repeat)
                row = [label, p, n, py]
                if _ckernels is not None:
                    assert np.array_equal(_ckernels.matmul_mod(x, y, p), _pykernels.matmul_mod(x, y, p))
                    row.append(best_of(lambda: _ckernels.matmul_mod(x, y, p), repeat))
                rows.append(row)
            m = rng.integers(0, p, size=(n, 2 * n), dtype=np.int64)
            py = best_of(lambda: _pykernels.rref_mod(m, p), repeat)
            row = ["rref", p, n, py]
            if _ckernels is not None:
                r1, p1 = _ckernels.rref_mod(m, p)
                r2, p2 = _pykernels.rref_mod(m, p)
                assert np.array_equal(r1, r2) and p1 == p2
                row.append(best_of(lambda: _ckernels.rref_mod(m, p), repeat))
            rows.append(row)
    print(f"{'kernel':<14} {'p':>6} {'n':>4} {'numpy (us)':>12} {'cython (us)':>12} {'speedup':>8}")
    for label, p, n, py, *cy in rows:
        if cy:
            print(f"{label:<14} {p:>6} {n:>4} {py * 1e6:>12.1f} {cy[0] * 1e6:>12.1f} {py / cy[0]:>7.2f}x")
        else:
            print(f"{label:<14} {p:>6} {n:>4} {py * 1e6:>12.1f} {'-':>12} {'-':>8}")


def bench_pipeline():
    prelude = ("import time; from weakhopf.fixtures import standard_contexts; "
               "from weakhopf.cohomology import cohomology_h2, enumerate_cochains; "
               "from weakhopf.equivalence import classify; from weakhopf import kernels; "
               "ctx = lambda n: standard_contexts()[n](); ")
    print(f"\n{'pipeline':<42} {'backend':>8} {'seconds':>9}")
    for label, stmt in PIPELINE.items():
        for pure in (False, True):
            env = dict(os.environ)
            env.pop("WEAKHOPF_PURE_PYTHON", None)
            if pure:
                env["WEAKHOPF_PURE_PYTHON"] = "1"
            code = prelude + f"t = time.perf_counter(); {stmt}; print(kernels.BACKEND, time.perf_counter() - t)"
            out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
            backend, secs = out.stdout.split()
            print(f"{label:<42} {backend:>8} {float(secs):>9.3f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--pipeline", action="store_true", help="also time end-to-end computations")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; showing the numpy fallback only")
    bench_kernels(args.repeat)
    if args.pipeline:
        bench_pipeline()


if __name__ == "__main__":
    main()
