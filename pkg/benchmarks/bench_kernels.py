"""Benchmark the compiled kernels against the pure-Python twins.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Times the cyclic Jacobi eigendecomposition on batches of small symmetric
matrices and the pairwise |difference| product on large sample batches.
Both backends compute bit-identical results; this script reports the
speed difference and verifies the identity on the benchmarked inputs.
"""

import argparse
import time

import numpy as np

from specconvex import _core_py, sampling
from specconvex.kernels import JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL

try:
    from specconvex import _core
except ImportError:
    _core = None


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_jacobi(repeats):
    rng = sampling.philox(1)
    print(f"{'jacobi_eigh':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for d in (2, 3, 4, 6, 8):
        n = 2000
        mats = [
            np.ascontiguousarray(sampling.random_symmetric(rng, d)) for _ in range(n)
        ]

        def run(impl):
            def inner():
                for A in mats:
                    impl.jacobi_eigh(A, JACOBI_OFF_TOL, JACOBI_MAX_SWEEPS)

            return inner

        t_py = time_call(run(_core_py), repeats)
        if _core is None:
            print(f"  d={d}, {n} matrices{t_py * 1e3:>14.1f}ms{'n/a':>12}{'':>10}")
            continue
        t_c = time_call(run(_core), repeats)
        w1, V1, s1 = _core.jacobi_eigh(mats[0], JACOBI_OFF_TOL, JACOBI_MAX_SWEEPS)
        w2, V2, s2 = _core_py.jacobi_eigh(mats[0], JACOBI_OFF_TOL, JACOBI_MAX_SWEEPS)
        assert np.array_equal(w1, w2) and np.array_equal(V1, V2) and s1 == s2
        print(
            f"  d={d}, {n} matrices{t_py * 1e3:>14.1f}ms{t_c * 1e3:>10.1f}ms"
            f"{t_py / t_c:>9.1f}x"
        )


def bench_pairdiff(repeats):
    rng = sampling.philox(2)
    print(f"{'pairdiff_abs_prod':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for d in (2, 3, 4):
        pts = np.ascontiguousarray(rng.uniform(-1, 1, size=(1_000_000, d)))
        t_py = time_call(lambda: _core_py.pairdiff_abs_prod(pts), repeats)
        if _core is None:
            print(f"  d={d}, 1e6 rows{t_py * 1e3:>18.1f}ms{'n/a':>12}{'':>10}")
            continue
        t_c = time_call(lambda: _core.pairdiff_abs_prod(pts), repeats)
        assert np.array_equal(_core.pairdiff_abs_prod(pts), _core_py.pairdiff_abs_prod(pts))
        print(
            f"  d={d}, 1e6 rows{t_py * 1e3:>18.1f}ms{t_c * 1e3:>10.1f}ms"
            f"{t_py / t_c:>9.1f}x"
        )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    if _core is None:
        print("compiled kernels not built; showing pure-Python timings only")
        print("build them with: python setup.py build_ext --inplace")
    bench_jacobi(args.repeats)
    print()
    bench_pairdiff(args.repeats)


if __name__ == "__main__":
    main()
