"""Benchmark the numba and pure-numpy enumeration backends.

Runs the same workloads under both backends, checks the results agree,
and prints a timing table.  Usage::

    python3 benchmarks/bench_count.py [--repeat N]
"""

import argparse
import time

from skewplanes import kernels
from skewplanes.count import count_zeros
from skewplanes.domains import field_create
from skewplanes.families import build_ab, build_x
from skewplanes.heights import direct_height_count


def _workloads():
    F101 = field_create(101)
    F211 = field_create(211)
    F49 = field_create(7, 2)
    F13 = field_create(13)
    ab_f13 = [f.map_domain(F13, F13.reduce_rational) for f in build_ab(2, 1)]
    return [
        ("count X^2_2 over F_101 (P^3, ~1.06M pts)",
         lambda: count_zeros([build_x(1, 2, F101)], F101)),
        ("count X^2_1 over F_211 (P^3, ~9.4M pts, sharded x8)",
         lambda: count_zeros([build_x(1, 1, F211)], F211, shards=8)),
        ("count X^2_1 over F_49 (extension field)",
         lambda: count_zeros([build_x(1, 1, F49)], F49)),
        ("count Y (n=2, d=1) over F_13 (codim 2 in P^5)",
         lambda: count_zeros(ab_f13, F13, shards=8)),
        ("height scan d=1, B=40 (direct, P^3 over Q)",
         lambda: direct_height_count(1, 40)),
    ]


def _best_time(fn, repeat):
    best, value = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timed repetitions per workload (best is kept)")
    args = parser.parse_args()

    backends = ["numpy"]
    if kernels.HAS_NUMBA:
        backends.insert(0, "numba")
    else:
        print("numba not importable; timing the numpy backend only\n")

    if "numba" in backends:
        kernels.force_backend("numba")
        kernels.warmup()  # pay JIT compilation cost outside the timings

    widths = max(len(name) for name, _ in _workloads())
    header = f"{'workload':<{widths}}  " + "  ".join(f"{b:>10}" for b in backends)
    print(header)
    print("-" * len(header))

    try:
        for name, fn in _workloads():
            times, values = {}, {}
            for backend in backends:
                kernels.force_backend(backend)
                times[backend], values[backend] = _best_time(fn, args.repeat)
            if len(set(values.values())) != 1:
                raise AssertionError(f"backend mismatch on {name}: {values}")
            row = f"{name:<{widths}}  " + "  ".join(
                f"{times[b]:>9.3f}s" for b in backends)
            if len(backends) == 2:
                row += f"   (x{times['numpy'] / times['numba']:.1f}, result {values['numba']})"
            else:
                row += f"   (result {values['numpy']})"
            print(row)
    finally:
        kernels.force_backend(None)


if __name__ == "__main__":
    main()
