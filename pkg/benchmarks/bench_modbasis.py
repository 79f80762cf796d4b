"""Benchmark: compiled vs pure-Python order-basis kernel over GF(p).

Run:  python benchmarks/bench_modbasis.py [k] [order]
"""

import random
import sys
import time

from odemin import modbasis_py

try:
    from odemin import _modbasis
except ImportError:
    _modbasis = None

PRIME = 2147483647


def workload(k: int, order: int, seed: int = 0):
    rng = random.Random(seed)
    return [[rng.randrange(PRIME) for _ in range(order)] for _ in range(k)]


def run(kernel, series, shifts, order):
    t0 = time.perf_counter()
    rows, delta = kernel.order_basis_modp(series, shifts, order, PRIME)
    return time.perf_counter() - t0, rows


def main():
    k = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    order = int(sys.argv[2]) if len(sys.argv) > 2 else 600
    series = workload(k, order)
    shifts = [order // (k + 1)] * k
    t_py, rows_py = run(modbasis_py, series, shifts, order)
    print(f"python kernel : k={k} order={order}  {t_py:8.3f}s")
    if _modbasis is None:
        print("compiled kernel not built; install with `pip install -e .`")
        return
    t_cy, rows_cy = run(_modbasis, series, shifts, order)
    print(f"cython kernel : k={k} order={order}  {t_cy:8.3f}s  ({t_py / t_cy:.1f}x)")
    assert rows_py == rows_cy, "kernels disagree"
    print("kernels agree")


if __name__ == "__main__":
    main()
