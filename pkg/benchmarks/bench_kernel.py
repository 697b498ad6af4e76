"""Compare the compiled and pure-Python kernels on the hot loops.

Run: python benchmarks/bench_kernel.py
"""

import time

import numpy as np

from chartower import _kernel_py
from chartower.catalog import build_entry

try:
    from chartower import _kernel_c
    IMPLS = [("python", _kernel_py), ("cython", _kernel_c)]
except ImportError:
    print("compiled kernel not built (python setup.py build_ext --inplace)")
    IMPLS = [("python", _kernel_py)]


def bench(name, fn, repeat=3):
    best = min(_timed(fn) for _ in range(repeat))
    print(f"  {name:<22} {best * 1000:9.2f} ms")
    return best


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    g = build_entry("M243")
    table, inv, ident = g.table, g.inv, g.identity
    rng = np.random.default_rng(7)
    singles = rng.integers(0, g.order, size=120)
    results = {}
    for label, impl in IMPLS:
        print(f"kernel = {label}")
        results[label, "closure"] = bench(
            "closure x120", lambda: [impl.closure(table, [int(s)]) for s in singles])
        results[label, "classes"] = bench(
            "conjugacy_classes", lambda: impl.conjugacy_classes(table, inv))
        results[label, "orders"] = bench(
            "element_orders", lambda: impl.element_orders(table, ident))
        results[label, "mult"] = bench(
            "mult_table", lambda: impl.mult_table(g.perms))
    if len(IMPLS) == 2:
        print("speedups (python / cython):")
        for key in ("closure", "classes", "orders", "mult"):
            s = results["python", key] / results["cython", key]
            print(f"  {key:<22} {s:8.1f}x")
        # agreement spot-checks
        for s in singles[:10]:
            a = _kernel_py.closure(table, [int(s)])
            b = _kernel_c.closure(table, [int(s)])
            assert np.array_equal(a, b)
        assert np.array_equal(_kernel_py.conjugacy_classes(table, inv),
                              _kernel_c.conjugacy_classes(table, inv))
        print("agreement checks passed")


if __name__ == "__main__":
    main()
