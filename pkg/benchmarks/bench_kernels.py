"""Compare the compiled and numpy convolution kernels.

    python benchmarks/bench_kernels.py --trace 8 --repeat 5
"""
from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from hermq2 import kernels
from hermq2.hermitian import generator_set
from hermq2.lattice import EISENSTEIN, GAUSS
from hermq2.qexp import Kind, index_space


def _time(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return statistics.median(out)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trace", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["python"]
    try:
        kernels.use_backend("cython")
        backends.append("cython")
    except ImportError:
        print("compiled backend not built; timing the fallback only")

    print(f"{'field':10} {'kernel':12} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for field in (GAUSS, EISENSTEIN):
        gens = generator_set(field, args.trace)
        f, g = gens["E4"], gens["E6"]
        I, J, K = f.space.mul_plan()
        n = len(f.space)
        a, b = f.numerators, g.numerators
        ra = f.reduce_mod(7).astype(np.int64)
        rb = g.reduce_mod(7).astype(np.int64)
        tg = f.space.restrict_targets()
        ns = len(index_space(Kind.SIEGEL2, None, args.trace))
        sa, sb = ra.astype(object), rb.astype(object)
        cases = {
            "conv_exact": lambda: kernels.conv_exact(a, b, I, J, K, n),
            # small entries take the int64 route inside conv_exact
            "conv_small": lambda: kernels.conv_exact(sa, sb, I, J, K, n),
            "conv_mod": lambda: kernels.conv_mod(ra, rb, I, J, K, n, 7),
            "scatter": lambda: kernels.scatter_exact(a, tg, ns),
        }
        for name, fn in cases.items():
            times = []
            for be in backends:
                kernels.use_backend(be)
                times.append(_time(fn, args.repeat))
            sp = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
            print(f"{field.name:10} {name:12} " + " ".join(f"{t * 1e3:8.2f}ms" for t in times) + "  " + sp)
        print(f"{'':10} ({len(I)} index pairs, {n} indices)")


if __name__ == "__main__":
    main()
