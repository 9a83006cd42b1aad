"""Time the compiled table kernels against the plain-Python reference.

    python3 benchmarks/bench_kernels.py [--sizes 20 60 120] [--repeat 3]

Each row runs one kernel on a random pattern/host pair; the first compiled
call is made before timing so compilation cost is excluded.
"""

import argparse
import time

import numpy as np

from treeminor import kernels as K
from treeminor._accel import backend_name
from treeminor.constructions import random_prufer


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 120])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"compiled backend: {backend_name()}")
    print(f"{'kernel':<7} {'pattern':>7} {'host':>5} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for n in args.sizes:
        pat = random_prufer(max(2, n // 4), args.seed).rooted_at(0)
        host = random_prufer(n, args.seed + 1).rooted_at(0)
        call = (*pat.kernel_arrays, *host.kernel_arrays)
        for name in ("embed", "topo", "minor"):
            fast, slow = K.KERNELS[name], K.PY_KERNELS[name]
            a, b = fast(*call), slow(*call)
            same = all(np.array_equal(x, y) for x, y in zip(a, b)) if name == "topo" else np.array_equal(a, b)
            assert same, f"{name} tables differ at n={n}"
            tf, ts = best_of(fast, call, args.repeat), best_of(slow, call, args.repeat)
            print(f"{name:<7} {pat.n:>7} {host.n:>5} {tf:>11.5f} {ts:>10.5f} {ts / tf:>7.1f}x")


if __name__ == "__main__":
    main()
