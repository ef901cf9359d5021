"""Time the group-enumeration kernel under both backends.

    python benchmarks/bench_kernels.py --sizes 10 12 14 16 18 --repeat 3
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from boundmagic import _kernels
from boundmagic.codes import random_code
from boundmagic.engine import _logical_masks


def time_counts(code, backend: str, repeat: int) -> tuple[float, np.ndarray]:
    _kernels.set_backend(backend)
    gens = code.generators
    args = ([g.x for g in gens], [g.z for g in gens], [g.k for g in gens], *_logical_masks(code), code.n)
    counts = _kernels.coset_counts(*args)  # warm-up (and JIT compile)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        _kernels.coset_counts(*args)
        best = min(best, time.perf_counter() - start)
    return best, counts


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 12, 14, 16, 18])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'elements':>9} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + "  speedup")
    for n in args.sizes:
        code = random_code(n, rng, nontrivial=False)
        times, results = {}, {}
        for b in backends:
            times[b], results[b] = time_counts(code, b, args.repeat)
        if len(backends) == 2:
            assert np.array_equal(results["numpy"], results["numba"]), "backends disagree"
            speedup = f"{times['numpy'] / times['numba']:8.1f}x"
        else:
            speedup = "      n/a"
        print(f"{n:>3} {2 ** (n - 1):>9} " + " ".join(f"{times[b]:>12.4f}" for b in backends) + speedup)


if __name__ == "__main__":
    main()
