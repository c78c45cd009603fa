"""Compare the compiled and NumPy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from wmwauc import _pykernels

try:
    from wmwauc import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    for n in (50, 500, 5000):
        xs = np.sort(np.round(rng.normal(0, 1, n), 2))
        ys = np.sort(np.round(rng.normal(0.3, 1.5, n), 2))
        yield f"kernel_counts n={n}", lambda k, xs=xs, ys=ys: k.kernel_counts(xs, ys)
    for n, grid in ((100, 512), (1000, 512)):
        xs = np.sort(rng.normal(0, 1, n))
        ys = np.sort(rng.normal(0, 1, n))
        shifts = np.linspace(-1, 1, grid)
        yield f"shift_grid n={n} K={grid}", lambda k, xs=xs, ys=ys, s=shifts: k.shift_grid(xs, ys, s)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [_pykernels] + ([_ckernels] if _ckernels else [])
    rng = np.random.default_rng(0)
    print(f"{'case':<28}" + "".join(f"{k.BACKEND:>12}" for k in backends) + "     speedup")
    for name, fn in cases(rng):
        times = []
        for k in backends:
            number = max(1, int(0.2 / max(timeit.timeit(lambda: fn(k), number=1), 1e-6)))
            best = min(timeit.repeat(lambda: fn(k), number=number, repeat=args.repeat)) / number
            times.append(best)
        row = f"{name:<28}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>8.1f}x"
        print(row)
    if _ckernels is None:
        print("compiled backend not built; only the NumPy fallback was timed")


if __name__ == "__main__":
    main()
