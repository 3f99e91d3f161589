"""Compare the numba and numpy elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 100 200 400] [--prime 101]

Each kernel is run once untimed (to trigger compilation) and then timed on
the same random matrices; the row canonical forms must agree.
"""

import argparse
import time

import numpy as np

from dimalcev.linalg import kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rref(n, p, repeat, rng):
    # rank-deficient so pivots are not simply the diagonal
    a = rng.integers(0, p, size=(n, n // 2)) @ rng.integers(0, p, size=(n // 2, n)) % p
    out = {}
    results = {}
    for use in ("numpy", "numba"):
        kernels.rref_mod_p(a.copy(), p, use=use)
        work = a.copy()
        results[use] = (work, kernels.rref_mod_p(work, p, use=use))
        out[use] = _time(lambda: kernels.rref_mod_p(a.copy(), p, use=use), repeat)
    same = np.array_equal(results["numpy"][0], results["numba"][0])
    return out, same


def bench_scatter(terms, d, p, repeat, rng):
    reps = rng.integers(0, p, size=(24, d, d))
    args = (
        rng.integers(0, 200, size=terms),
        rng.integers(0, 200, size=terms),
        rng.integers(0, 24, size=terms),
        rng.integers(-3, 4, size=terms),
        reps,
    )
    out = {}
    res = {}
    for use in ("numpy", "numba"):
        res[use] = kernels.scatter_blocks(*args, use=use)
        out[use] = _time(lambda: kernels.scatter_blocks(*args, use=use), repeat)
    same = all(np.array_equal(x, y) for x, y in zip(res["numpy"], res["numba"]))
    return out, same


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--prime", type=int, default=101)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}{'numpy s':>10}{'numba s':>10}{'speedup':>9}  agree")
    for n in args.sizes:
        t, same = bench_rref(n, args.prime, args.repeat, rng)
        print(f"{f'rref {n}x{n}':<24}{t['numpy']:>10.4f}{t['numba']:>10.4f}{t['numpy'] / t['numba']:>9.1f}  {same}")
    for terms, d in ((20000, 5), (5000, 16)):
        t, same = bench_scatter(terms, d, args.prime, args.repeat, rng)
        label = f"scatter {terms} d={d}"
        print(f"{label:<24}{t['numpy']:>10.4f}{t['numba']:>10.4f}{t['numpy'] / t['numba']:>9.1f}  {same}")


if __name__ == "__main__":
    main()
