"""Compare the numba and pure-numpy kernels on the character-sum workload.

    python3 benchmarks/bench_kernels.py --q 5 --n 4 --m 4

Times the square-free filter and the resultant histogram for each backend,
after one warm-up call (numba compiles on first use), and checks both
backends produce identical output.
"""

import argparse
import time

import numpy as np

from fnconf import kernels
from fnconf.ffield import FqContext, monic_array


def run_backend(name, q, n, m, repeat):
    kernels.set_backend(name)
    ctx = FqContext.of(q)
    Pn, Pm = monic_array(q, n), monic_array(q, m)
    p = ctx.characteristic

    def once():
        mn = kernels.squarefree_mask(Pn, q, p, ctx.tables)
        mm = kernels.squarefree_mask(Pm, q, p, ctx.tables)
        t = time.perf_counter()
        hist = kernels.resultant_histogram(Pn[mn], Pm[mm], q, ctx.tables)
        return mn, hist, time.perf_counter() - t

    once()  # warm-up / compile
    best_sf, best_hist = float("inf"), float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        mn, hist, t_hist = once()
        best_sf = min(best_sf, time.perf_counter() - t - t_hist)
        best_hist = min(best_hist, t_hist)
    pairs = int(mn.sum()) * int(kernels.squarefree_mask(Pm, q, p, ctx.tables).sum())
    return {"squarefree_s": best_sf, "histogram_s": best_hist, "pairs": pairs, "hist": hist}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    old = kernels.get_backend()
    results = {}
    try:
        for b in backends:
            results[b] = run_backend(b, args.q, args.n, args.m, args.repeat)
    finally:
        kernels.set_backend(old)

    print(f"q={args.q} n={args.n} m={args.m} pairs={results['numpy']['pairs']}")
    print(f"{'backend':<8} {'squarefree s':>13} {'histogram s':>12} {'pairs/s':>12}")
    for b, r in results.items():
        rate = r["pairs"] / r["histogram_s"] if r["histogram_s"] else float("inf")
        print(f"{b:<8} {r['squarefree_s']:>13.4f} {r['histogram_s']:>12.4f} {rate:>12.3g}")
    if "numba" in results:
        same = np.array_equal(results["numba"]["hist"], results["numpy"]["hist"])
        speedup = results["numpy"]["histogram_s"] / results["numba"]["histogram_s"]
        print(f"outputs identical: {same}; numba speedup on histogram: {speedup:.1f}x")


if __name__ == "__main__":
    main()
