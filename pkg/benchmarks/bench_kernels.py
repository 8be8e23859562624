"""Time the law scans on both backends and check they agree.

    python3 benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 5]

Both paths are called directly, so ``CONJ_NO_NUMBA`` only matters for which
one the library itself would pick (reported on the first line).  The first
numba call per signature includes compilation and is excluded from timings.
"""

import argparse
import statistics
import time

import numpy as np

from catconj import _kernels as K


def cyclic_table(n):
    """Composition table of Z/n as a one-object category."""
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n, np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64), np.zeros(1, dtype=np.int64)


def corrupt(table, rng, k=3):
    t = table.copy()
    for _ in range(k):
        g, f = rng.integers(t.shape[0], size=2)
        t[g, f] = (t[g, f] + 1) % t.shape[0]
    return t


def parts(r):
    return r if isinstance(r, tuple) else (r,)


def timed(fn, args, repeat):
    out = fn(*args)
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        ts.append(time.perf_counter() - t0)
    return out, statistics.median(ts)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    rng = np.random.default_rng(a.seed)
    print(f"library backend: {K.backend()}")
    if not hasattr(K, "_nb_assoc_scan"):
        print("numba path not loaded (CONJ_NO_NUMBA set or numba missing); nothing to compare")
        return 0
    print(f"{'scan':8} {'n':>5} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8} {'hits':>6}")
    for n in a.sizes:
        table, src, tgt, ident = cyclic_table(n)
        bad = corrupt(table, rng)
        cases = {
            "table": ((src, tgt, bad), K._np_table_scan, K._nb_table_scan),
            "assoc": ((bad,), K._np_assoc_scan, K._nb_assoc_scan),
            "unit": ((src, tgt, ident, bad), K._np_unit_scan, K._nb_unit_scan),
        }
        for name, (args, fnp, fnb) in cases.items():
            args = K._i64(*args)
            rn, tn = timed(fnp, args, a.repeat)
            rb, tb = timed(fnb, args, a.repeat)
            rn, rb = parts(rn), parts(rb)
            if len(rn) != len(rb) or not all(np.array_equal(x, y) for x, y in zip(rn, rb)):
                raise SystemExit(f"{name} n={n}: backends disagree")
            hits = sum(len(x) for x in rn)
            print(f"{name:8} {n:>5} {tn * 1e3:>10.2f} {tb * 1e3:>10.2f} {tn / tb:>8.1f} {hits:>6}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
