"""Compare the compiled and pure-numpy row reduction kernels.

    python benchmarks/bench_kernels.py [--sizes 20,40,80,160] [--repeat 5]
"""

import argparse
import time

import numpy as np

from fistab import _fallback

try:
    from fistab import _kernels
except ImportError:
    _kernels = None

P = 32003


def _time(fn, m, repeat):
    best = float("inf")
    for _ in range(repeat):
        work = m.copy()
        t = time.perf_counter()
        fn(work, P, True)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,40,80,160")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'size':>6} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n in (int(x) for x in args.sizes.split(",")):
        # rank-deficient square matrix, the common case in kernel/cokernel work
        a = rng.integers(0, P, size=(n, n // 2))
        m = np.ascontiguousarray((a @ rng.integers(0, P, size=(n // 2, n))) % P, dtype=np.int64)
        ref = m.copy()
        piv_np = _fallback.rref_modp(ref, P, True)
        t_np = _time(_fallback.rref_modp, m, args.repeat)
        if _kernels is None:
            print(f"{n:>6} {t_np * 1e3:>10.2f} {'n/a':>10} {'-':>8}")
            continue
        out = m.copy()
        piv_cy = _kernels.rref_modp(out, P, True)
        assert list(piv_cy) == list(piv_np) and np.array_equal(out, ref), "kernels disagree"
        t_cy = _time(_kernels.rref_modp, m, args.repeat)
        print(f"{n:>6} {t_np * 1e3:>10.2f} {t_cy * 1e3:>10.2f} {t_np / t_cy:>8.1f}")


if __name__ == "__main__":
    main()
