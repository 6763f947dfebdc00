"""Backend benchmark: numba kernel against the numpy fallback.

Runs the same scan on each available backend and reports norm
evaluations per second. Invoke as `python -m nds.benchmark` (flags:
--x-max, --t, --a1, --a2, --bin-width).

The workload is the real scan path, not a microbenchmark: factorization
enumeration, unimodal merge or sort, histogram accumulation.
"""

import argparse
import time

from .kernels import available_backends
from .scan import ScanConfig, scan
from .semigroup import NumericalSemigroup


def norm_evals(S, x_hi):
    # sum over x of |Z(x)| ~ x/(a1 a2), counted exactly
    total = 0
    inv = pow(S.a2, -1, S.a1)
    for x in range(1, x_hi + 1):
        n0 = (x * inv) % S.a1
        if n0 * S.a2 <= x:
            total += (x - n0 * S.a2) // (S.a1 * S.a2) + 1
    return total


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python -m nds.benchmark")
    ap.add_argument("--a1", type=int, default=2)
    ap.add_argument("--a2", type=int, default=7)
    ap.add_argument("--t", type=float, default=3.0)
    ap.add_argument("--x-max", type=int, default=100000)
    ap.add_argument("--bin-width", type=float, default=0.35)
    args = ap.parse_args(argv)

    S = NumericalSemigroup(args.a1, args.a2)
    cfg = ScanConfig(S, args.t, 1, args.x_max, bin_width=args.bin_width)
    evals = norm_evals(S, args.x_max)
    print(f"scan S={S} t={args.t} x<=({args.x_max}): {evals} norm evaluations")

    results = {}
    for backend in available_backends():
        scan(ScanConfig(S, args.t, 1, min(args.x_max, 2000), bin_width=args.bin_width),
             backend=backend)  # warm: jit compile / cache load
        t0 = time.perf_counter()
        rep = scan(cfg, backend=backend)
        dt = time.perf_counter() - t0
        results[backend] = dt
        print(f"{backend:>6}: {dt:8.3f} s  {evals / dt / 1e6:8.2f} M evals/s  "
              f"(gaps={rep.gap_count}, members={rep.members})")
    if len(results) == 2:
        print(f"speedup numba over numpy: {results['numpy'] / results['numba']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
