"""Time the compiled path kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --n 4096 --c 0.5235988 --step 1e-4

Both backends produce the same paths; the table also reports the largest
relative difference between their samples.
"""

import argparse
import math
import time

import numpy as np

from cone_exit import kernels, mc


def bench(method, backend, cfg, n, seed, repeats):
    best = math.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = mc.simulate_exits(method, cfg, n, seed, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=4096, help="paths per run")
    p.add_argument("--c", type=float, default=math.pi / 6, help="cone half-angle")
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0xC0FFEE)
    p.add_argument("--repeats", type=int, default=1)
    args = p.parse_args(argv)

    cfg = mc.PathConfig(c=args.c, step=args.step)
    backends = kernels.available()
    print(f"n={args.n} c={args.c:.6g} step={args.step:g} backends={backends}")
    print(f"{'method':8} {'backend':8} {'seconds':>9} {'paths/s':>10} {'speedup':>8} {'max rel diff':>13}")
    for method in ("skew", "planar"):
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = bench(method, b, cfg, args.n, args.seed, args.repeats)
        base = times["python"]
        for b in backends:
            diff = np.max(np.abs(outs[b] / outs["python"] - 1.0))
            print(f"{method:8} {b:8} {times[b]:9.3f} {args.n / times[b]:10.0f} "
                  f"{base / times[b]:8.2f} {diff:13.2e}")


if __name__ == "__main__":
    main()
