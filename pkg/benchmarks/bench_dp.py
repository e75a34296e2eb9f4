#!/usr/bin/env python3
"""Benchmark the two aggregation-kernel backends of the float-mode DP.

The float-mode resistance-distribution dynamic program spends most of its
time sorting and merging large (key, multiplicity) arrays.  Those kernels
have a compiled (numba) backend and a pure-numpy fallback, selected at
import time by the ``SPCIRCUITS_NO_NUMBA`` environment variable.  This
script times both:

* micro-benchmarks of ``sort_aggregate`` and ``merge_aggregate`` on
  synthetic arrays sized like the real workload, and
* an end-to-end ``float_distributions(limit)`` run.

Because the backend is fixed at import, the script re-executes itself in a
subprocess for each backend and prints a side-by-side summary.

Usage:
    python3 benchmarks/bench_dp.py [--limit N] [--micro-size M]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _time(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_one_backend(limit: int, micro_size: int) -> dict:
    import numpy as np

    from spcircuits import _kernels, float_distributions

    rng = np.random.default_rng(12345)
    keys = rng.integers(1, 1 << 60, size=micro_size, dtype=np.int64)
    vals = rng.integers(1, 100, size=micro_size, dtype=np.int64)
    sk, sv = _kernels.sort_aggregate(keys, vals)
    half = sk.size // 2
    ak, av = sk[:half].copy(), sv[:half].copy()
    bk, bv = sk[half:].copy(), sv[half:].copy()

    results = {
        "backend": _kernels.ACTIVE_BACKEND,
        "sort_aggregate_s": _time(lambda: _kernels.sort_aggregate(keys, vals)),
        "merge_aggregate_s": _time(
            lambda: _kernels.merge_aggregate(ak, av, bk, bv)
        ),
        "dp_limit": limit,
        "dp_s": _time(lambda: float_distributions(limit), repeat=1),
    }
    return results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--limit", type=int, default=16,
                        help="size cap for the end-to-end DP run")
    parser.add_argument("--micro-size", type=int, default=4_000_000,
                        help="array length for the kernel micro-benchmarks")
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        print(json.dumps(run_one_backend(args.limit, args.micro_size)))
        return 0

    rows = []
    for env_value in ("", "1"):
        env = dict(os.environ)
        if env_value:
            env["SPCIRCUITS_NO_NUMBA"] = env_value
        else:
            env.pop("SPCIRCUITS_NO_NUMBA", None)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--limit", str(args.limit), "--micro-size", str(args.micro_size)],
            env=env, capture_output=True, text=True, check=True,
        )
        rows.append(json.loads(proc.stdout.strip().splitlines()[-1]))

    print(f"{'backend':<8} {'sort_aggregate':>15} {'merge_aggregate':>16} "
          f"{'float DP (n<=%d)' % args.limit:>18}")
    for r in rows:
        print(f"{r['backend']:<8} {r['sort_aggregate_s']:>14.3f}s "
              f"{r['merge_aggregate_s']:>15.3f}s {r['dp_s']:>17.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
