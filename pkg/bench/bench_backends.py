#!/usr/bin/env python3
"""Benchmark the numba-JIT kernels against the pure-Python/numpy fallback.

Runs the same workloads in two subprocesses, one with PVI_LAB_BACKEND=numba
(default) and one with PVI_LAB_BACKEND=numpy, and prints a timing table.
JIT compilation happens in a warmup call outside the timed region.

Usage: python bench/bench_backends.py [--quick]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from pvilab import _kernels, backend_name
from pvilab.premodular import TorsionPair
from pvilab.locator import F0, winding_count, locate_zeros
from pvilab.elliptic import ModuliPoint, invariants_g

quick = bool(int(sys.argv[1]))
_kernels.warmup()
results = {"backend": backend_name()}

# workload 1: batch Z2 evaluation along a contour-like set of points
n = 2000 if quick else 20000
taus = np.linspace(0.01, 0.99, n) + 1j * np.linspace(0.21, 1.7, n)
out_v = np.empty(n, dtype=np.complex128)
out_s = np.empty(n, dtype=np.float64)
t0 = time.perf_counter()
_kernels.z2_many(0.3 + 0j, 0.2 + 0j, taus, out_v, out_s)
results["z2_batch"] = {"n": n, "seconds": time.perf_counter() - t0}

# workload 2: winding + zero location over the level-2-adjacent domain
pairs = [(0.6, 0.3), (0.1, 0.2), (0.9, 0.05)] * (1 if quick else 5)
t0 = time.perf_counter()
total = 0
for (r, s) in pairs:
    p = TorsionPair.of(r, s)
    total += len(locate_zeros(p, F0))
results["locate"] = {"hunts": len(pairs), "zeros": total,
                     "seconds": time.perf_counter() - t0}

# workload 3: lattice data on a tau grid
n = 200 if quick else 2000
t0 = time.perf_counter()
acc = 0.0
for k in range(n):
    lat = invariants_g(ModuliPoint.from_tau(complex(0.02 * (k % 40), 0.4 + 0.001 * k)))
    acc += abs(lat.g2)
results["lattice_grid"] = {"n": n, "seconds": time.perf_counter() - t0}

print(json.dumps(results))
"""


def run_backend(backend: str, quick: bool) -> dict:
    env = dict(os.environ, PVI_LAB_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, "1" if quick else "0"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    print("running numba backend ...")
    jit = run_backend("numba", args.quick)
    print("running numpy fallback ...")
    plain = run_backend("numpy", args.quick)

    print(f"\n{'workload':<14} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for key in ("z2_batch", "locate", "lattice_grid"):
        a = jit[key]["seconds"]
        b = plain[key]["seconds"]
        print(f"{key:<14} {a:>12.4f} {b:>12.4f} {b / a:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
