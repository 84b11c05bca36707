"""Compare the compiled and numpy null-cone kernels.

Times one 15^4 weight grid and one full superposition cubature with each
backend and reports the largest relative difference between them.

    python benchmarks/bench_cone.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import math
import time

import numpy as np

from trigft import quadrature as quad
from trigft.harmonic import _backend
from trigft.harmonic.cone import JACOBIAN_STEP, NORTH
from trigft.harmonic.superposition import raw_superposition

POINT = (0.2, 0.4, 0.1)
FUNCTIONS = ("one", "x1", "x3", "x1x2", "zonal2")


def _best_of(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench(repeat: int) -> dict:
    nodes = quad.NODES15
    r = 2.0 + 1.5 * nodes
    th = 0.7 + 0.3 * nodes
    ph = 3.0 + 2.0 * nodes
    ps = 3.0 + 3.0 * nodes
    results = {"backends": sorted(_backend.KERNELS), "default": _backend.BACKEND}
    grids, totals = {}, {}
    for name, kernel in sorted(_backend.KERNELS.items()):
        t_grid, grid = _best_of(lambda k=kernel: k(r, th, ph, ps, np.array(POINT), NORTH, JACOBIAN_STEP), repeat)
        t_full, res = _best_of(lambda k=kernel: raw_superposition(FUNCTIONS, POINT, kernel=k), 1)
        grids[name] = grid
        totals[name] = np.array(res.raw)
        results[name] = {"grid_seconds": t_grid, "superposition_seconds": t_full, "boxes": res.n_boxes}
    if len(grids) == 2:
        a, b = grids["compiled"], grids["python"]
        results["grid_max_rel_diff"] = float(np.max(np.abs(a - b)) / np.max(np.abs(b)))
        ta, tb = totals["compiled"], totals["python"]
        results["superposition_max_rel_diff"] = float(np.max(np.abs(ta - tb)) / np.max(np.abs(tb)))
        results["grid_speedup"] = results["python"]["grid_seconds"] / results["compiled"]["grid_seconds"]
        results["superposition_speedup"] = (
            results["python"]["superposition_seconds"] / results["compiled"]["superposition_seconds"]
        )
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    res = bench(args.repeat)
    if args.json:
        print(json.dumps(res, indent=2, sort_keys=True))
        return
    print(f"backends available: {', '.join(res['backends'])} (default {res['default']})")
    for name in res["backends"]:
        r = res[name]
        print(f"{name:>9}: grid {r['grid_seconds'] * 1e3:8.2f} ms   "
              f"superposition {r['superposition_seconds']:7.2f} s ({r['boxes']} boxes)")
    if "grid_speedup" in res:
        print(f"speedup: grid x{res['grid_speedup']:.1f}, superposition x{res['superposition_speedup']:.1f}")
        print(f"max relative difference: grid {res['grid_max_rel_diff']:.2e}, "
              f"superposition {res['superposition_max_rel_diff']:.2e}")


if __name__ == "__main__":
    main()
