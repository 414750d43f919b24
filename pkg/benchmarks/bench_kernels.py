"""Time the compiled kernel lane against the pure numpy fallback.

Imports both lane modules directly (bypassing the MAGFRICTION_PURE switch)
so one process can compare them. For each kernel a representative workload
is timed best-of-N and the lanes are checked for agreement: the integrator
must match bit for bit, the reductions to a few ulp.

Run as ``python3 benchmarks/bench_kernels.py`` from the repo root (or
anywhere after ``pip install -e .``).
"""

import argparse
import time

import numpy as np

from magfriction._kernels import _pure

try:
    from magfriction._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        if dt < best:
            best = dt
    return best, result


def rel_diff(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def bench_rk4(lane, B, n_steps):
    rng = np.random.default_rng(7)
    alpha = rng.uniform(0.0, 3.0, B)
    init = rng.standard_normal((4, B))
    dt = np.full(B, 0.01)
    return lambda: lane.rk4_batch(alpha, init, dt, n_steps, 20)

def bench_mode_sum(lane, n_max):
    return lambda: lane.mode_sum(0.3, 7.7, n_max)

def bench_halfspace(lane, m):
    rng = np.random.default_rng(11)
    u = rng.random((3, m))
    return lambda: lane.halfspace_chunk(1.5, u, 1)


def run_case(name, make, repeat, compare):
    t_pure, r_pure = best_of(make(_pure), repeat)
    if _core is None:
        print(f"{name:<26s} pure {t_pure * 1e3:9.2f} ms   compiled n/a")
        return
    t_core, r_core = best_of(make(_core), repeat)
    dev = compare(r_pure, r_core)
    speed = t_pure / t_core
    print(
        f"{name:<26s} pure {t_pure * 1e3:9.2f} ms   "
        f"compiled {t_core * 1e3:9.2f} ms   x{speed:5.1f}   dev {dev:.3g}"
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of repeats")
    ap.add_argument("--quick", action="store_true", help="10x smaller workloads")
    args = ap.parse_args()

    div = 10 if args.quick else 1
    if _core is None:
        print("compiled lane unavailable; timing the pure lane only")

    # trajectories must agree exactly: same operation order in both lanes
    exact = lambda a, b: float(np.max(np.abs(a - b)))
    scalar = lambda a, b: max(rel_diff(a[0], b[0]), rel_diff(a[1], b[1]))

    run_case(
        "rk4_batch B=2 (narrow)",
        lambda lane: bench_rk4(lane, 2, 40000 // div),
        args.repeat,
        exact,
    )
    run_case(
        "rk4_batch B=64 (wide)",
        lambda lane: bench_rk4(lane, 64, 20000 // div),
        args.repeat,
        exact,
    )
    run_case(
        "mode_sum n=2e6",
        lambda lane: bench_mode_sum(lane, 2_000_000 // div),
        args.repeat,
        lambda a, b: rel_diff(a, b),
    )
    run_case(
        "halfspace_chunk m=2e6",
        lambda lane: bench_halfspace(lane, 2_000_000 // div),
        args.repeat,
        scalar,
    )


if __name__ == "__main__":
    main()
