"""Time the compiled and pure-Python integrators on the same shots.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints per-call times, the speed-up and the largest difference between the
two backends' recorded states.
"""

import argparse
import math
import timeit

import numpy as np

from coupled_nls import kernel
from coupled_nls.omega import default_grid, omega_solve, taylor_start
from coupled_nls.params import ScalarParams


def shots():
    r = np.asarray(default_grid(1, 1.0).nodes)
    h0 = r[1]
    a = math.sqrt(2) - 1e-9
    scalar = (1, 1.0, [0.0], [1.0], h0, taylor_start(1, [a], [a - a**3], h0), r[1:], r[-1], 1e-12, 1e-12)
    b = np.array([math.sqrt(2), 1.0]) * (1 - 1e-9)
    f = [b[0] - (-1.0 * b[0] ** 3 + 4.0 * b[1] ** 2 * b[0]), b[1] - (-2.0 * b[1] ** 3 + 2.0 * b[0] ** 2 * b[1])]
    coupled = (1, 1.0, [-1.0, -2.0], [4.0, 2.0], h0, taylor_start(1, b, f, h0), r[1:], r[-1], 1e-12, 1e-12)
    return {"scalar shot": scalar, "coupled shot": coupled}


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = kernel.backends()
    if "compiled" not in impls:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'case':<16}" + "".join(f"{name:>14}" for name in impls) + f"{'speed-up':>10}{'max diff':>11}")
    for name, a in shots().items():
        times = {k: bench(fn, a, args.repeat) for k, fn in impls.items()}
        outs = {k: fn(*a)[0] for k, fn in impls.items()}
        row = f"{name:<16}" + "".join(f"{t * 1e3:>11.2f} ms" for t in times.values())
        if len(impls) == 2:
            diff = np.max(np.abs(outs["compiled"] - outs["python"]))
            row += f"{times['python'] / times['compiled']:>9.1f}x{diff:>11.1e}"
        print(row)

    # end to end: the scalar solver on each backend
    saved = kernel.integrate_radial
    try:
        for name, fn in impls.items():
            kernel.integrate_radial = fn
            t = min(timeit.repeat(lambda: omega_solve(ScalarParams(1, 1.0)), number=1, repeat=max(1, args.repeat // 2)))
            print(f"omega_solve n=1 p=1 [{name}]: {t:.3f} s")
    finally:
        kernel.integrate_radial = saved


if __name__ == "__main__":
    main()
