"""Timing of the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from harmonic_crown import _kernels as K
from harmonic_crown.analysis import mixed_point, symbol_form
from harmonic_crown.solvable import SolvGroup


def _best(fn, repeat):
    fn()  # warm-up (numba compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(seed=0):
    rng = np.random.default_rng(seed)
    g = SolvGroup.build(3)
    xi = rng.standard_normal(g.dim)
    L = symbol_form(g, mixed_point(g, 0.4 * np.eye(g.p)[0], 0.3 * np.eye(g.q)[0], 1.2))
    R, I = np.ascontiguousarray(L.real), np.ascontiguousarray(L.imag)
    X0 = rng.standard_normal((48, g.dim))
    X0 /= np.linalg.norm(X0, axis=1, keepdims=True)
    yield "geodesic_flow (q=3, 256 steps)", (
        lambda: K.geodesic_flow_numba(g.alg.J, xi, 256),
        lambda: K.geodesic_flow_numpy(g.alg.J, xi, 256),
    )
    yield "sphere_descent (48 starts, 150 it)", (
        lambda: K.sphere_descent_numba(R, I, X0, 150, 1e-13),
        lambda: K.sphere_descent_numpy(R, I, X0, 150, 1e-13),
    )
    yield "lm_polish (200 it)", (
        lambda: K.lm_polish_numba(R, I, X0[0], 200),
        lambda: K.lm_polish_numpy(R, I, X0[0], 200),
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"{'kernel':38s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for name, (f_nb, f_np) in cases():
        t_nb, t_np = _best(f_nb, args.repeat), _best(f_np, args.repeat)
        print(f"{name:38s} {1e3 * t_nb:11.3f} {1e3 * t_np:11.3f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
