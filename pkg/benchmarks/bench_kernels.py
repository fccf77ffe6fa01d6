"""Time the compiled kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from orbitkit import kernels, make_algebra


def cases(mod):
    c = np.ascontiguousarray(make_algebra("galilei_maxwell_ext").c)
    rng = np.random.default_rng(0)
    xi = rng.normal(size=c.shape[0])
    grad = rng.normal(size=c.shape[0])
    batch = rng.normal(size=(1000, c.shape[0]))
    r0, u0, e = np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([1.0, 0.0])
    return {
        "poisson_tensor": lambda: mod.poisson_tensor(c, xi),
        "poisson_tensor_batch(1000)": lambda: mod.poisson_tensor_batch(c, batch),
        "lie_poisson_field": lambda: mod.lie_poisson_field(c, xi, grad),
        "jacobi_residual": lambda: mod.jacobi_residual(c),
        "boris_push(10000 steps)": lambda: mod.boris_push(r0, u0, e, 1.0, 1.0, 1e-3, 10000, 1),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        compiled = kernels.backend("cython")
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return
    py, cy = cases(kernels.backend("python")), cases(compiled)
    print(f"{'kernel':28s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>8s}")
    for name in py:
        n = 3 if "boris" in name or "jacobi" in name else 200
        tp = min(timeit.repeat(py[name], number=n, repeat=args.repeat)) / n
        tc = min(timeit.repeat(cy[name], number=n, repeat=args.repeat)) / n
        print(f"{name:28s} {tp:12.3e} {tc:12.3e} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
