"""Kernel backend selection.

The compiled extension is used when importable; setting the environment
variable ``ORBITKIT_PURE_PYTHON=1`` forces the reference implementation.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("ORBITKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"


def backend(name):
    """Return the kernel module called ``name`` ("python" or "cython")."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def _f(a):
    return np.ascontiguousarray(a, dtype=float)


def poisson_tensor(c, xi):
    return _impl.poisson_tensor(_f(c), _f(xi))


def poisson_tensor_batch(c, xs):
    return _impl.poisson_tensor_batch(_f(c), _f(xs))


def bracket(c, a, b):
    return _impl.bracket(_f(c), _f(a), _f(b))


def lie_poisson_field(c, xi, grad):
    return _impl.lie_poisson_field(_f(c), _f(xi), _f(grad))


def jacobi_residual(c):
    return float(_impl.jacobi_residual(_f(c)))


def boris_push(r0, u0, e, beta, m, dt, n_steps, stride=1):
    return _impl.boris_push(_f(r0), _f(u0), _f(e), float(beta), float(m),
                            float(dt), int(n_steps), int(stride))
