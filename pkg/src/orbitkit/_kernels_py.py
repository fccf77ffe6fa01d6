"""Reference implementations of the hot kernels (NumPy / pure Python).

Used when the compiled ``_kernels`` extension is unavailable or when
``ORBITKIT_PURE_PYTHON`` is set.  Signatures match the Cython module.
"""

import numpy as np


def poisson_tensor(c, xi):
    """Pi_ij = sum_k c[k, i, j] * xi[k]."""
    return np.einsum("kij,k->ij", c, xi)


def poisson_tensor_batch(c, xs):
    return np.einsum("kij,nk->nij", c, xs)


def bracket(c, a, b):
    return np.einsum("kij,i,j->k", c, a, b)


def lie_poisson_field(c, xi, grad):
    """Right-hand side xi_dot_i = sum_jk c[k, i, j] xi[k] grad[j]."""
    return np.einsum("kij,k,j->i", c, xi, grad)


def jacobi_residual(c):
    t = np.einsum("mij,lmk->ijkl", c, c)
    total = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(total))) if total.size else 0.0


def boris_push(r0, u0, e, beta, m, dt, n_steps, stride):
    """Strang-split drift/kick integrator for a planar charge.

    Kinetic momentum ``u`` obeys ``u' = -e + (beta/m) z x u`` and ``r' = u/m``.
    Returns rows ``(r1, r2, u1, u2)`` every ``stride`` steps, first row the
    initial state.
    """
    r1, r2 = float(r0[0]), float(r0[1])
    u1, u2 = float(u0[0]), float(u0[1])
    e1, e2 = float(e[0]), float(e[1])
    n_out = n_steps // stride + 1
    out = np.empty((n_out, 4))
    out[0] = (r1, r2, u1, u2)
    half = 0.5 * dt
    t = beta * dt / (2.0 * m)
    s = 2.0 * t / (1.0 + t * t)
    row = 1
    for step in range(1, n_steps + 1):
        r1 += half * u1 / m
        r2 += half * u2 / m
        u1 -= e1 * half
        u2 -= e2 * half
        w1 = u1 - t * u2
        w2 = u2 + t * u1
        u1 = u1 - s * w2
        u2 = u2 + s * w1
        u1 -= e1 * half
        u2 -= e2 * half
        r1 += half * u1 / m
        r2 += half * u2 / m
        if step % stride == 0:
            out[row] = (r1, r2, u1, u2)
            row += 1
    return out
