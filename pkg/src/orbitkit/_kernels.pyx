# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled structure-constant contractions and the fixed-step charge pusher."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def poisson_tensor(const double[:, :, ::1] c, const double[::1] xi):
    cdef Py_ssize_t n = c.shape[0], i, j, k
    cdef double acc
    out = np.zeros((n, n))
    cdef double[:, ::1] o = out
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += c[k, i, j] * xi[k]
            o[i, j] = acc
    return out


def poisson_tensor_batch(const double[:, :, ::1] c, const double[:, ::1] xs):
    cdef Py_ssize_t n = c.shape[0], npts = xs.shape[0], p, i, j, k
    cdef double acc
    out = np.zeros((npts, n, n))
    cdef double[:, :, ::1] o = out
    for p in range(npts):
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for k in range(n):
                    acc += c[k, i, j] * xs[p, k]
                o[p, i, j] = acc
    return out


def bracket(const double[:, :, ::1] c, const double[::1] a, const double[::1] b):
    cdef Py_ssize_t n = c.shape[0], i, j, k
    cdef double acc
    out = np.zeros(n)
    cdef double[::1] o = out
    for k in range(n):
        acc = 0.0
        for i in range(n):
            if a[i] == 0.0:
                continue
            for j in range(n):
                acc += c[k, i, j] * a[i] * b[j]
        o[k] = acc
    return out


def lie_poisson_field(const double[:, :, ::1] c, const double[::1] xi, const double[::1] grad):
    cdef Py_ssize_t n = c.shape[0], i, j, k
    cdef double acc, pij
    out = np.zeros(n)
    cdef double[::1] o = out
    for i in range(n):
        acc = 0.0
        for j in range(n):
            pij = 0.0
            for k in range(n):
                pij += c[k, i, j] * xi[k]
            acc += pij * grad[j]
        o[i] = acc
    return out


def jacobi_residual(const double[:, :, ::1] c):
    cdef Py_ssize_t n = c.shape[0], i, j, k, l, m
    cdef double s, worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = 0.0
                    for m in range(n):
                        s += (c[m, i, j] * c[l, m, k]
                              + c[m, j, k] * c[l, m, i]
                              + c[m, k, i] * c[l, m, j])
                    if fabs(s) > worst:
                        worst = fabs(s)
    return worst


def boris_push(r0, u0, e, double beta, double m, double dt, long n_steps, long stride):
    cdef double r1 = r0[0], r2 = r0[1], u1 = u0[0], u2 = u0[1]
    cdef double e1 = e[0], e2 = e[1]
    cdef double half = 0.5 * dt
    cdef double t = beta * dt / (2.0 * m)
    cdef double s = 2.0 * t / (1.0 + t * t)
    cdef double w1, w2
    cdef long step, row = 1
    cdef long n_out = n_steps // stride + 1
    out = np.empty((n_out, 4))
    cdef double[:, ::1] o = out
    o[0, 0] = r1; o[0, 1] = r2; o[0, 2] = u1; o[0, 3] = u2
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
            o[row, 0] = r1; o[row, 1] = r2; o[row, 2] = u1; o[row, 3] = u2
            row += 1
    return out
