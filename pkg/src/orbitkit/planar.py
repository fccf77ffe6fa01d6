"""Planar vector helpers.

Planar vectors are stored as length-2 arrays; the third axis (carrying j,
beta, kappa) is implicit.  ``perp(v)`` is ``z x v`` and ``cross(a, b)`` is the
z-component of ``a x b``.
"""

import numpy as np


def vec(v):
    return np.asarray(v, dtype=float).reshape(2)


def perp(v):
    """Rotate a planar vector by +pi/2, i.e. ``z x v``."""
    return np.array([-v[1], v[0]])


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def rotate(v, phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def lift(v, z=0.0):
    """Embed a planar vector in 3-space with the given third component."""
    return np.array([v[0], v[1], z], dtype=float)
