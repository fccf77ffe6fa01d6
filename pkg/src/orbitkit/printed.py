"""Literal transcriptions of published closed forms.

Nothing in the toolkit computes with these.  They exist so the verification
report can compare each published formula against the exact implementation
and record where they agree.  Three-vectors follow the planar embedding: the
third axis carries j, beta and kappa, and ``x`` is the 3-D cross product.
"""

import numpy as np

from .lie import DualPoint
from .planar import lift, rotate

Z = np.array([0.0, 0.0, 1.0])


def _rot(v, phi):
    return lift(rotate(v, phi))


def _perp_n(n):
    return _rot(n, np.pi / 2)


def poincare_action(g, x):
    h, p1, p2, k1, k2, j = x.xi
    ch, sh = np.cosh(g.chi), np.sinh(g.chi)
    n, nt, a, b = lift(g.n), _perp_n(g.n), lift(g.a), g.b
    pf, kf = _rot((p1, p2), g.phi), _rot((k1, k2), g.phi)
    hp = ch * h - sh * (n @ pf)
    pp = pf - sh * h * n + (ch - 1) * (n @ pf) * n
    kp = kf + sh * np.cross(j * Z, nt) - (ch - 1) * (nt @ kf) * nt + b * pp + a * hp
    jp = ch * j + sh * np.cross(n, kf)[2] + np.cross(a, pp)[2]
    return DualPoint(x.algebra, [hp, pp[0], pp[1], kp[0], kp[1], jp])


def galilei_action(g, x):
    m, kap, h, p1, p2, k1, k2, j = x.xi
    v, a, b = lift(g.v), lift(g.a), g.b
    pf, kf = _rot((p1, p2), g.phi), _rot((k1, k2), g.phi)
    hp = h - v @ pf + 0.5 * m * (v @ v)
    pp = pf - m * v
    kp = kf + b * pf + m * (a - b * v) + np.cross(v, kap * Z)
    jp = (j + np.cross(a, pf)[2] + np.cross(v, kf)[2] - 0.5 * kap * (v @ v)
          - m * np.cross(a, v)[2])
    return DualPoint(x.algebra, [m, kap, hp, pp[0], pp[1], kp[0], kp[1], jp])


def poincare_maxwell_action(g, x):
    beta, e1, e2, h, p1, p2, k1, k2, j = x.xi
    ch, sh = np.cosh(g.chi), np.sinh(g.chi)
    n, nt, a, b, d = lift(g.n), _perp_n(g.n), lift(g.a), g.b, lift(g.d)
    pf, kf, ef = _rot((p1, p2), g.phi), _rot((k1, k2), g.phi), _rot((e1, e2), g.phi)
    e = lift((e1, e2))
    betap = ch * beta + sh * (n @ ef)
    ep = e - sh * np.cross(beta * Z, nt) + (ch - 1) * (nt @ ef) * nt
    hp = ch * h - sh * (n @ pf) - a @ ep
    pp = pf - sh * h * n + (ch - 1) * (n @ pf) * n + b * ep - np.cross(betap * Z, a)
    kp = (kf - sh * np.cross(j * Z, nt) + (ch - 1) * np.cross(nt, kf)[2] * nt + b * pp
          - 0.5 * b * b * ep + hp * a + 0.5 * (a @ a) * ep - np.cross(betap * Z, d)
          - np.cross(g.c * Z, ep))
    jp = ch * j + sh * np.cross(n, kf)[2] + np.cross(a, pp)[2] + 0.5 * (a @ a) * betap + np.cross(d, ep)[2]
    return DualPoint(x.algebra, [betap, ep[0], ep[1], hp, pp[0], pp[1], kp[0], kp[1], jp])


def galilei_maxwell_action(g, x):
    m, kap, beta, e1, e2, h, p1, p2, k1, k2, j = x.xi
    v, a, b, d = lift(g.v), lift(g.a), g.b, lift(g.d)
    pf, kf, ef = _rot((p1, p2), g.phi), _rot((k1, k2), g.phi), _rot((e1, e2), g.phi)
    bz = beta * Z
    ep = ef - np.cross(v, bz)
    hp = h - v @ pf + 0.5 * m * (v @ v) - a @ ep
    pp = pf - m * v - b * ep - np.cross(bz, a)
    kp = (kf + m * a + b * pf - 0.5 * b * b * ep + np.cross(v, kap * Z) - np.cross(bz, d)
          + 0.5 * np.cross(a, bz))
    jp = (j - np.cross(a, pf)[2] - np.cross(v, kf)[2] + 0.5 * kap * (v @ v) + m * np.cross(a, v)[2]
          + 0.5 * beta * (a @ a) - np.cross(d, ef)[2] + 0.5 * b * np.cross(ep, a)[2] - beta * (d @ v))
    return DualPoint(x.algebra, [m, kap, beta, ep[0], ep[1], hp, pp[0], pp[1], kp[0], kp[1], jp])


ACTIONS = {
    "poincare": poincare_action,
    "galilei_ext": galilei_action,
    "poincare_maxwell": poincare_maxwell_action,
    "galilei_maxwell_ext": galilei_maxwell_action,
}


# Published nonvanishing chart brackets: (coordinate, coordinate) -> function
# of the closure values {h, j, m, kappa, beta}.
BRACKET_TABLES = {
    "poincare": {
        ("k1", "k2"): lambda v: -v["j"],
        ("p1", "p2"): lambda v: 0.0,
        ("k1", "p1"): lambda v: v["h"],
        ("k2", "p2"): lambda v: v["h"],
        ("k1", "p2"): lambda v: 0.0,
        ("k2", "p1"): lambda v: 0.0,
    },
    "galilei_ext": {
        ("x1", "x2"): lambda v: v["kappa"] / v["m"] ** 2,
        ("p1", "p2"): lambda v: 0.0,
        ("x1", "p1"): lambda v: 1.0,
        ("x2", "p2"): lambda v: 1.0,
        ("x1", "p2"): lambda v: 0.0,
        ("x2", "p1"): lambda v: 0.0,
    },
    "poincare_maxwell": {
        ("e1", "k2"): lambda v: -v["beta"],
        ("e2", "k1"): lambda v: v["beta"],
        ("p1", "p2"): lambda v: v["beta"],
        ("p1", "k1"): lambda v: -v["h"],
        ("p2", "k2"): lambda v: -v["h"],
        ("k1", "k2"): lambda v: -v["j"],
    },
    "galilei_maxwell_ext": {
        ("e1", "k2"): lambda v: -v["beta"],
        ("e2", "k1"): lambda v: v["beta"],
        ("p1", "p2"): lambda v: -v["beta"],
        ("p1", "k1"): lambda v: -v["m"],
        ("p2", "k2"): lambda v: -v["m"],
        ("k1", "k2"): lambda v: v["kappa"],
    },
}


# Published symplectic forms as {(a, b): coefficient of da ^ db}.
def _omega_poincare(v):
    h, j = v["h"], v["j"]
    return {("k1", "p1"): -1 / h, ("k2", "p2"): -1 / h, ("k1", "k2"): -j / h**2}


def _omega_galilei(v):
    return {("x1", "p1"): 1.0, ("x2", "p2"): 1.0, ("x1", "x2"): v["kappa"] / v["m"] ** 2}


def _omega_poincare_maxwell(v):
    # the printed form runs two terms together; read the gap as "+"
    h, j, b = v["h"], v["j"], v["beta"]
    return {("e1", "e2"): (h * h - j * b) / b**3, ("e1", "p1"): h / b**2, ("e1", "k2"): 1 / b,
            ("e2", "p2"): h / b**2, ("e2", "k1"): -1 / b, ("p1", "p2"): 1 / b}


def _omega_galilei_maxwell(v):
    m, kap, b = v["m"], v["kappa"], v["beta"]
    return {("e1", "e2"): (b * kap + m * m) / b**3, ("e1", "p1"): m / b**2, ("e2", "p2"): m / b**2,
            ("k1", "e2"): 1 / b, ("k2", "e1"): -1 / b, ("p1", "p2"): 1 / b}


SYMPLECTIC_FORMS = {
    "poincare": _omega_poincare,
    "galilei_ext": _omega_galilei,
    "poincare_maxwell": _omega_poincare_maxwell,
    "galilei_maxwell_ext": _omega_galilei_maxwell,
}


def form_matrix(coords, entries):
    """Antisymmetric matrix of a 2-form or bivector given by ``{(a, b): coeff}``."""
    idx = {c: i for i, c in enumerate(coords)}
    out = np.zeros((len(coords), len(coords)))
    for (a, b), val in entries.items():
        out[idx[a], idx[b]] += val
        out[idx[b], idx[a]] -= val
    return out


def poincare_canonical_angular_momentum(m, s, p, q):
    """Angular momentum in canonical coordinates, as published."""
    p = np.asarray(p, dtype=float)
    h = np.sqrt(p @ p + m * m)
    return m * s / h + (q[0] * p[1] - q[1] * p[0]) + m * s * (p @ p) / (h * (m + h))
