"""Finite coadjoint actions, Casimir invariants and orbit labels.

A group element is stored as the parameter tuple of the ordered product

    g = exp(-c B - d.E) exp(a.P) exp(b H) exp(chi n.K | v.K) exp(phi J) exp(theta M + eta Kappa)

so ``coadjoint_act`` applies, in order, the rotation, the boost, the time
translation, the space translation and the field-sector shift.  Every
elementary action is the closed form of ``expm`` of the corresponding
generator matrix; :func:`consistency_vs_flow` checks them against
:func:`orbitkit.lie.coadjoint_flow_one_param`.

Planar vectors live in the (x1, x2) plane; ``perp(v) = z x v`` and
``cross(a, b)`` is the third component of ``a x b``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, StructureError, UnsupportedError
from .groups import GROUPS, make_algebra
from .lie import DualPoint, coadjoint_flow_one_param
from .planar import cross, perp, rotate

RELATIVISTIC = {"poincare": True, "poincare_maxwell": True, "galilei_ext": False, "galilei_maxwell_ext": False}
FIELDS = {"poincare": False, "galilei_ext": False, "poincare_maxwell": True, "galilei_maxwell_ext": True}
CENTRAL_EXT = {"poincare": False, "poincare_maxwell": False, "galilei_ext": True, "galilei_maxwell_ext": True}

_ZERO2 = (0.0, 0.0)


def _group(name):
    if name not in GROUPS:
        raise StructureError(f"unknown group {name!r}; choose from {GROUPS}")
    return name


@dataclass(frozen=True)
class GroupElement:
    """Parameters of a finite transformation of ``group``.

    Parameters that do not exist for the group must stay at their defaults:
    ``chi, n`` are relativistic boosts, ``v`` Galilean boosts, ``c, d`` the
    field sector and ``theta, eta`` the central extension.
    """

    group: str
    b: float = 0.0
    a: tuple = _ZERO2
    chi: float = 0.0
    n: tuple = (1.0, 0.0)
    phi: float = 0.0
    v: tuple = _ZERO2
    c: float = 0.0
    d: tuple = _ZERO2
    theta: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        _group(self.group)
        for name in ("a", "n", "v", "d"):
            val = tuple(float(x) for x in getattr(self, name))
            if len(val) != 2:
                raise StructureError(f"{name} must be a 2-vector")
            object.__setattr__(self, name, val)
        for name in ("b", "chi", "phi", "c", "theta", "eta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        rel = RELATIVISTIC[self.group]
        unused = []
        if rel and any(self.v):
            unused.append("v")
        if not rel and self.chi:
            unused.append("chi")
        if not FIELDS[self.group] and (self.c or any(self.d)):
            unused.append("c/d")
        if not CENTRAL_EXT[self.group] and (self.theta or self.eta):
            unused.append("theta/eta")
        if unused:
            raise StructureError(f"{self.group} has no parameters {', '.join(unused)}")
        if self.chi < 0:
            raise DomainError("rapidity chi must be >= 0 (flip n instead)")
        if self.chi > 0 and abs(np.hypot(*self.n) - 1.0) > 1e-12:
            raise DomainError("boost direction n must be a unit vector")

    @classmethod
    def identity(cls, group):
        return cls(group)

    def compose_abelian(self, other):
        """Product of two pure rotations or two pure time translations.

        Only these one-parameter subgroups have a composition law that is
        fixed without the full group multiplication; anything else raises
        :class:`~orbitkit.errors.UnsupportedError`.
        """
        if self.group != other.group:
            raise StructureError("elements of different groups")
        ident = GroupElement(self.group)
        for key in ("phi", "b"):
            if replace(self, **{key: 0.0}) == ident and replace(other, **{key: 0.0}) == ident:
                val = getattr(self, key) + getattr(other, key)
                if key == "phi":
                    val %= 2 * np.pi
                return replace(ident, **{key: val})
        raise UnsupportedError("only rotation-rotation and time-time compositions are supported")


# -- coordinate unpacking ----------------------------------------------------

def _unpack(x):
    alg = x.algebra
    xi = x.xi
    g = {}
    for lab in ("m", "kappa", "beta", "h", "j"):
        if lab in alg.dual_labels:
            g[lab] = float(xi[alg.index(lab)])
    for vec in ("p", "k", "e"):
        if vec + "1" in alg.dual_labels:
            g[vec] = np.array([xi[alg.index(vec + "1")], xi[alg.index(vec + "2")]])
    return g


def _pack(alg, g):
    out = np.empty(alg.dim)
    for i, lab in enumerate(alg.dual_labels):
        if lab[-1] in "12" and lab[:-1] in g:
            out[i] = g[lab[:-1]][int(lab[-1]) - 1]
        else:
            out[i] = g[lab]
    return DualPoint(alg, out)


# -- elementary actions (each the exact coadjoint action of one exponential) --

def _rotation(s, phi):
    for key in ("p", "k", "e"):
        if key in s:
            s[key] = rotate(s[key], phi)


def _rel_boost(s, chi, n):
    if chi == 0.0:
        return
    n = np.asarray(n, dtype=float)
    nt = perp(n)
    ch, sh = np.cosh(chi), np.sinh(chi)
    h, p, k, j = s["h"], s["p"], s["k"], s["j"]
    np_, nk = n @ p, nt @ k
    s["h"] = ch * h - sh * np_
    s["p"] = p + ((ch - 1) * np_ - sh * h) * n
    s["k"] = k + ((ch - 1) * nk + sh * j) * nt
    s["j"] = ch * j + sh * nk
    if "e" in s:
        beta, e = s["beta"], s["e"]
        ne = nt @ e
        s["beta"] = ch * beta + sh * ne
        s["e"] = e + ((ch - 1) * ne + sh * beta) * nt


def _gal_boost(s, v):
    v = np.asarray(v, dtype=float)
    m, kap, p, k = s["m"], s["kappa"], s["p"], s["k"]
    vv = v @ v
    s["h"] = s["h"] - v @ p + 0.5 * m * vv
    s["p"] = p - m * v
    s["k"] = k - kap * perp(v)
    s["j"] = s["j"] + cross(v, k) - 0.5 * kap * vv
    if "e" in s:
        s["e"] = s["e"] + s["beta"] * perp(v)


def _time(s, b):
    p = s["p"]
    if "e" in s:
        e = s["e"]
        s["p"] = p - b * e
        s["k"] = s["k"] + b * p - 0.5 * b * b * e
    else:
        s["k"] = s["k"] + b * p


def _space(s, a, relativistic):
    a = np.asarray(a, dtype=float)
    h, p = s["h"], s["p"]
    shift = h if relativistic else s["m"]
    s["j"] = s["j"] + cross(a, p)
    s["k"] = s["k"] + shift * a
    if "e" in s:
        e, beta = s["e"], s["beta"]
        ae = a @ e
        s["h"] = h + ae
        s["p"] = p + beta * perp(a)
        if relativistic:
            s["k"] = s["k"] + 0.5 * ae * a
        s["j"] = s["j"] + 0.5 * beta * (a @ a)


def _fields(s, c, d, relativistic):
    d = np.asarray(d, dtype=float)
    e, beta = s["e"], s["beta"]
    s["k"] = s["k"] - beta * perp(d)
    s["j"] = s["j"] - cross(d, e)
    if relativistic:
        s["k"] = s["k"] - c * perp(e)


def coadjoint_act(g, x):
    """Coadjoint action of ``g`` on the dual point ``x`` (closed form)."""
    alg = make_algebra(g.group)
    if not alg.same_as(x.algebra):
        raise StructureError(f"{g.group} element acting on a point of {x.algebra.name}")
    rel = RELATIVISTIC[g.group]
    s = _unpack(x)
    _rotation(s, g.phi)
    if rel:
        _rel_boost(s, g.chi, g.n)
    else:
        _gal_boost(s, g.v)
    _time(s, g.b)
    _space(s, g.a, rel)
    if FIELDS[g.group]:
        _fields(s, g.c, g.d, rel)
    return _pack(alg, s)


# -- invariants ----------------------------------------------------------------

def invariants(group, x):
    """Casimir invariants of ``group`` at ``x`` as ``{name: value}``."""
    _group(group)
    s = _unpack(x)
    h, p, k, j = s["h"], s["p"], s["k"], s["j"]
    pp = p @ p
    if group == "poincare":
        return {"C1": h * h - pp, "C2": h * j + cross(p, k)}
    if group == "galilei_ext":
        m, kap = s["m"], s["kappa"]
        return {"m": m, "kappa": kap, "C1": pp - 2 * m * h, "C2": m * j - kap * h + cross(p, k)}
    e, beta = s["e"], s["beta"]
    ee = e @ e
    if group == "poincare_maxwell":
        return {
            "C0": ee - beta * beta,
            "C1": h * h - pp - 2 * (k @ e - j * beta),
            "C2": h * beta + cross(p, e),
        }
    m, kap = s["m"], s["kappa"]
    return {
        "m": m,
        "kappa": kap,
        "beta": beta,
        "C1": beta * pp - 2 * m * h * beta + 2 * beta * (e @ k) - 2 * beta * beta * j + kap * ee,
        "C2": 2 * beta * beta * h + 2 * beta * cross(p, e) + m * ee,
    }


def _row_invariants(s):
    m, kap, beta = s["m"], s["kappa"], s["beta"]
    h, p, k, j, e = s["h"], s["p"], s["k"], s["j"], s["e"]
    pp, ee, ek, pxe = p @ p, e @ e, e @ k, cross(p, e)
    return {
        1: {"C1": 0.5 * ee * kap + beta * ek + 0.5 * beta * pp - m * h * beta - beta * beta * j,
            "C2": beta * beta * h + beta * pxe + 0.5 * m * ee},
        2: {"C1": -0.5 * m * pp + m * m * h - m * ek + kap * pxe, "C2": ee},
        3: {"C1": 0.5 * ee * kap + beta * ek + 0.5 * beta * pp - beta * beta * j, "C2": h * beta + pxe},
        4: {"C1": beta * ek + 0.5 * beta * pp - m * h * beta - beta * beta * j,
            "C2": beta * beta * h + beta * pxe + 0.5 * m * ee},
        5: {"C1": pxe, "C2": ee},
        6: {"C1": -0.5 * pp + m * h - ek, "C2": ee},
        7: {"C1": -0.5 * pp - ek + beta * j, "C2": h * beta + pxe},
        8: {"C1": 0.5 * pp + ek, "C2": pxe, "C3": ee,
            "C4": (p @ e) * pxe + ee * (k[0] * e[1] - k[1] * e[0])},
    }


INVARIANT_ROWS = {
    # row: (beta == 0, m == 0, kappa == 0), orbit dimension
    1: ((False, False, False), 6),
    2: ((True, False, False), 6),
    3: ((False, True, False), 6),
    4: ((False, False, True), 6),
    5: ((True, True, False), 6),
    6: ((True, False, True), 6),
    7: ((False, True, True), 6),
    8: ((True, True, True), 4),
}


def orbit_row(x, tol=0.0):
    """Row number of the Galilei-Maxwell classification table matching ``x``."""
    s = _unpack(x)
    key = tuple(abs(s[n]) <= tol for n in ("beta", "m", "kappa"))
    for row, (pattern, _) in INVARIANT_ROWS.items():
        if pattern == key:
            return row
    raise AssertionError("unreachable")


def row_invariants(x, row=None):
    """Invariants of the table row ``row`` (default: the row matching ``x``)."""
    if x.algebra.name != "galilei_maxwell_ext":
        raise StructureError("classification table rows exist for galilei_maxwell_ext only")
    row = orbit_row(x) if row is None else int(row)
    return _row_invariants(_unpack(x))[row]


# -- invariance sweeps -----------------------------------------------------------

def sample_element(group, rng):
    """Random element: angles on [0, 2pi), rapidity on [0, 2] with a random
    direction, velocities on [-2, 2], translations and field shifts on [-5, 5]."""
    _group(group)
    kw = dict(
        b=rng.uniform(-5, 5),
        a=tuple(rng.uniform(-5, 5, 2)),
        phi=rng.uniform(0, 2 * np.pi),
    )
    if RELATIVISTIC[group]:
        ang = rng.uniform(0, 2 * np.pi)
        kw.update(chi=rng.uniform(0, 2), n=(np.cos(ang), np.sin(ang)))
    else:
        kw.update(v=tuple(rng.uniform(-2, 2, 2)))
    if FIELDS[group]:
        kw.update(c=rng.uniform(-5, 5), d=tuple(rng.uniform(-5, 5, 2)))
    if CENTRAL_EXT[group]:
        kw.update(theta=rng.uniform(-5, 5), eta=rng.uniform(-5, 5))
    return GroupElement(group, **kw)


def sample_point(group, rng, zero=()):
    """Random dual point with standard normal coordinates; ``zero`` names
    coordinates forced to 0 (e.g. ``("beta", "m")`` for a table stratum)."""
    alg = make_algebra(group)
    xi = rng.normal(size=alg.dim)
    for lab in zero:
        xi[alg.index(lab)] = 0.0
    return DualPoint(alg, xi)


@dataclass
class InvarianceReport:
    group: str
    trials: int
    max_drift: dict = field(default_factory=dict)

    @property
    def worst(self):
        return max(self.max_drift.values(), default=0.0)


def _drifts(invfn, x, elements, act):
    ref = invfn(x)
    out = {k: 0.0 for k in ref}
    for g in elements:
        new = invfn(act(g, x))
        for k, v in ref.items():
            out[k] = max(out[k], abs(new[k] - v) / max(1.0, abs(v)))
    return out


def verify_invariance(group, x, g_sampler, trials, *, invariant_fn=None, act=None, seed=0, shards=1):
    """Max relative drift ``|I(g x) - I(x)| / max(1, |I(x)|)`` over sampled ``g``.

    ``g_sampler(rng)`` returns a :class:`GroupElement`.  Trials are split into
    ``shards`` blocks with seeds spawned from ``seed``; the result does not
    depend on the number of worker threads.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    invfn = invariant_fn or (lambda y: invariants(group, y))
    act = act or coadjoint_act
    children = np.random.SeedSequence(seed).spawn(shards)
    sizes = [trials // shards + (i < trials % shards) for i in range(shards)]

    def run(i):
        rng = np.random.default_rng(children[i])
        return _drifts(invfn, x, [g_sampler(rng) for _ in range(sizes[i])], act)

    with ThreadPoolExecutor(max_workers=worker_count(shards)) as ex:
        parts = list(ex.map(run, range(shards)))
    merged = {}
    for part in parts:
        for k, v in part.items():
            merged[k] = max(merged.get(k, 0.0), v)
    return InvarianceReport(group, trials, merged)


def worker_count(shards):
    import os

    cap = os.environ.get("ORBITKIT_THREADS")
    n = int(cap) if cap and cap.isdigit() and int(cap) > 0 else (os.cpu_count() or 1)
    return max(1, min(n, shards))


# -- consistency with the one-parameter flows ---------------------------------

def one_parameter_element(group, generator, t):
    """The :class:`GroupElement` equal to ``exp(t * generator)``."""
    alg = make_algebra(_group(group))
    label = alg.basis_labels[alg.index(generator)]
    t = float(t)
    if label == "H":
        return GroupElement(group, b=t)
    if label in ("P1", "P2"):
        return GroupElement(group, a=_axis(label, t))
    if label in ("K1", "K2"):
        if RELATIVISTIC[group]:
            return GroupElement(group, chi=abs(t), n=_axis(label, np.sign(t) or 1.0))
        return GroupElement(group, v=_axis(label, t))
    if label == "J":
        return GroupElement(group, phi=t % (2 * np.pi))
    if label == "B":
        return GroupElement(group, c=-t)
    if label in ("E1", "E2"):
        return GroupElement(group, d=_axis(label, -t))
    if label == "M":
        return GroupElement(group, theta=t)
    if label == "Kappa":
        return GroupElement(group, eta=t)
    raise UnsupportedError(f"no finite parameter for generator {label}")


def _axis(label, val):
    return (val, 0.0) if label.endswith("1") else (0.0, val)


def consistency_vs_flow(group, generator, x, t, act=None):
    """Max abs difference between the closed-form action of ``exp(t e_i)``
    and the matrix-exponential flow of ``e_i``."""
    alg = make_algebra(_group(group))
    act = act or coadjoint_act
    closed = act(one_parameter_element(group, generator, t), x)
    oracle = coadjoint_flow_one_param(alg.basis(generator), x, t)
    return float(np.max(np.abs(closed.xi - oracle.xi)))


# -- orbit labels ------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitLabel:
    group: str
    stratum: tuple
    dim: int
    invariant_values: dict

    def to_json(self):
        return {
            "group": self.group,
            "stratum": list(self.stratum),
            "dim": self.dim,
            "invariant_values": {k: float(v) for k, v in self.invariant_values.items()},
        }


def orbit_dimension(x, rtol=1e-9):
    """Rank of the Lie-Poisson tensor at ``x`` (the dimension of its orbit)."""
    pi = x.algebra.poisson_tensor(x)
    sv = np.linalg.svd(pi, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * max(1.0, sv[0])))


def _is_zero(val, scale, tol):
    return abs(val) <= tol * max(1.0, scale)


def classify_orbit(group, x, tol=1e-9):
    """Stratum, dimension and invariant values of the orbit through ``x``."""
    _group(group)
    if not make_algebra(group).same_as(x.algebra):
        raise StructureError(f"point of {x.algebra.name} classified as {group}")
    s = _unpack(x)
    inv = invariants(group, x)
    if group == "poincare":
        h, p = s["h"], s["p"]
        scale = h * h + p @ p
        c1 = inv["C1"]
        if not _is_zero(c1, scale, tol):
            if c1 > 0:
                return OrbitLabel(group, ("massive+" if h > 0 else "massive-",), 4, inv)
            return OrbitLabel(group, ("tachyonic",), 4, inv)
        if not _is_zero(np.sqrt(scale), 0.0, tol):
            return OrbitLabel(group, ("massless",), 4, inv)
        return OrbitLabel(group, ("degenerate",), orbit_dimension(x), inv)
    if group == "galilei_ext":
        m, kap = s["m"], s["kappa"]
        if not _is_zero(m, 0.0, tol):
            return OrbitLabel(group, ("massive",), 4, inv)
        if not _is_zero(kap, 0.0, tol) and not _is_zero(float(np.hypot(*s["p"])), 0.0, tol):
            c1, c2 = massless_galilei_labels(x)
            return OrbitLabel(group, ("massless",), 4, {**inv, "C1": c1, "C2": c2})
        return OrbitLabel(group, ("degenerate",), orbit_dimension(x), inv)
    if group == "poincare_maxwell":
        c0 = inv["C0"]
        scale = s["e"] @ s["e"] + s["beta"] ** 2
        if _is_zero(c0, scale, tol):
            kind = "null"
        else:
            kind = "magnetic" if c0 < 0 else "electric"
        return OrbitLabel(group, (kind,), orbit_dimension(x), inv)
    zero = tuple(_is_zero(s[n], 0.0, tol) for n in ("beta", "m", "kappa"))
    row = next(r for r, (pat, _) in INVARIANT_ROWS.items() if pat == zero)
    values = {k: v for k, v in inv.items() if k in ("m", "kappa", "beta")}
    values.update(_row_invariants(s)[row])
    return OrbitLabel(group, ("row", row), INVARIANT_ROWS[row][1], values)


def spin(x):
    """``s = (h j + p x k) / sqrt(h^2 - p^2)`` on a massive Poincare orbit."""
    if x.algebra.name != "poincare":
        raise StructureError("spin is defined on poincare points")
    inv = invariants("poincare", x)
    if inv["C1"] <= 0:
        raise DomainError(f"spin needs C1 > 0, got {inv['C1']}")
    return inv["C2"] / np.sqrt(inv["C1"])


def galilei_spin(x):
    """``s = j - kappa h / m + (p x k) / m`` on a massive Galilei orbit."""
    s = _unpack(x)
    if x.algebra.name != "galilei_ext" or s["m"] == 0:
        raise DomainError("galilei_spin needs a galilei_ext point with m != 0")
    return s["j"] - s["kappa"] * s["h"] / s["m"] + cross(s["p"], s["k"]) / s["m"]


def massless_galilei_labels(x):
    """``(C1, C2) = (p^2, p x k - kappa h)`` on a massless Galilei orbit; C2 is the helicity."""
    if x.algebra.name != "galilei_ext":
        raise StructureError("massless labels are defined on galilei_ext points")
    s = _unpack(x)
    if s["m"] != 0:
        raise DomainError(f"massless labels need m = 0, got m = {s['m']}")
    if s["kappa"] == 0:
        raise DomainError("massless labels need kappa != 0")
    c1 = float(s["p"] @ s["p"])
    if c1 == 0:
        raise DomainError("p = 0 lies outside the four-dimensional massless stratum")
    return c1, cross(s["p"], s["k"]) - s["kappa"] * s["h"]


# -- magnetic limit ------------------------------------------------------------------

def magnetic_limit_discrepancy(x):
    """Distance between the Galilei-Maxwell invariants at ``x`` and the
    Poincare-Maxwell ones after ``h -> m + h``, ``j -> -kappa + j``,
    ``beta -> beta + e^2 / 2 beta``, under the affine normalization

        C1_gm ~ -beta (C1_pm - m^2 + 2 kappa beta),  C2_gm ~ 2 beta (C2_pm - m beta).

    Returns the pair of absolute differences.
    """
    s = _unpack(x)
    m, kap, beta = s["m"], s["kappa"], s["beta"]
    if beta == 0:
        raise DomainError("the magnetic limit needs beta != 0")
    pm = make_algebra("poincare_maxwell")
    ee = s["e"] @ s["e"]
    rel = _pack(pm, {**s, "h": m + s["h"], "j": -kap + s["j"], "beta": beta + ee / (2 * beta)})
    ir = invariants("poincare_maxwell", rel)
    ig = invariants("galilei_maxwell_ext", x)
    d1 = ig["C1"] + beta * (ir["C1"] - m * m + 2 * kap * beta)
    d2 = ig["C2"] - 2 * beta * (ir["C2"] - m * beta)
    return abs(d1), abs(d2)


def magnetic_limit_point(base, delta):
    """Scale a Galilei-Maxwell point into the magnetic regime:
    ``h = delta m h0``, ``j = delta kappa j0``, ``e = sqrt(delta) beta e0``."""
    s = _unpack(base)
    s["h"] = delta * s["m"] * s["h"]
    s["j"] = delta * s["kappa"] * s["j"]
    s["e"] = np.sqrt(delta) * s["beta"] * s["e"]
    return _pack(base.algebra, s)


def magnetic_limit_order(base, deltas):
    """Fitted log-log orders of both discrepancies in ``delta`` (nominal 2)."""
    deltas = np.asarray(deltas, dtype=float)
    disc = np.array([magnetic_limit_discrepancy(magnetic_limit_point(base, d)) for d in deltas])
    orders = [float(np.polyfit(np.log(deltas), np.log(disc[:, i]), 1)[0]) for i in range(2)]
    return orders, disc
