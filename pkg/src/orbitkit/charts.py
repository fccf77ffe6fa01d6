"""Orbit charts: Poisson tensors, Hamiltonians and dynamics on single orbits.

Chart coordinates and the labels fixing the orbit:

==================== ============================== ================================
group                chart coordinates              labels
==================== ============================== ================================
poincare             p1 p2 k1 k2                    m > 0, s
galilei_ext          p1 p2 x1 x2   (x = k / m)      m != 0, kappa, U, s
poincare_maxwell     e1 e2 p1 p2 k1 k2              C0, C1, C2   (beta > 0 branch)
galilei_maxwell_ext  e1 e2 p1 p2 k1 k2              m, kappa, beta != 0, C1, C2
==================== ============================== ================================

Eliminated coordinates come back through closure functions solved from the
Casimir invariants.  Dynamics is ``dx/dt = Lambda(x) grad h(x)``, the chart
form of ``dxi_i/dt = {xi_i, h}``.  The symplectic form is ``omega = -Lambda^-1``.

All chart functions accept complex arrays so that derivatives can be taken
by complex step.
"""

from dataclasses import dataclass, field

import numpy as np

from .coadjoint import invariants
from .errors import DomainError, UnsupportedError
from .groups import make_algebra
from .lie import DualPoint
from .ode import DEFAULT_ATOL, DEFAULT_RTOL, solve

CHART_COORDS = {
    "poincare": ("p1", "p2", "k1", "k2"),
    "galilei_ext": ("p1", "p2", "x1", "x2"),
    "poincare_maxwell": ("e1", "e2", "p1", "p2", "k1", "k2"),
    "galilei_maxwell_ext": ("e1", "e2", "p1", "p2", "k1", "k2"),
}

LABELS = {
    "poincare": ("m", "s"),
    "galilei_ext": ("m", "kappa", "U", "s"),
    "poincare_maxwell": ("C0", "C1", "C2"),
    "galilei_maxwell_ext": ("m", "kappa", "beta", "C1", "C2"),
}

COMPLEX_STEP = 1e-20


def _cross(a1, a2, b1, b2):
    return a1 * b2 - a2 * b1


def _bivector(n, entries):
    dtype = complex if any(np.iscomplexobj(v) for v in entries.values()) else float
    out = np.zeros((n, n), dtype=dtype)
    for (i, j), v in entries.items():
        out[i, j] = v
        out[j, i] = -v
    return out


# -- per-group closures, tensors and Hamiltonians ---------------------------------

def _poincare_closure(lab, x):
    p1, p2, k1, k2 = x
    h = np.sqrt(p1 * p1 + p2 * p2 + lab["m"] ** 2)
    return {"h": h, "j": (lab["m"] * lab["s"] - _cross(p1, p2, k1, k2)) / h}


def _poincare_lambda(lab, x):
    v = _poincare_closure(lab, x)
    return _bivector(4, {(0, 2): -v["h"], (1, 3): -v["h"], (2, 3): -v["j"]})


def _poincare_grad(lab, x):
    h = _poincare_closure(lab, x)["h"]
    return np.array([x[0] / h, x[1] / h, 0 * h, 0 * h])


def _galilei_closure(lab, x):
    p1, p2, x1, x2 = x
    m, kap = lab["m"], lab["kappa"]
    h = (p1 * p1 + p2 * p2) / (2 * m) + lab["U"]
    return {"h": h, "j": lab["s"] + kap * h / m + _cross(x1, x2, p1, p2)}


def _galilei_lambda(lab, x):
    zero = 0 * x[0]
    return _bivector(4, {(0, 2): -1.0 + zero, (1, 3): -1.0 + zero, (2, 3): lab["kappa"] / lab["m"] ** 2 + zero})


def _galilei_grad(lab, x):
    m = lab["m"]
    return np.array([x[0] / m, x[1] / m, 0 * x[0], 0 * x[0]])


def _pm_closure(lab, x):
    e1, e2, p1, p2, k1, k2 = x
    beta = np.sqrt(e1 * e1 + e2 * e2 - lab["C0"])
    h = (lab["C2"] - _cross(p1, p2, e1, e2)) / beta
    j = (lab["C1"] - h * h + p1 * p1 + p2 * p2 + 2 * (k1 * e1 + k2 * e2)) / (2 * beta)
    return {"beta": beta, "h": h, "j": j}


def _field_lambda(beta, h, j):
    return _bivector(6, {(0, 5): -beta, (1, 4): beta, (2, 3): -beta, (2, 4): -h, (3, 5): -h, (4, 5): -j})


def _pm_lambda(lab, x):
    v = _pm_closure(lab, x)
    return _field_lambda(v["beta"], v["h"], v["j"])


def _pm_grad(lab, x):
    e1, e2, p1, p2 = x[:4]
    v = _pm_closure(lab, x)
    b, h = v["beta"], v["h"]
    return np.array([p2 / b - h * e1 / b**2, -p1 / b - h * e2 / b**2, -e2 / b, e1 / b, 0 * b, 0 * b])


def _gm_closure(lab, x):
    e1, e2, p1, p2, k1, k2 = x
    m, kap, b = lab["m"], lab["kappa"], lab["beta"]
    ee = e1 * e1 + e2 * e2
    h = lab["C2"] / (2 * b * b) - _cross(p1, p2, e1, e2) / b - m * ee / (2 * b * b)
    j = (b * (p1 * p1 + p2 * p2) - 2 * m * h * b + 2 * b * (e1 * k1 + e2 * k2) + kap * ee - lab["C1"]) / (2 * b * b)
    return {"h": h, "j": j}


def _gm_lambda(lab, x):
    zero = 0 * x[0]
    return _field_lambda(lab["beta"] + zero, lab["m"] + zero, -lab["kappa"] + zero)


def _gm_grad(lab, x):
    e1, e2, p1, p2 = x[:4]
    m, b = lab["m"], lab["beta"]
    zero = 0 * e1
    return np.array([p2 / b - m * e1 / b**2, -p1 / b - m * e2 / b**2, -e2 / b, e1 / b, zero, zero])


_SPECS = {
    "poincare": (_poincare_closure, _poincare_lambda, _poincare_grad),
    "galilei_ext": (_galilei_closure, _galilei_lambda, _galilei_grad),
    "poincare_maxwell": (_pm_closure, _pm_lambda, _pm_grad),
    "galilei_maxwell_ext": (_gm_closure, _gm_lambda, _gm_grad),
}


def _check_labels(group, labels):
    if group not in _SPECS:
        raise UnsupportedError(f"no orbit chart for group {group!r}")
    missing = [k for k in LABELS[group] if k not in labels]
    if missing:
        raise DomainError(f"{group} chart needs labels {missing}")
    lab = {k: float(labels[k]) for k in LABELS[group]}
    if group == "poincare" and not lab["m"] > 0:
        raise DomainError(f"label m must be > 0 on the poincare chart, got {lab['m']}")
    if group == "galilei_ext" and lab["m"] == 0:
        raise DomainError("label m must be nonzero on the galilei_ext chart")
    if group == "galilei_maxwell_ext" and lab["beta"] == 0:
        raise DomainError("label beta must be nonzero on the galilei_maxwell_ext chart")
    return lab


@dataclass(frozen=True)
class OrbitChart:
    group: str
    chart_coords: tuple
    labels: dict = field(hash=False)

    def _spec(self):
        return _SPECS[self.group]

    def closure(self, x):
        """Eliminated coordinates (h, j and, on Poincare-Maxwell, beta) at ``x``."""
        return self._spec()[0](self.labels, np.asarray(x))

    def poisson_tensor(self, x):
        return self._spec()[1](self.labels, np.asarray(x))

    def omega(self, x):
        return -np.linalg.inv(self.poisson_tensor(x))

    def hamiltonian(self, x):
        return self.closure(x)["h"]

    def grad_h(self, x):
        return self._spec()[2](self.labels, np.asarray(x))

    def vector_field(self, x):
        return self.poisson_tensor(x) @ self.grad_h(x)

    def in_domain(self, x):
        x = np.asarray(x, dtype=float)
        if self.group == "poincare_maxwell":
            return x[0] ** 2 + x[1] ** 2 - self.labels["C0"] > 0
        return bool(np.all(np.isfinite(x)))

    def check_point(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (len(self.chart_coords),):
            raise DomainError(f"{self.group} chart point needs {len(self.chart_coords)} coordinates")
        if not self.in_domain(x):
            raise DomainError("point outside the chart domain: beta = sqrt(e^2 - C0) requires e^2 > C0")
        return x

    def lift(self, x):
        """The full dual point represented by the chart point ``x``."""
        x = self.check_point(x)
        alg = make_algebra(self.group)
        vals = dict(self.labels)
        vals.update(self.closure(x))
        coords = dict(zip(self.chart_coords, x))
        if self.group == "galilei_ext":
            coords["k1"], coords["k2"] = vals["m"] * x[2], vals["m"] * x[3]
            del coords["x1"], coords["x2"]
        vals.update(coords)
        return DualPoint(alg, [vals[lab] for lab in alg.dual_labels])

    def projection(self):
        """Matrix ``L`` with ``chart point = L @ xi`` (all charts are linear)."""
        alg = make_algebra(self.group)
        L = np.zeros((len(self.chart_coords), alg.dim))
        for r, c in enumerate(self.chart_coords):
            if c in ("x1", "x2"):
                L[r, alg.index("k" + c[1])] = 1.0 / self.labels["m"]
            else:
                L[r, alg.index(c)] = 1.0
        return L

    def project(self, point):
        return self.projection() @ point.xi

    def restricted_tensor(self, x):
        """``L Pi(xi) L^T``: the Lie-Poisson tensor of the lifted point pushed to the chart."""
        L = self.projection()
        xi = self.lift(x)
        return L @ xi.algebra.poisson_tensor(xi) @ L.T

    def bracket(self, x, a, b):
        i, j = self.chart_coords.index(a), self.chart_coords.index(b)
        return float(np.real(self.poisson_tensor(x)[i, j]))


def make_chart(group, labels):
    """Chart on the orbit of ``group`` fixed by ``labels`` (see module table)."""
    lab = _check_labels(group, labels)
    return OrbitChart(group, CHART_COORDS[group], lab)


def integrate(chart, x0, t_span, *, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, t_eval=None):
    """Integrate ``dx/dt = Lambda grad h`` from ``x0``.

    Leaving the chart domain raises :class:`~orbitkit.errors.DomainExitError`
    carrying the last valid state.
    """
    x0 = chart.check_point(x0)
    traj = solve(lambda t, y: np.real(chart.vector_field(y)), t_span, x0, rtol=rtol, atol=atol,
                 t_eval=t_eval, in_domain=chart.in_domain, labels=chart.chart_coords)
    traj.meta.update(group=chart.group, labels=dict(chart.labels))
    return traj


def label_drift(chart, traj):
    """Max absolute change of each group invariant along a chart trajectory."""
    ref = invariants(chart.group, chart.lift(traj.y[0]))
    out = {k: 0.0 for k in ref}
    for row in traj.y:
        cur = invariants(chart.group, chart.lift(row))
        for k in ref:
            out[k] = max(out[k], abs(cur[k] - ref[k]))
    return out


def complex_step_jacobian(fn, x, h=COMPLEX_STEP):
    """Jacobian of an analytic vector function by complex step (exact to roundoff)."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        xc = x.astype(complex)
        xc[i] += 1j * h
        cols.append(np.imag(np.asarray(fn(xc))) / h)
    return np.stack(cols, axis=-1)


def jacobi_residual(chart, x):
    """Max over coordinate triples of the Jacobi sum of the chart bracket at ``x``."""
    x = chart.check_point(x)
    lam = np.real(chart.poisson_tensor(x))
    dlam = complex_step_jacobian(chart.poisson_tensor, x)  # dlam[j, k, l] = d_l Lambda^{jk}
    t = np.einsum("il,jkl->ijk", lam, dlam)
    total = t + t.transpose(1, 2, 0) + t.transpose(2, 0, 1)
    return float(np.max(np.abs(total)))


# -- canonical coordinates -------------------------------------------------------------

def _canonical_map(chart):
    lab = chart.labels
    if chart.group == "poincare":
        m, s = lab["m"], lab["s"]

        def fn(x):
            p1, p2, k1, k2 = x
            h = np.sqrt(p1 * p1 + p2 * p2 + m * m)
            w = s / (h * (m + h))
            return np.array([p1, p2, k1 / h - w * p2, k2 / h + w * p1])
        return fn
    if chart.group == "galilei_ext":
        c = lab["kappa"] / (2 * lab["m"] ** 2)

        def fn(x):
            p1, p2, x1, x2 = x
            return np.array([p1, p2, x1 + c * p2, x2 - c * p1])
        return fn
    raise UnsupportedError(f"no canonical coordinates are available on the {chart.group} chart")


def to_canonical(chart, x):
    """Canonical point ``(p1, p2, q1, q2)`` for the free Poincare or Galilei chart.

    Poincare: ``q = k/h - (p x s)/(h (m + h))`` with ``s`` along the third axis.
    Galilei: ``q_i = x_i + eps_ij kappa p_j / 2m^2``.
    """
    fn = _canonical_map(chart)
    return np.real(fn(chart.check_point(x)))


def canonical_brackets(chart, x):
    """Bracket matrix of ``(p1, p2, q1, q2)`` induced by the chart tensor (chain rule)."""
    x = chart.check_point(x)
    J = complex_step_jacobian(_canonical_map(chart), x)
    return J @ np.real(chart.poisson_tensor(x)) @ J.T


def angular_momentum(chart, x, picture="raw"):
    """``j`` on a free chart, from the chart coordinates (``raw``) or from the
    canonical ones (``canonical``)."""
    if chart.group not in ("poincare", "galilei_ext"):
        raise UnsupportedError("angular_momentum is defined on the free charts only")
    x = chart.check_point(x)
    if picture == "raw":
        return float(chart.closure(x)["j"])
    if picture != "canonical":
        raise DomainError(f"picture must be 'raw' or 'canonical', got {picture!r}")
    p1, p2, q1, q2 = to_canonical(chart, x)
    qxp = q1 * p2 - q2 * p1
    lab = chart.labels
    if chart.group == "poincare":
        m, s = lab["m"], lab["s"]
        pp = p1 * p1 + p2 * p2
        h = np.sqrt(pp + m * m)
        return float(m * s / h + qxp + s * pp / (h * (m + h)))
    return float(qxp + lab["kappa"] * lab["U"] / lab["m"] + lab["s"])


def chart_point(chart, **coords):
    """Chart point from keyword coordinates (missing ones are 0)."""
    bad = set(coords) - set(chart.chart_coords)
    if bad:
        raise DomainError(f"unknown chart coordinates {sorted(bad)} for {chart.group}")
    return np.array([float(coords.get(c, 0.0)) for c in chart.chart_coords])
