"""Group-agnostic Lie algebra machinery.

A :class:`LieAlgebra` is fully described by its structure constants,
``c[k, i, j]`` being the coefficient of basis element ``k`` in ``[e_i, e_j]``.
Everything else here (brackets, the linear Lie-Poisson structure on the dual,
Hamiltonian flows, one-parameter coadjoint flows) is derived from that tensor.

Sign conventions
----------------
The Poisson bracket on the dual is ``{f, g}(x) = df_i dg_j c[k, i, j] x_k``, so
coordinate functions satisfy ``{x_i, x_j} = c[k, i, j] x_k``.  Hamilton's
equations are taken as ``dx_i/dt = {x_i, h}``: the function ``h`` passed to
:func:`hamiltonian_flow` is the Hamiltonian itself (the integral curves of the
Hamiltonian vector field ``X_f g = {f, g}`` with ``f = -h``).

With these conventions the coadjoint flow of a generator ``a`` coincides with
the Hamiltonian flow of the linear function ``x -> <x, a>``.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import kernels
from .errors import StructureError
from .ode import DEFAULT_ATOL, DEFAULT_RTOL, Trajectory, solve


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    basis_labels: tuple
    c: np.ndarray
    dual_labels: tuple = None
    units: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        n = len(self.basis_labels)
        if c.shape != (n, n, n):
            raise StructureError(f"structure tensor of shape {c.shape} does not match dim {n}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        if self.dual_labels is None:
            object.__setattr__(self, "dual_labels", tuple(s.lower() for s in self.basis_labels))
        else:
            object.__setattr__(self, "dual_labels", tuple(self.dual_labels))

    @property
    def dim(self):
        return len(self.basis_labels)

    def index(self, label):
        """Position of a basis label (``"K1"``) or dual coordinate (``"k1"``)."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.dim:
                raise StructureError(f"index {label} out of range for {self.name}")
            return int(label)
        if label in self.basis_labels:
            return self.basis_labels.index(label)
        if label in self.dual_labels:
            return self.dual_labels.index(label)
        raise StructureError(f"{self.name} has no basis element {label!r}")

    def same_as(self, other):
        return self is other or (
            self.name == other.name
            and self.basis_labels == other.basis_labels
            and np.array_equal(self.c, other.c)
        )

    def basis(self, label):
        coeffs = np.zeros(self.dim)
        coeffs[self.index(label)] = 1.0
        return AlgebraElement(self, coeffs)

    def element(self, coeffs):
        """Build an element from a coefficient vector or a ``{label: value}`` map."""
        if isinstance(coeffs, dict):
            v = np.zeros(self.dim)
            for k, val in coeffs.items():
                v[self.index(k)] += val
            coeffs = v
        return AlgebraElement(self, coeffs)

    def point(self, coords):
        """Build a dual point from a vector or a ``{label: value}`` map (missing = 0)."""
        if isinstance(coords, dict):
            v = np.zeros(self.dim)
            for k, val in coords.items():
                v[self.index(k)] = val
            coords = v
        return DualPoint(self, coords)

    def coordinate(self, label):
        """The linear coordinate function ``x -> x_label`` as a :class:`ScalarField`."""
        i = self.index(label)
        grad = np.zeros(self.dim)
        grad[i] = 1.0
        return ScalarField(lambda x: x[i], lambda x: grad)

    def poisson_tensor(self, x):
        """Matrix ``{x_i, x_j}`` at the dual point ``x``."""
        return kernels.poisson_tensor(self.c, _xi(self, x))

    def ad_matrix(self, a):
        """Matrix of ``ad_a`` acting on coefficient vectors."""
        a = _coeffs(self, a)
        return np.einsum("kji,j->ki", self.c, a)

    def to_json(self):
        entries = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    if self.c[k, i, j] != 0.0:
                        entries.append([k, i, j, float(self.c[k, i, j])])
        return {"name": self.name, "dim": n, "basis": list(self.basis_labels), "c": entries}

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        n = int(doc["dim"])
        if len(doc["basis"]) != n:
            raise StructureError("basis length does not match dim")
        c = np.zeros((n, n, n))
        for k, i, j, value in doc["c"]:
            if i == j and value != 0:
                raise StructureError(f"nonzero self-bracket entry for index {i}")
            c[k, i, j] = value
            c[k, j, i] = -value
        return cls(doc["name"], tuple(doc["basis"]), c)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: LieAlgebra
    coeffs: np.ndarray

    def __post_init__(self):
        v = np.array(self.coeffs, dtype=float).reshape(-1)
        if v.shape != (self.algebra.dim,):
            raise StructureError(f"expected {self.algebra.dim} coefficients, got {v.size}")
        v.setflags(write=False)
        object.__setattr__(self, "coeffs", v)

    def _check(self, other):
        if not self.algebra.same_as(other.algebra):
            raise StructureError(f"elements of {self.algebra.name} and {other.algebra.name}")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.coeffs)

    def __mul__(self, s):
        return AlgebraElement(self.algebra, float(s) * self.coeffs)

    __rmul__ = __mul__

    def __getitem__(self, label):
        return self.coeffs[self.algebra.index(label)]

    def as_dict(self, tol=0.0):
        return {l: float(v) for l, v in zip(self.algebra.basis_labels, self.coeffs) if abs(v) > tol}

    def __repr__(self):
        terms = " + ".join(f"{v:g}*{l}" for l, v in self.as_dict().items()) or "0"
        return f"<{self.algebra.name}: {terms}>"


@dataclass(frozen=True, eq=False)
class DualPoint:
    algebra: LieAlgebra
    xi: np.ndarray

    def __post_init__(self):
        v = np.array(self.xi, dtype=float).reshape(-1)
        if v.shape != (self.algebra.dim,):
            raise StructureError(f"expected {self.algebra.dim} coordinates, got {v.size}")
        v.setflags(write=False)
        object.__setattr__(self, "xi", v)

    def __getitem__(self, label):
        return self.xi[self.algebra.index(label)]

    def replace(self, **coords):
        v = self.xi.copy()
        for k, val in coords.items():
            v[self.algebra.index(k)] = val
        return DualPoint(self.algebra, v)

    def as_dict(self):
        return {l: float(v) for l, v in zip(self.algebra.dual_labels, self.xi)}

    def __repr__(self):
        inner = ", ".join(f"{l}={v:.6g}" for l, v in self.as_dict().items())
        return f"DualPoint[{self.algebra.name}]({inner})"


class ScalarField:
    """A function on the dual space with optional analytic gradient.

    Without an analytic gradient, central differences with step
    ``max(1e-6, 1e-6 * |x|)`` are used.
    """

    def __init__(self, fn, grad=None):
        self.fn = fn
        self._grad = grad

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        if self._grad is not None:
            return np.asarray(self._grad(x), dtype=float)
        h = max(1e-6, 1e-6 * float(np.linalg.norm(x)))
        g = np.empty_like(x)
        for i in range(x.size):
            e = np.zeros_like(x)
            e[i] = h
            g[i] = (self.fn(x + e) - self.fn(x - e)) / (2 * h)
        return g

    def __mul__(self, other):
        other = as_field(other)
        return ScalarField(
            lambda x: self(x) * other(x),
            lambda x: self(x) * other.gradient(x) + other(x) * self.gradient(x),
        )


def as_field(f):
    return f if isinstance(f, ScalarField) else ScalarField(f)


def _xi(alg, x):
    if isinstance(x, DualPoint):
        if not alg.same_as(x.algebra):
            raise StructureError(f"point of {x.algebra.name} used with {alg.name}")
        return x.xi
    return np.asarray(x, dtype=float)


def _coeffs(alg, a):
    if isinstance(a, AlgebraElement):
        if not alg.same_as(a.algebra):
            raise StructureError(f"element of {a.algebra.name} used with {alg.name}")
        return a.coeffs
    return np.asarray(a, dtype=float)


def bracket(a, b):
    """Lie bracket ``[a, b]`` computed from the structure constants."""
    a._check(b)
    return AlgebraElement(a.algebra, kernels.bracket(a.algebra.c, a.coeffs, b.coeffs))


def jacobi_residual(alg):
    """Largest absolute Jacobi sum over all index quadruples (0 for a Lie algebra)."""
    c = alg.c if isinstance(alg, LieAlgebra) else np.asarray(alg, dtype=float)
    return kernels.jacobi_residual(c)


def antisymmetry_residual(alg):
    c = alg.c if isinstance(alg, LieAlgebra) else np.asarray(alg, dtype=float)
    return float(np.max(np.abs(c + c.transpose(0, 2, 1)))) if c.size else 0.0


def lie_poisson_bracket(f, g, x):
    """``{f, g}(x) = df_i dg_j c[k, i, j] x_k`` for scalar fields on the dual."""
    alg = x.algebra
    f, g = as_field(f), as_field(g)
    return float(f.gradient(x.xi) @ alg.poisson_tensor(x) @ g.gradient(x.xi))


def hamiltonian_vector_field(h, x):
    h = as_field(h)
    xi = x.xi if isinstance(x, DualPoint) else np.asarray(x, dtype=float)
    alg = x.algebra
    return kernels.lie_poisson_field(alg.c, xi, h.gradient(xi))


def hamiltonian_flow(h, x0, t_span, *, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, t_eval=None):
    """Integrate ``dx_i/dt = {x_i, h}`` on the dual from ``x0``.

    Returns a :class:`Trajectory` whose rows are dual coordinates; raises
    :class:`~orbitkit.errors.IntegrationError` (with the partial trajectory)
    if the step size underflows.
    """
    h = as_field(h)
    alg = x0.algebra
    c = alg.c

    def rhs(t, y):
        return kernels.lie_poisson_field(c, y, h.gradient(y))

    traj = solve(rhs, t_span, x0.xi, rtol=rtol, atol=atol, t_eval=t_eval, labels=alg.dual_labels)
    traj.meta["algebra"] = alg.name
    return traj


def coadjoint_generator_matrix(a):
    """Matrix ``A`` with ``d/dt x = A x`` for the coadjoint flow of ``exp(t a)``."""
    alg = a.algebra
    return np.einsum("kij,j->ik", alg.c, a.coeffs)


def coadjoint_flow_one_param(a, x0, t):
    """Coadjoint action of ``exp(t a)`` on ``x0`` via the matrix exponential.

    ``<CoAd_g x, b> = <x, Ad_{g^-1} b>``, so the generator matrix is minus the
    transpose of ``ad_a``.
    """
    a._check(AlgebraElement(x0.algebra, np.zeros(x0.algebra.dim)))
    return DualPoint(x0.algebra, expm(t * coadjoint_generator_matrix(a)) @ x0.xi)


__all__ = [
    "LieAlgebra",
    "AlgebraElement",
    "DualPoint",
    "ScalarField",
    "Trajectory",
    "bracket",
    "jacobi_residual",
    "antisymmetry_residual",
    "lie_poisson_bracket",
    "hamiltonian_vector_field",
    "hamiltonian_flow",
    "coadjoint_flow_one_param",
    "coadjoint_generator_matrix",
]
