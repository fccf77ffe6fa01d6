"""The planar symmetry algebras: Poincare, centrally extended Galilei and
their Maxwell (constant-field) extensions.

The two-dimensional Levi-Civita symbol is fixed as ``eps[0][1] = +1``.  All
structure constants below are the literal commutator tables; every bracket
not listed vanishes.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, StructureError
from .lie import LieAlgebra

LEVI = ((0, 1), (-1, 0))

GROUPS = ("poincare", "galilei_ext", "poincare_maxwell", "galilei_maxwell_ext")

BASES = {
    "poincare": ("H", "P1", "P2", "K1", "K2", "J"),
    "galilei_ext": ("M", "Kappa", "H", "P1", "P2", "K1", "K2", "J"),
    "poincare_maxwell": ("B", "E1", "E2", "H", "P1", "P2", "K1", "K2", "J"),
    "galilei_maxwell_ext": ("M", "Kappa", "B", "E1", "E2", "H", "P1", "P2", "K1", "K2", "J"),
    # R^2 + poincare, the source of the contraction to galilei_ext
    "poincare_trivial_ext": ("M", "Kappa", "H", "P1", "P2", "K1", "K2", "J"),
}

_DUAL = {
    "M": "m", "Kappa": "kappa", "B": "beta", "E1": "e1", "E2": "e2", "H": "h",
    "P1": "p1", "P2": "p2", "K1": "k1", "K2": "k2", "J": "j",
}

UNITS = {
    "H": "energy (time translations)",
    "P1": "momentum (x1 translations)",
    "P2": "momentum (x2 translations)",
    "K1": "boost along x1",
    "K2": "boost along x2",
    "J": "angular momentum (rotations about x3)",
    "M": "mass (central)",
    "Kappa": "exotic central charge",
    "B": "magnetic field",
    "E1": "electric field, x1",
    "E2": "electric field, x2",
}


def _poincare_rules(rel):
    for i in range(2):
        rel("H", f"K{i+1}", {f"P{i+1}": -1})
        rel(f"P{i+1}", f"K{i+1}", {"H": -1})
    _rotation_rules(rel, ("P", "K"))
    rel("K1", "K2", {"J": -1})


def _rotation_rules(rel, families):
    for fam in families:
        for i in range(2):
            for j in range(2):
                if LEVI[i][j]:
                    rel(f"{fam}{i+1}", "J", {f"{fam}{j+1}": -LEVI[i][j]})


def _galilei_rules(rel):
    for i in range(2):
        rel("H", f"K{i+1}", {f"P{i+1}": -1})
        rel(f"P{i+1}", f"K{i+1}", {"M": -1})
    _rotation_rules(rel, ("P", "K"))
    rel("K1", "K2", {"Kappa": 1})


def _field_rules(rel, relativistic):
    for i in range(2):
        rel("H", f"P{i+1}", {f"E{i+1}": 1})
        for j in range(2):
            if LEVI[i][j]:
                rel(f"E{i+1}", f"K{j+1}", {"B": -LEVI[i][j]})
                if relativistic:
                    rel("B", f"K{i+1}", {f"E{j+1}": LEVI[i][j]})
    _rotation_rules(rel, ("E",))
    rel("P1", "P2", {"B": -1})


_RULES = {
    "poincare": lambda rel: _poincare_rules(rel),
    "poincare_trivial_ext": lambda rel: _poincare_rules(rel),
    "galilei_ext": lambda rel: _galilei_rules(rel),
    "poincare_maxwell": lambda rel: (_poincare_rules(rel), _field_rules(rel, True)),
    "galilei_maxwell_ext": lambda rel: (_galilei_rules(rel), _field_rules(rel, False)),
}


@lru_cache(maxsize=None)
def make_algebra(name):
    """Return the catalog algebra ``name`` (see :data:`GROUPS`)."""
    if name not in _RULES:
        raise StructureError(f"unknown group {name!r}; choose from {GROUPS}")
    labels = BASES[name]
    idx = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    c = np.zeros((n, n, n))

    def rel(a, b, result):
        for lab, v in result.items():
            c[idx[lab], idx[a], idx[b]] += v
            c[idx[lab], idx[b], idx[a]] -= v

    _RULES[name](rel)
    return LieAlgebra(name, labels, c, tuple(_DUAL[l] for l in labels),
                      {l: UNITS[l] for l in labels})


def catalog():
    """Mapping of public group names to their algebras."""
    return {name: make_algebra(name) for name in GROUPS}


def change_basis(alg, T, labels=None, name=None):
    """Structure constants in the basis ``f_a = sum_i T[a, i] e_i``."""
    T = np.asarray(T, dtype=float)
    Tinv = np.linalg.inv(T)
    c = np.einsum("ai,bj,kij,kd->dab", T, T, alg.c, Tinv)
    return LieAlgebra(name or alg.name + "'", labels or alg.basis_labels, c)


@dataclass(frozen=True)
class ContractionFamily:
    """Rescaled bases ``f_a(eps) = eps**powers[a] * (pre @ e)_a`` of ``source``.

    For this family the structure constants in the rescaled basis are
    ``c'[d, a, b] * eps**(powers[a] + powers[b] - powers[d])`` with ``c'`` the
    constants of the unscaled (primed) basis, so the eps -> 0 limit exists
    exactly when no nonzero entry carries a negative power.
    """

    source: LieAlgebra
    pre: np.ndarray
    powers: tuple
    target_name: str

    def basis_change(self, eps):
        eps = _positive(eps)
        return np.diag([eps ** p for p in self.powers]) @ self.pre

    def primed(self):
        return change_basis(self.source, self.pre, self.source.basis_labels, self.source.name + "'")

    def exponents(self):
        p = np.asarray(self.powers)
        return p[None, :, None] + p[None, None, :] - p[:, None, None]

    def limit(self):
        """Structure constants of the eps -> 0 limit."""
        cp = self.primed().c
        e = self.exponents()
        if np.any((e < 0) & (cp != 0)):
            raise DomainError("basis rescaling has no finite eps -> 0 limit")
        return LieAlgebra(self.target_name, self.source.basis_labels, np.where(e == 0, cp, 0.0),
                          make_algebra(self.target_name).dual_labels)


def contraction_family():
    """R^2 + Poincare rescaled towards the extended Galilei algebra (eps = 1/c).

    Primed basis: M' = M, Kappa' = Kappa, H' = H - M, P' = P, K' = K,
    J' = J + Kappa; then M'' = eps^2 M', Kappa'' = eps^2 Kappa', P'' = eps P',
    K'' = eps K', with H'' = H' and J'' = J'.
    """
    src = make_algebra("poincare_trivial_ext")
    labels = src.basis_labels
    idx = {l: i for i, l in enumerate(labels)}
    pre = np.eye(len(labels))
    pre[idx["H"], idx["M"]] = -1.0
    pre[idx["J"], idx["Kappa"]] = 1.0
    powers = tuple({"M": 2, "Kappa": 2, "P1": 1, "P2": 1, "K1": 1, "K2": 1}.get(l, 0) for l in labels)
    return ContractionFamily(src, pre, powers, "galilei_ext")


def contracted_structure_constants(fam, eps):
    """The algebra of the double-primed basis at contraction parameter ``eps``."""
    eps = _positive(eps)
    c = fam.primed().c * np.power(float(eps), fam.exponents())
    return LieAlgebra(f"{fam.source.name}@eps={eps:g}", fam.source.basis_labels, c,
                      make_algebra(fam.target_name).dual_labels)


def contraction_deviation(fam, eps):
    """Max-norm distance of the structure constants at ``eps`` from the limit."""
    return float(np.max(np.abs(contracted_structure_constants(fam, eps).c - fam.limit().c)))


def convergence_slope(fam, epsilons):
    """Least-squares slope of log(deviation) against log(eps)."""
    epsilons = np.asarray(epsilons, dtype=float)
    if epsilons.size < 3:
        raise DomainError("need at least three epsilons for a convergence fit")
    devs = np.array([contraction_deviation(fam, e) for e in epsilons])
    slope, _ = np.polyfit(np.log(epsilons), np.log(devs), 1)
    return float(slope), devs


def _positive(eps):
    eps = float(eps)
    if not eps > 0:
        raise DomainError(f"contraction parameter must be positive, got {eps}")
    return eps


@dataclass(frozen=True)
class EffectiveBasisChange:
    """Enveloping-algebra redefinition K'_i = K_i + lam eps_ij P_j,
    P'_i = P_i + (m/b) eps_ij E_j on the Galilei-Maxwell algebra, with the
    central elements M, Kappa, B replaced by their values (m, kappa, b).
    """

    m: float
    kappa: float
    b_field: float
    lam: float
    effective_mass: float
    matrix: np.ndarray

    def transformed(self):
        alg = make_algebra("galilei_maxwell_ext")
        labels = tuple(l + "'" if l in ("P1", "P2", "K1", "K2") else l for l in alg.basis_labels)
        return change_basis(alg, self.matrix, labels, "galilei_maxwell_ext'")

    def central_value(self, element_coeffs):
        """Evaluate a combination of the central generators on (m, kappa, b)."""
        alg = make_algebra("galilei_maxwell_ext")
        v = np.asarray(element_coeffs, dtype=float)
        central = {"M": self.m, "Kappa": self.kappa, "B": self.b_field}
        rest = [i for i, l in enumerate(alg.basis_labels) if l not in central]
        if np.any(np.abs(v[rest]) > 0):
            raise DomainError("element is not a combination of central generators")
        return float(sum(v[alg.index(l)] * val for l, val in central.items()))

    def k_bracket(self):
        """``[K'_1, K'_2]`` in the transformed algebra, as a coefficient vector."""
        alg = self.transformed()
        return alg.c[:, alg.index("K1'"), alg.index("K2'")]


def effective_basis_change(m, kappa, b_field):
    """Basis change that removes the exotic term from ``[K_1, K_2]``.

    ``lam = (-m + sqrt(m^2 + kappa b)) / b`` solves ``kappa - 2 lam m - lam^2 b = 0``;
    ``sqrt(m^2 + kappa b)`` is reported as the effective mass.
    """
    m, kappa, b = float(m), float(kappa), float(b_field)
    if b == 0.0:
        raise DomainError("b_field must be nonzero")
    disc = m * m + kappa * b
    if disc < 0:
        raise DomainError(f"m^2 + kappa*b = {disc} < 0: no real basis change")
    me = np.sqrt(disc)
    lam = (-m + me) / b
    alg = make_algebra("galilei_maxwell_ext")
    T = np.eye(alg.dim)
    for i in range(2):
        for j in range(2):
            if LEVI[i][j]:
                T[alg.index(f"K{i+1}"), alg.index(f"P{j+1}")] = lam * LEVI[i][j]
                T[alg.index(f"P{i+1}"), alg.index(f"E{j+1}")] = (m / b) * LEVI[i][j]
    return EffectiveBasisChange(m, kappa, b, float(lam), float(me), T)
