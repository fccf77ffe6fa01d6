"""Momentum-space realizations of the Poincare and Galilei generators.

Wave functions are complex functions of ``(p1, p2)``; on the Poincare mass
shell ``h = sqrt(p^2 + m^2)`` is eliminated, so every operator acts on
functions of the planar momentum alone.  Shipped realizations:

Poincare (m, s)::

    H = h,  P_j = p_j,  K_j = i h d_j + eps_jk p_k s / (m + h),
    J = i (p2 d_1 - p1 d_2) + s

Galilei (m, kappa, U, s)::

    M = m,  Kappa = kappa,  H = p^2/2m + U,  P_j = p_j,
    K_j = i m d_j - kappa eps_jk p_k / 2m,
    J = i (p2 d_1 - p1 d_2) + s + kappa U / m

Derivatives are 4th-order central differences with step ``1e-4 (1 + |p|)``;
nested operators nest the differences.  Wave functions are complex-valued,
so complex-step differentiation is not available.
"""

from dataclasses import dataclass, field

import numpy as np

from .coadjoint import massless_galilei_labels  # noqa: F401  (re-exported)
from .errors import DomainError, NumericalError
from .groups import make_algebra

FD_STEP = 1e-4
LAMBDAS = (1.0 + 0j, -1.0 + 0j, 1j, -1j)
METRIC = np.diag([1.0, -1.0, -1.0])


@dataclass(frozen=True)
class WaveFunction:
    """``evaluator(p1, p2)`` returns complex values; arrays broadcast."""

    evaluator: object
    name: str = ""

    def __call__(self, p1, p2):
        return np.asarray(self.evaluator(p1, p2), dtype=complex)


def _step(p1, p2):
    return FD_STEP * (1.0 + np.hypot(p1, p2))


def derivative(psi, axis):
    """``d psi / d p_axis`` (axis 0 or 1) as a new wave function."""

    def ev(p1, p2):
        p1, p2 = np.broadcast_arrays(np.asarray(p1, dtype=float), np.asarray(p2, dtype=float))
        h = _step(p1, p2)
        e1, e2 = (h, 0.0) if axis == 0 else (0.0, h)
        out = (8 * (psi(p1 + e1, p2 + e2) - psi(p1 - e1, p2 - e2))
               - (psi(p1 + 2 * e1, p2 + 2 * e2) - psi(p1 - 2 * e1, p2 - 2 * e2))) / (12 * h)
        if not np.all(np.isfinite(out)):
            raise NumericalError("finite-difference derivative is not finite")
        return out
    return WaveFunction(ev, f"d{axis + 1}({psi.name})")


def _mul(fn, psi):
    return WaveFunction(lambda p1, p2: fn(p1, p2) * psi(p1, p2))


def _const(c, psi):
    return WaveFunction(lambda p1, p2: c * psi(p1, p2))


@dataclass(frozen=True)
class GeneratorRealization:
    group: str
    labels: dict
    operators: dict = field(hash=False)
    variant: str = "shipped"

    def apply(self, gen, psi):
        alg = make_algebra(self.group)
        return self.operators[alg.basis_labels[alg.index(gen)]](psi)


def _rotation_op(const):
    def op(psi):
        d1, d2 = derivative(psi, 0), derivative(psi, 1)
        return WaveFunction(lambda p1, p2: 1j * (p2 * d1(p1, p2) - p1 * d2(p1, p2)) + const(p1, p2) * psi(p1, p2))
    return op


def poincare_realization(m, s, variant="shipped"):
    """Poincare generators on functions of ``(p1, p2)``.

    ``variant="printed"`` keeps the published spin terms
    ``eps_jk p_k s / 2m`` in K_j and ``h s / m`` in J (the explicit ``d_h``
    dropped); it fails the commutation relations and is kept for reports.
    """
    m, s = float(m), float(s)
    if not m > 0:
        raise DomainError(f"m must be > 0, got {m}")

    def h(p1, p2):
        return np.sqrt(p1 * p1 + p2 * p2 + m * m)

    if variant == "shipped":
        def coef(p1, p2):
            return s / (m + h(p1, p2))

        def jconst(p1, p2):
            return s
    elif variant == "printed":
        def coef(p1, p2):
            return s / (2 * m) + 0 * p1

        def jconst(p1, p2):
            return h(p1, p2) * s / m
    else:
        raise DomainError(f"unknown variant {variant!r}")

    def boost(axis):
        sign = 1.0 if axis == 0 else -1.0

        def op(psi):
            d = derivative(psi, axis)

            def ev(p1, p2):
                other = p2 if axis == 0 else p1
                return 1j * h(p1, p2) * d(p1, p2) + sign * other * coef(p1, p2) * psi(p1, p2)
            return WaveFunction(ev)
        return op

    ops = {
        "H": lambda psi: _mul(h, psi),
        "P1": lambda psi: _mul(lambda p1, p2: p1, psi),
        "P2": lambda psi: _mul(lambda p1, p2: p2, psi),
        "K1": boost(0),
        "K2": boost(1),
        "J": _rotation_op(jconst),
    }
    return GeneratorRealization("poincare", {"m": m, "s": s}, ops, variant)


def galilei_realization(m, kappa, U, s, variant="shipped"):
    """Galilei generators; ``variant="printed"`` uses ``s + kappa U`` in J."""
    m, kappa, U, s = float(m), float(kappa), float(U), float(s)
    if m == 0:
        raise DomainError("m must be nonzero")
    if variant == "shipped":
        jc = s + kappa * U / m
    elif variant == "printed":
        jc = s + kappa * U
    else:
        raise DomainError(f"unknown variant {variant!r}")

    def boost(axis):
        sign = -1.0 if axis == 0 else 1.0

        def op(psi):
            d = derivative(psi, axis)

            def ev(p1, p2):
                other = p2 if axis == 0 else p1
                return 1j * m * d(p1, p2) + sign * kappa * other / (2 * m) * psi(p1, p2)
            return WaveFunction(ev)
        return op

    ops = {
        "M": lambda psi: _const(m, psi),
        "Kappa": lambda psi: _const(kappa, psi),
        "H": lambda psi: _mul(lambda p1, p2: (p1 * p1 + p2 * p2) / (2 * m) + U, psi),
        "P1": lambda psi: _mul(lambda p1, p2: p1, psi),
        "P2": lambda psi: _mul(lambda p1, p2: p2, psi),
        "K1": boost(0),
        "K2": boost(1),
        "J": _rotation_op(lambda p1, p2: jc + 0 * p1),
    }
    return GeneratorRealization("galilei_ext", {"m": m, "kappa": kappa, "U": U, "s": s}, ops, variant)


def apply_generator(real, gen, psi, at):
    """``(G psi)(p)`` at the momentum ``at``."""
    p1, p2 = np.asarray(at, dtype=float)
    return complex(real.apply(gen, psi)(p1, p2))


def wave_suite(n=5, seed=0):
    """Gaussian-times-polynomial test functions with seeded centres and widths."""
    rng = np.random.default_rng(seed)
    suite = []
    for i in range(n):
        c1, c2 = rng.uniform(-0.5, 0.5, 2)
        w = rng.uniform(0.8, 1.5)
        a = rng.normal(size=3) + 1j * rng.normal(size=3)

        def ev(p1, p2, c1=c1, c2=c2, w=w, a=a, deg=i):
            poly = a[0] + a[1] * p1 ** (deg % 3) + a[2] * p1 * p2 ** (deg % 2 + 1)
            return poly * np.exp(-((p1 - c1) ** 2 + (p2 - c2) ** 2) / (2 * w * w))
        suite.append(WaveFunction(ev, f"gauss_poly_{i}"))
    return suite


def sample_momenta(n=50, seed=0, radius=2.0):
    rng = np.random.default_rng(seed)
    return rng.uniform(-radius, radius, size=(n, 2))


def _pair_terms(real, a, b, suite, points):
    """Values of ``[G_a, G_b] psi`` and ``sum_k c^k_ab G_k psi`` stacked over suite and points."""
    alg = make_algebra(real.group)
    ia, ib = alg.index(a), alg.index(b)
    p1, p2 = points[:, 0], points[:, 1]
    lhs, rhs = [], []
    for psi in suite:
        ab = real.apply(a, real.apply(b, psi))(p1, p2)
        ba = real.apply(b, real.apply(a, psi))(p1, p2)
        lhs.append(ab - ba)
        r = np.zeros(len(points), dtype=complex)
        for k in range(alg.dim):
            ck = alg.c[k, ia, ib]
            if ck:
                r += ck * real.apply(alg.basis_labels[k], psi)(p1, p2)
        rhs.append(r)
    return np.concatenate(lhs), np.concatenate(rhs)


def pair_residuals(real, suite, points):
    """``{(a, b): {lam: residual}}`` for every generator pair and candidate lambda."""
    alg = make_algebra(real.group)
    labels = alg.basis_labels
    out = {}
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs, rhs = _pair_terms(real, labels[i], labels[j], suite, points)
            out[(labels[i], labels[j])] = {lam: float(np.max(np.abs(lhs - lam * rhs))) for lam in LAMBDAS}
    return out


def fit_lambda(real, suite, points):
    """The single ``lam`` in {1, -1, i, -i} minimizing the worst pair residual."""
    res = pair_residuals(real, suite, points)
    lam = min(LAMBDAS, key=lambda l: max(r[l] for r in res.values()))
    return lam, {pair: r[lam] for pair, r in res.items()}


def commutator_residual(real, i, j, psi_suite, points, lam=None):
    """``max |([G_i, G_j] - lam sum_k c^k_ij G_k) psi|`` over suite and points.

    ``lam=None`` fits the realization's global constant first.
    """
    if not psi_suite:
        raise DomainError("psi_suite must not be empty")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if lam is None:
        lam, _ = fit_lambda(real, psi_suite, points)
    lhs, rhs = _pair_terms(real, i, j, psi_suite, points)
    return float(np.max(np.abs(lhs - lam * rhs)))


def casimir_residual(real, psi, points, s_prime=None):
    """Mass-shell and Pauli-Lubanski residuals of a Poincare realization.

    Returns ``(max |(h^2 - p^2 - m^2) psi|, max |(h J + P x K - m s') psi|)``
    with ``s'`` defaulting to the realization's spin.
    """
    if real.group != "poincare":
        raise DomainError("casimir_residual needs a poincare realization")
    m = real.labels["m"]
    s = real.labels["s"] if s_prime is None else float(s_prime)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    p1, p2 = points[:, 0], points[:, 1]
    h = np.sqrt(p1 * p1 + p2 * p2 + m * m)
    val = psi(p1, p2)
    shell = np.max(np.abs((h * h - p1 * p1 - p2 * p2 - m * m) * val))
    pl = (h * real.apply("J", psi)(p1, p2)
          + p1 * real.apply("K2", psi)(p1, p2) - p2 * real.apply("K1", psi)(p1, p2)
          - m * s * val)
    return float(shell), float(np.max(np.abs(pl)))


def galilei_casimir_residual(real, psi, points):
    """``max |(m J - kappa H + P x K - m s) psi|``: the spin Casimir of the
    extended Galilei algebra evaluated on the realization."""
    if real.group != "galilei_ext":
        raise DomainError("galilei_casimir_residual needs a galilei_ext realization")
    lab = real.labels
    points = np.atleast_2d(np.asarray(points, dtype=float))
    p1, p2 = points[:, 0], points[:, 1]
    val = (lab["m"] * real.apply("J", psi)(p1, p2) - lab["kappa"] * real.apply("H", psi)(p1, p2)
           + p1 * real.apply("K2", psi)(p1, p2) - p2 * real.apply("K1", psi)(p1, p2)
           - lab["m"] * lab["s"] * psi(p1, p2))
    return float(np.max(np.abs(val)))


# -- Lorentz group SO(2,1) -----------------------------------------------------------

def lorentz_rotation(phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def lorentz_boost(chi, n):
    """Pure boost of rapidity ``chi`` along the unit vector ``n`` (active: (m,0,0) -> m(cosh, sinh n))."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    ch, sh = np.cosh(chi), np.sinh(chi)
    L = np.eye(3)
    L[0, 0] = ch
    L[0, 1:] = L[1:, 0] = sh * n
    L[1:, 1:] += (ch - 1) * np.outer(n, n)
    return L


def standard_boost(p, m):
    """Symmetric pure boost taking ``(m, 0, 0)`` to the on-shell ``p``."""
    h, q = p[0], np.asarray(p[1:], dtype=float)
    L = np.eye(3)
    L[0, 0] = h / m
    L[0, 1:] = L[1:, 0] = q / m
    L[1:, 1:] += np.outer(q, q) / (m * (m + h))
    return L


def _check_lorentz(lam):
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (3, 3):
        raise DomainError("Lorentz element must be a 3x3 matrix")
    scale = max(1.0, float(np.max(np.abs(lam))) ** 2)
    if np.max(np.abs(lam.T @ METRIC @ lam - METRIC)) > 1e-12 * scale:
        raise DomainError("matrix does not preserve the metric diag(1, -1, -1)")
    if lam[0, 0] <= 0:
        raise DomainError("matrix does not preserve the positive mass sheet")
    if np.linalg.det(lam) <= 0:
        raise DomainError("matrix is not a proper Lorentz transformation")
    return lam


def _mass(p):
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise DomainError("momentum must be (h, p1, p2)")
    m2 = p[0] ** 2 - p[1] ** 2 - p[2] ** 2
    if p[0] <= 0 or m2 <= 0:
        raise DomainError("momentum must lie on a positive-energy massive shell")
    return p, np.sqrt(m2)


def wigner_angle(p, lam, m=None):
    """Rotation angle in ``[0, 2pi)`` of ``L(lam p)^-1 lam L(p)``.

    ``p = (h, p1, p2)``; if ``m`` is given, ``p`` must satisfy ``h^2 - p^2 = m^2``.
    """
    p, mp = _mass(p)
    if m is not None and abs(mp - m) > 1e-9 * max(1.0, m):
        raise DomainError(f"momentum has mass {mp}, expected {m}")
    lam = _check_lorentz(lam)
    q = lam @ p
    W = np.linalg.solve(standard_boost(q, mp), lam @ standard_boost(p, mp))
    return float(np.arctan2(W[2, 1], W[1, 1]) % (2 * np.pi))


def random_lorentz(rng, max_rapidity=2.0):
    ang = rng.uniform(0, 2 * np.pi)
    return (lorentz_rotation(rng.uniform(0, 2 * np.pi))
            @ lorentz_boost(rng.uniform(0, max_rapidity), (np.cos(ang), np.sin(ang))))


def angle_distance(a, b):
    """Distance between two angles on the circle."""
    d = (a - b) % (2 * np.pi)
    return float(min(d, 2 * np.pi - d))
