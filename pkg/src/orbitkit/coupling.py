"""Charged planar particle in constant fields via minimal coupling.

Canonical pair ``(pi, r)`` with ``{r_i, pi_j} = delta_ij``.  With the kinetic
momentum ``u = pi + (beta/2) z x r``:

* nonrelativistic: ``H = u^2 / 2m + e.r``
* relativistic:    ``H = sqrt(m^2 + u^2) - e.r``

The nonrelativistic motion also conserves

    C1 = e x (pi - (beta/2) z x r)
    C2 = (e.u)^2 - 2 (e.r) [beta (pi x e) - m e^2]

and C1 survives in the relativistic case as well.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .charts import integrate as chart_integrate
from .charts import label_drift, make_chart
from .errors import DomainError
from .ode import DEFAULT_ATOL, DEFAULT_RTOL, Trajectory, solve
from .planar import cross, perp, vec

STATE_LABELS = ("pi1", "pi2", "r1", "r2")


@dataclass(frozen=True)
class MinimalCouplingState:
    pi: tuple
    r: tuple
    e: tuple = (0.0, 0.0)
    beta: float = 0.0
    m: float = 1.0

    def __post_init__(self):
        for name in ("pi", "r", "e"):
            object.__setattr__(self, name, tuple(vec(getattr(self, name))))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "m", float(self.m))

    @property
    def y(self):
        return np.array([*self.pi, *self.r])


def kinetic_momentum(pi, r, beta):
    return np.asarray(pi) + 0.5 * beta * perp(r)


def hamiltonian(state, y, relativistic=False):
    pi, r = y[:2], y[2:]
    u = kinetic_momentum(pi, r, state.beta)
    e = np.array(state.e)
    if relativistic:
        return float(np.sqrt(state.m ** 2 + u @ u) - e @ r)
    return float(u @ u / (2 * state.m) + e @ r)


def integrals(state, y, relativistic=False):
    """``{"H", "C1"}`` and, for the nonrelativistic motion, ``"C2"``."""
    pi, r = y[:2], y[2:]
    e, beta, m = np.array(state.e), state.beta, state.m
    out = {
        "H": hamiltonian(state, y, relativistic),
        "C1": cross(e, pi - 0.5 * beta * perp(r)),
    }
    if not relativistic:
        u = kinetic_momentum(pi, r, beta)
        out["C2"] = (e @ u) ** 2 - 2 * (e @ r) * (beta * cross(pi, e) - m * (e @ e))
    return out


def _rhs(state, relativistic):
    e, beta, m = np.array(state.e), state.beta, state.m

    def rhs(t, y):
        pi, r = y[:2], y[2:]
        u = kinetic_momentum(pi, r, beta)
        energy = np.sqrt(m * m + u @ u) if relativistic else m
        rdot = u / energy
        force = e if relativistic else -e
        pidot = force + 0.5 * beta * perp(rdot)
        return np.concatenate([pidot, rdot])
    return rhs


@dataclass(frozen=True)
class CouplingRun:
    trajectory: Trajectory
    integrals: dict
    drift: dict


def minimal_coupling_integrate(state0, relativistic=False, t_span=(0.0, 10.0), *, rtol=DEFAULT_RTOL,
                               atol=DEFAULT_ATOL, t_eval=None, method="rk", dt=None):
    """Integrate the canonical equations and log the conserved quantities.

    ``method="rk"`` uses the adaptive integrator; ``method="splitting"`` uses a
    fixed-step drift/rotate/kick splitting in kinetic variables (nonrelativistic
    only, step ``dt``; ``t_eval`` must then be a multiple of ``dt`` apart).
    """
    if not state0.m > 0:
        raise DomainError(f"mass must be > 0, got {state0.m}")
    if method == "rk":
        traj = solve(_rhs(state0, relativistic), t_span, state0.y, rtol=rtol, atol=atol,
                     t_eval=t_eval, labels=STATE_LABELS)
    elif method == "splitting":
        if relativistic:
            raise DomainError("the splitting integrator handles the nonrelativistic Hamiltonian only")
        traj = _splitting(state0, t_span, dt, t_eval)
    else:
        raise DomainError(f"unknown method {method!r}")
    log = {k: np.array([integrals(state0, y, relativistic)[k] for y in traj.y])
           for k in integrals(state0, traj.y[0], relativistic)}
    drift = {k: float(np.max(np.abs(v - v[0]))) for k, v in log.items()}
    traj.meta.update(picture="minimal", relativistic=relativistic, method=method)
    return CouplingRun(traj, log, drift)


def _splitting(state0, t_span, dt, t_eval):
    t0, t1 = float(t_span[0]), float(t_span[1])
    if dt is None or not dt > 0:
        raise DomainError("the splitting integrator needs a positive dt")
    n_steps = int(round((t1 - t0) / dt))
    if not np.isclose(n_steps * dt, t1 - t0, rtol=1e-9, atol=0):
        raise DomainError("t_span length must be a multiple of dt")
    stride = 1
    if t_eval is not None:
        gaps = np.diff(np.asarray(t_eval, dtype=float))
        stride = int(round(gaps[0] / dt)) if gaps.size else n_steps
        if stride < 1 or not np.allclose(gaps, stride * dt, rtol=1e-9):
            raise DomainError("t_eval spacing must be a constant multiple of dt")
    beta = state0.beta
    r0 = np.array(state0.r)
    u0 = kinetic_momentum(state0.pi, r0, beta)
    rows = kernels.boris_push(r0, u0, state0.e, beta, state0.m, dt, n_steps, stride)
    r, u = rows[:, :2], rows[:, 2:]
    pi = u - 0.5 * beta * np.stack([-r[:, 1], r[:, 0]], axis=1)
    t = t0 + dt * stride * np.arange(len(rows))
    return Trajectory(t, np.hstack([pi, r]), STATE_LABELS)


def picture_compare(chart, mc0, t_span=(0.0, 10.0), *, x0=None, n_out=101, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Run the Galilei-Maxwell chart dynamics and the minimal-coupling dynamics
    side by side and report what each conserves and how each responds to the
    fields.  No map between the two state spaces is assumed."""
    if chart.group != "galilei_maxwell_ext":
        raise DomainError("picture_compare needs a galilei_maxwell_ext chart")
    lab = chart.labels
    if not (np.isclose(lab["beta"], mc0.beta) and np.isclose(lab["m"], mc0.m)):
        raise DomainError("field and mass values of the two pictures must match")
    t_eval = np.linspace(t_span[0], t_span[1], n_out)
    if x0 is None:
        x0 = np.array([*mc0.e, *mc0.pi, *(mc0.m * np.array(mc0.r))])
    if not np.allclose(x0[:2], mc0.e):
        raise DomainError("electric fields of the two pictures must match")
    group = chart_integrate(chart, x0, t_span, rtol=rtol, atol=atol, t_eval=t_eval)
    mc = minimal_coupling_integrate(mc0, False, t_span, rtol=rtol, atol=atol, t_eval=t_eval)

    # rerun each picture with a different magnetic field from the same data
    twin_lab = dict(lab, beta=2.0 * lab["beta"] + 1.0)
    group_twin = chart_integrate(make_chart(chart.group, twin_lab), x0, t_span, rtol=rtol, atol=atol,
                                 t_eval=t_eval)
    mc_twin = minimal_coupling_integrate(
        MinimalCouplingState(mc0.pi, mc0.r, mc0.e, twin_lab["beta"], mc0.m), False, t_span,
        rtol=rtol, atol=atol, t_eval=t_eval)
    p = group.y[:, 2:4]
    pi = mc.trajectory.y[:, :2]
    u = kinetic_momentum(pi.T, mc.trajectory.y[:, 2:].T, mc0.beta).T
    group_beta = float(np.max(np.abs(group.y - group_twin.y)))
    mc_beta = float(np.max(np.abs(mc.trajectory.y - mc_twin.trajectory.y)))
    return {
        "group": {
            "label_drift": label_drift(chart, group),
            "field_drift": float(np.max(np.abs(group.y[:, :2] - group.y[0, :2]))),
            "momentum_change": float(np.max(np.linalg.norm(p - p[0], axis=1))),
            "beta_sensitivity": group_beta,
        },
        "minimal": {
            "integral_drift": mc.drift,
            "momentum_change": float(np.max(np.linalg.norm(pi - pi[0], axis=1))),
            "kinetic_speed_change": float(np.ptp(np.linalg.norm(u, axis=1))),
            "beta_sensitivity": mc_beta,
        },
        "structural": {
            "magnetic_field_enters_group_motion": group_beta > 1e-9,
            "magnetic_field_enters_minimal_motion": mc_beta > 1e-9,
        },
        "trajectories": {"group": group, "minimal": mc.trajectory},
    }
