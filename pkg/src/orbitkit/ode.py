"""Adaptive Runge-Kutta driver with partial-trajectory error reporting.

Stepping is delegated to scipy's Dormand-Prince 8(5,3) solver; this module
adds dense sampling at requested times, domain checks and the error contract
(failures carry everything integrated so far).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import DOP853

from .errors import DomainExitError, IntegrationError

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: ``t`` has shape (n,), ``y`` has shape (n, dim)."""

    t: np.ndarray
    y: np.ndarray
    labels: tuple = ()
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    def column(self, label):
        return self.y[:, self.labels.index(label)]

    @property
    def final(self):
        return self.y[-1]


class _LeftDomain(Exception):
    pass


def solve(rhs, t_span, y0, *, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, t_eval=None,
          in_domain=None, labels=(), max_step=np.inf):
    """Integrate ``y' = rhs(t, y)`` over ``t_span``.

    ``t_eval`` defaults to the accepted step times.  ``in_domain(y)`` (if
    given) is checked at every accepted step; a violation raises
    :class:`DomainExitError` with the last state inside the domain.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    y0 = np.asarray(y0, dtype=float)
    if t_eval is not None:
        t_eval = np.asarray(t_eval, dtype=float)
        order = np.sign(t1 - t0) or 1.0
        if np.any(np.diff(t_eval) * order < 0):
            raise ValueError("t_eval must be monotone in the integration direction")
    if in_domain is not None and not in_domain(y0):
        raise DomainExitError("initial state outside the chart domain", last_state=y0)

    def fun(t, y):
        return np.asarray(rhs(t, y), dtype=float)

    ts, ys = [t0], [y0.copy()]
    if t1 == t0:
        return _finish(ts, ys, t_eval, labels)
    solver = DOP853(fun, t0, y0, t1, rtol=rtol, atol=atol, max_step=max_step)
    k = 0
    if t_eval is not None:
        while k < len(t_eval) and t_eval[k] == t0:
            k += 1
        out_t, out_y = list(t_eval[:k]), [y0.copy()] * k
    while solver.status == "running":
        message = solver.step()
        if solver.status == "failed":
            partial = _partial(ts, ys, t_eval, out_t if t_eval is not None else None,
                               out_y if t_eval is not None else None, labels)
            raise IntegrationError(f"integration failed at t={solver.t!r}: {message}", partial)
        if in_domain is not None and not in_domain(solver.y):
            partial = _partial(ts, ys, t_eval, out_t if t_eval is not None else None,
                               out_y if t_eval is not None else None, labels)
            raise DomainExitError(f"trajectory left the chart domain near t={solver.t!r}",
                                  partial, last_state=ys[-1])
        if t_eval is not None:
            dense = solver.dense_output()
            lo, hi = sorted((solver.t_old, solver.t))
            while k < len(t_eval) and lo <= t_eval[k] <= hi:
                out_t.append(t_eval[k])
                out_y.append(dense(t_eval[k]))
                k += 1
        ts.append(solver.t)
        ys.append(solver.y.copy())
    if t_eval is not None:
        return Trajectory(np.array(out_t), np.array(out_y).reshape(len(out_t), -1), tuple(labels))
    return _finish(ts, ys, None, labels)


def _finish(ts, ys, t_eval, labels):
    if t_eval is not None:
        ys = [ys[0]] * len(t_eval)
        ts = list(t_eval)
    return Trajectory(np.array(ts), np.array(ys), tuple(labels))


def _partial(ts, ys, t_eval, out_t, out_y, labels):
    if t_eval is not None and out_t:
        return Trajectory(np.array(out_t), np.array(out_y), tuple(labels))
    return Trajectory(np.array(ts), np.array(ys), tuple(labels))
