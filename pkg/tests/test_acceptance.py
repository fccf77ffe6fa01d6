"""Acceptance criteria 1-11, one printed PASS/FAIL line each.

Run under pytest (``pytest tests/test_acceptance.py -v -s``) or directly
(``python3 tests/test_acceptance.py``).  Tolerances are the contract values;
nothing here is relaxed to make a line green.
"""

import time

import numpy as np
import pytest

from orbitkit import printed
from orbitkit.charts import canonical_brackets, integrate, make_chart, to_canonical
from orbitkit.coadjoint import (INVARIANT_ROWS, row_invariants, classify_orbit, coadjoint_act,
                                consistency_vs_flow, invariants, magnetic_limit_order, sample_element, sample_point,
                                verify_invariance)
from orbitkit.coupling import MinimalCouplingState, minimal_coupling_integrate
from orbitkit.groups import (GROUPS, contracted_structure_constants, contraction_family, convergence_slope,
                             make_algebra)
from orbitkit.lie import jacobi_residual
from orbitkit.reps import (casimir_residual, fit_lambda, galilei_realization, poincare_realization, random_lorentz,
                           sample_momenta, wave_suite, wigner_angle, angle_distance)

LABELS = {
    "poincare": dict(m=1.3, s=0.7),
    "galilei_ext": dict(m=1.3, kappa=0.4, U=0.2, s=0.7),
    "poincare_maxwell": dict(C0=-2.0, C1=0.3, C2=0.5),
    "galilei_maxwell_ext": dict(m=1.1, kappa=0.5, beta=2.0, C1=0.3, C2=0.4),
}


def _rng(n):
    return np.random.default_rng([2024, n])


def criterion_1():
    t0 = time.perf_counter()
    fam = contraction_family()
    res = [jacobi_residual(make_algebra(g)) for g in GROUPS]
    res += [jacobi_residual(contracted_structure_constants(fam, e)) for e in (1.0, 0.1)]
    dt = time.perf_counter() - t0
    return max(res) <= 1e-12 and dt < 1.0, f"max Jacobi residual {max(res):.1e} (tol 1e-12), {dt * 1e3:.0f} ms"


def criterion_2():
    rng = _rng(2)
    t0 = time.perf_counter()
    worst = {}
    for g in GROUPS:
        for _ in range(20):
            x = sample_point(g, rng)
            rep = verify_invariance(g, x, lambda r, g=g: sample_element(g, r), 50, seed=int(rng.integers(2**32)))
            worst[g] = max(worst.get(g, 0.0), rep.worst)
    for row, (pattern, _) in INVARIANT_ROWS.items():
        zero = tuple(n for n, z in zip(("beta", "m", "kappa"), pattern) if z)
        for _ in range(20):
            x = sample_point("galilei_maxwell_ext", rng, zero)
            rep = verify_invariance("galilei_maxwell_ext", x, lambda r: sample_element("galilei_maxwell_ext", r), 50,
                                    invariant_fn=lambda y, row=row: row_invariants(y, row),
                                    seed=int(rng.integers(2**32)))
            worst[f"row{row}"] = max(worst.get(f"row{row}", 0.0), rep.worst)
    dt = time.perf_counter() - t0
    w = max(worst.values())
    return w <= 1e-9 and dt < 10.0, f"max relative drift {w:.1e} (tol 1e-9) over 1000 pairs x 12 sets, {dt:.1f} s"


def criterion_3():
    rng = _rng(3)
    worst = 0.0
    for g in GROUPS:
        for _ in range(20):
            x = sample_point(g, rng)
            for gen in make_algebra(g).basis_labels:
                for t in (0.1, -0.1, 0.5, -0.5):
                    worst = max(worst, consistency_vs_flow(g, gen, x, t))
    return worst <= 1e-8, f"max action/flow discrepancy {worst:.1e} (tol 1e-8)"


def criterion_4():
    rng = _rng(4)
    det_err = 0.0
    for g in ("poincare_maxwell", "galilei_maxwell_ext"):
        ch = make_chart(g, LABELS[g])
        for _ in range(100):
            x = rng.normal(size=6)
            beta = float(np.real(ch.closure(x).get("beta", ch.labels.get("beta"))))
            det_err = max(det_err, abs(np.linalg.det(np.real(ch.poisson_tensor(x))) / beta**6 - 1))
    bad = {}
    for g, lab in LABELS.items():
        ch = make_chart(g, lab)
        for _ in range(100):
            x = rng.normal(size=len(ch.chart_coords))
            vals = dict(lab)
            vals.update({k: float(np.real(v)) for k, v in ch.closure(x).items()})
            for (a, b), fn in printed.BRACKET_TABLES[g].items():
                ref = fn(vals)
                err = abs(ch.bracket(x, a, b) - ref) / max(1.0, abs(ref))
                if err > 1e-12:
                    key = f"{g}:{{{a},{b}}}"
                    bad[key] = max(bad.get(key, 0.0), err)
    ok = det_err <= 1e-10 and not bad
    detail = f"det/beta^6 error {det_err:.1e} (tol 1e-10); table entries off: {bad or 'none'}"
    return ok, detail


def criterion_5():
    rng = _rng(5)
    t = np.linspace(0, 10, 41)
    tt = t[:, None]
    worst = 0.0
    for g, lab in LABELS.items():
        ch = make_chart(g, lab)
        x0 = rng.normal(size=len(ch.chart_coords))
        tr = integrate(ch, x0, (0, 10), t_eval=t)
        if g == "poincare":
            ref = np.hstack([np.tile(x0[:2], (len(t), 1)), x0[2:] + x0[:2] * tt])
        elif g == "galilei_ext":
            ref = np.hstack([np.tile(x0[:2], (len(t), 1)), x0[2:] + x0[:2] * tt / lab["m"]])
        else:
            e, p, k = x0[:2], x0[2:4], x0[4:]
            ref = np.hstack([np.tile(e, (len(t), 1)), p - e * tt, k + p * tt - 0.5 * e * tt**2])
        worst = max(worst, float(np.max(np.abs(tr.y - ref))))
    x0 = rng.normal(size=6)
    base = integrate(make_chart("galilei_maxwell_ext", LABELS["galilei_maxwell_ext"]), x0, (0, 10), t_eval=t)
    indep = 0.0
    for beta, kap in ((0.5, 0.0), (-3.0, 2.0), (7.0, -1.0)):
        lab = dict(LABELS["galilei_maxwell_ext"], beta=beta, kappa=kap)
        other = integrate(make_chart("galilei_maxwell_ext", lab), x0, (0, 10), t_eval=t)
        indep = max(indep, float(np.max(np.abs(other.y - base.y))))
    return worst <= 1e-8 and indep <= 1e-10, (f"closed-form error {worst:.1e} (tol 1e-8); "
                                              f"beta/kappa sensitivity {indep:.1e} (tol 1e-10)")


def criterion_6():
    rng = _rng(6)
    canon = np.block([[np.zeros((2, 2)), -np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
    br = 0.0
    for g in ("poincare", "galilei_ext"):
        ch = make_chart(g, LABELS[g])
        for _ in range(100):
            br = max(br, float(np.max(np.abs(canonical_brackets(ch, rng.normal(size=4)) - canon))))
    ch = make_chart("poincare", LABELS["poincare"])
    vel = 0.0
    t = np.linspace(0, 10, 41)
    for _ in range(5):
        x0 = rng.normal(size=4)
        tr = integrate(ch, x0, (0, 10), t_eval=t)
        q = np.array([to_canonical(ch, y)[2:] for y in tr.y])
        h = np.sqrt(x0[:2] @ x0[:2] + LABELS["poincare"]["m"] ** 2)
        vel = max(vel, float(np.max(np.abs(q - q[0] - np.outer(t, x0[:2] / h)))))
    return br <= 1e-10 and vel <= 1e-8, f"bracket error {br:.1e} (tol 1e-10); q - q0 - p t/h {vel:.1e} (tol 1e-8)"


def criterion_7():
    fam = contraction_family()
    slope, _ = convergence_slope(fam, [1e-1, 1e-2, 1e-3, 1e-4])
    exact = np.array_equal(fam.limit().c, make_algebra("galilei_ext").c)
    return abs(slope - 2.0) <= 0.05 and exact, f"slope {slope:.6f} (2.00 +- 0.05); limit equals galilei_ext: {exact}"


def criterion_8():
    st = MinimalCouplingState(pi=(0.3, -0.2), r=(0.5, 0.1), e=(1.0, 0.0), beta=1.0, m=1.0)
    run = minimal_coupling_integrate(st, t_span=(0, 10), rtol=1e-10, t_eval=np.linspace(0, 10, 201))
    worst = max(run.drift.values())
    return worst <= 1e-8, "drifts " + ", ".join(f"{k} {v:.1e}" for k, v in sorted(run.drift.items())) + " (tol 1e-8)"


def criterion_9():
    suite, pts = wave_suite(5, seed=9), sample_momenta(50, seed=9)
    lines, comm = [], 0.0
    for real in (poincare_realization(1.3, 0.7), galilei_realization(1.3, 0.4, 0.2, 0.7)):
        lam, res = fit_lambda(real, suite, pts)
        comm = max(comm, max(res.values()))
        lines.append(f"{real.group} lambda={lam}")
    pl = max(casimir_residual(poincare_realization(1.3, 0.7), psi, pts)[1] for psi in suite)
    rng = _rng(9)
    coc = 0.0
    for _ in range(100):
        L1, L2 = random_lorentz(rng), random_lorentz(rng)
        q = rng.normal(size=2)
        p = np.array([np.sqrt(q @ q + 1.0), *q])
        coc = max(coc, angle_distance(wigner_angle(p, L1 @ L2),
                                      (wigner_angle(L2 @ p, L1) + wigner_angle(p, L2)) % (2 * np.pi)))
    ok = comm <= 1e-6 and pl <= 1e-6 and coc <= 1e-9
    return ok, (f"commutators {comm:.1e} ({', '.join(lines)}); Pauli-Lubanski {pl:.1e} (tol 1e-6); "
                f"cocycle {coc:.1e} (tol 1e-9)")


def criterion_10():
    x = make_algebra("galilei_maxwell_ext").point(
        dict(m=1.2, kappa=0.7, beta=1.5, e1=0.6, e2=-0.4, h=0.9, p1=0.5, p2=-0.3, k1=0.4, k2=0.2, j=0.8))
    orders, _ = magnetic_limit_order(x, [1e-1, 1e-2, 1e-3, 1e-4])
    ok = all(abs(o - 2.0) <= 0.2 for o in orders)
    return ok, f"measured orders {orders[0]:.4f}, {orders[1]:.4f} (nominal 2, within 10%)"


def criterion_11():
    rng = _rng(11)
    rows_seen, mismatches = set(), 0
    for row, (pattern, _) in INVARIANT_ROWS.items():
        vals = dict(m=1.0, kappa=1.0, beta=1.0, e1=0.5, e2=-0.3, h=0.2, p1=0.7, p2=0.1, k1=-0.4, k2=0.3, j=0.6)
        for lab, zero in zip(("beta", "m", "kappa"), pattern):
            if zero:
                vals[lab] = 0.0
        x = make_algebra("galilei_maxwell_ext").point(vals)
        ref = classify_orbit("galilei_maxwell_ext", x)
        rows_seen.add(ref.stratum[1])
        for _ in range(100):
            lab = classify_orbit("galilei_maxwell_ext", coadjoint_act(sample_element("galilei_maxwell_ext", rng), x))
            mismatches += (lab.stratum, lab.dim) != (ref.stratum, ref.dim)
    ok = rows_seen == set(INVARIANT_ROWS) and mismatches == 0
    return ok, f"rows exercised {sorted(rows_seen)}; label changes under 800 actions: {mismatches}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8,
            criterion_9, criterion_10, criterion_11]


def _line(i, ok, detail):
    return f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("i", range(1, 12))
def test_criterion(i, capsys):
    ok, detail = CRITERIA[i - 1]()
    with capsys.disabled():
        print("\n" + _line(i, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    t0 = time.perf_counter()
    results = [fn() for fn in CRITERIA]
    for i, (ok, detail) in enumerate(results, 1):
        print(_line(i, ok, detail))
    print(f"{sum(ok for ok, _ in results)}/{len(results)} criteria pass in {time.perf_counter() - t0:.1f} s")
