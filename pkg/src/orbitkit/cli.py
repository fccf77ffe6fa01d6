"""``orbitkit`` command-line front end.

Exit codes: 0 success, 1 domain or verification failure, 2 usage error.
Every command writes JSON (or CSV for ``simulate --format csv``) to stdout
or to ``--output``.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__, kernels
from .charts import integrate, make_chart
from .coadjoint import classify_orbit, invariants
from .coupling import MinimalCouplingState, minimal_coupling_integrate
from .errors import DomainExitError, OrbitkitError
from .groups import GROUPS, contracted_structure_constants, contraction_family, convergence_slope, make_algebra
from .reps import (casimir_residual, fit_lambda, galilei_casimir_residual, galilei_realization,
                   poincare_realization, sample_momenta, wave_suite)

COMMANDS = ("verify", "classify", "simulate", "contract", "reps-check", "algebra")
DEFAULT_EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4)


class UsageError(Exception):
    pass


def _json_arg(text, what):
    if isinstance(text, dict):
        return text
    try:
        val = json.loads(text)
    except (TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None
    if not isinstance(val, dict):
        raise UsageError(f"{what} must be a JSON object")
    return val


def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"{args.command} needs --{n.replace('_', '-')}")


# -- commands ---------------------------------------------------------------------------

def cmd_verify(args):
    from . import verify

    report = verify.run(seed=args.seed, filter=args.filter, fault=args.inject_fault)
    return report.dumps(), report.exit_code


def cmd_classify(args):
    _need(args, "group", "point")
    doc = _json_arg(args.point, "--point")
    coords = doc.get("coords", doc)
    alg = make_algebra(args.group)
    unknown = sorted(set(coords) - set(alg.dual_labels))
    if unknown:
        raise UsageError(f"unknown coordinates {unknown} for {args.group}; expected {list(alg.dual_labels)}")
    label = classify_orbit(args.group, alg.point({k: float(v) for k, v in coords.items()}))
    return _dump({"schema": 1, **label.to_json()}), 0


def _times(args):
    if not args.t > 0 or not args.dt_out > 0:
        raise UsageError("--t and --dt-out must be positive")
    n = int(round(args.t / args.dt_out))
    return np.linspace(0.0, n * args.dt_out, n + 1)


def _simulate_group(args, labels, x0, t_eval):
    chart = make_chart(args.group, labels)
    unknown = sorted(set(x0) - set(chart.chart_coords))
    if unknown:
        raise UsageError(f"unknown chart coordinates {unknown}; expected {list(chart.chart_coords)}")
    y0 = np.array([float(x0.get(c, 0.0)) for c in chart.chart_coords])
    traj = integrate(chart, y0, (0.0, t_eval[-1]), t_eval=t_eval, rtol=args.rtol, atol=args.atol)
    ref = invariants(chart.group, chart.lift(traj.y[0]))
    drift = {k: [invariants(chart.group, chart.lift(y))[k] - v for y in traj.y] for k, v in ref.items()}
    return chart.chart_coords, traj, drift


def _simulate_minimal(args, labels, x0, t_eval):
    if args.group not in ("galilei_maxwell_ext", "poincare_maxwell"):
        raise UsageError("--picture minimal needs galilei_maxwell_ext (nonrelativistic) or poincare_maxwell")
    extra = sorted(set(labels) - {"m", "beta", "e1", "e2"})
    if extra:
        raise UsageError(f"minimal picture labels are m, beta, e1, e2; got extra {extra}")
    state = MinimalCouplingState(pi=(x0.get("pi1", 0.0), x0.get("pi2", 0.0)), r=(x0.get("r1", 0.0), x0.get("r2", 0.0)),
                                 e=(labels.get("e1", 0.0), labels.get("e2", 0.0)), beta=labels.get("beta", 0.0),
                                 m=labels.get("m", 1.0))
    rel = args.group == "poincare_maxwell"
    run = minimal_coupling_integrate(state, rel, (0.0, t_eval[-1]), t_eval=t_eval, rtol=args.rtol, atol=args.atol)
    drift = {k: list(v - v[0]) for k, v in run.integrals.items()}
    return run.trajectory.labels, run.trajectory, drift


def cmd_simulate(args):
    _need(args, "group", "labels", "x0", "t", "dt_out")
    labels = {k: float(v) for k, v in _json_arg(args.labels, "--labels").items()}
    x0 = {k: float(v) for k, v in _json_arg(args.x0, "--x0").items()}
    t_eval = _times(args)
    sim = _simulate_minimal if args.picture == "minimal" else _simulate_group
    try:
        coords, traj, drift = sim(args, labels, x0, t_eval)
    except DomainExitError as exc:
        raise OrbitkitError(f"{exc}; last valid state {list(map(float, exc.last_state))}") from None
    names = sorted(drift)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", *coords, *(f"drift_{n}" for n in names)])
        for i, t in enumerate(traj.t):
            w.writerow([_g17(t), *(_g17(v) for v in traj.y[i]), *(_g17(drift[n][i]) for n in names)])
        return buf.getvalue(), 0
    doc = {
        "schema": 1,
        "group": args.group,
        "picture": args.picture,
        "labels": labels,
        "coords": list(coords),
        "t": [float(t) for t in traj.t],
        "y": [[float(v) for v in row] for row in traj.y],
        "drift": {n: [float(v) for v in drift[n]] for n in names},
    }
    return _dump(doc), 0


def _g17(v):
    return format(float(v), ".17g")


def cmd_contract(args):
    eps = list(args.epsilons) if args.epsilons else list(DEFAULT_EPSILONS)
    if len(eps) < 3:
        raise UsageError("contract needs at least three epsilons")
    if any(not e > 0 for e in eps):
        raise UsageError("epsilons must be positive")
    fam = contraction_family()
    labels = fam.source.basis_labels
    limit = fam.limit().c
    per = {}
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            devs = [float(np.max(np.abs(contracted_structure_constants(fam, e).c[:, i, j] - limit[:, i, j])))
                    for e in eps]
            if any(devs):
                per[f"[{labels[i]}'',{labels[j]}'']"] = devs
    if args.commutator:
        pair = args.commutator.split(",")
        if len(pair) != 2 or not all(p in labels for p in pair):
            raise UsageError(f"--commutator expects two basis labels from {list(labels)}, e.g. K1,K2")
        key_a, key_b = sorted(pair, key=labels.index)
        key = f"[{key_a}'',{key_b}'']"
        per = {key: per.get(key, [0.0] * len(eps))}
    slope, devs = convergence_slope(fam, eps)
    doc = {
        "schema": 1,
        "source": fam.source.name,
        "target": fam.target_name,
        "epsilons": eps,
        "deviation": [float(d) for d in devs],
        "per_commutator": per,
        "slope": slope,
    }
    return _dump(doc), 0


def cmd_reps_check(args):
    _need(args, "group", "labels")
    lab = {k: float(v) for k, v in _json_arg(args.labels, "--labels").items()}
    suite = wave_suite(5, seed=args.seed)
    pts = sample_momenta(50, seed=args.seed)
    if args.group == "poincare":
        _require(lab, ("m", "s"))
        real = poincare_realization(lab["m"], lab["s"], args.variant)
    elif args.group == "galilei_ext":
        _require(lab, ("m", "kappa", "U", "s"))
        real = galilei_realization(lab["m"], lab["kappa"], lab["U"], lab["s"], args.variant)
    else:
        raise UsageError("reps-check supports poincare and galilei_ext")
    lam, res = fit_lambda(real, suite, pts)
    if args.group == "poincare":
        shell, pl = zip(*(casimir_residual(real, psi, pts) for psi in suite))
        casimir = {"mass_shell": max(shell), "pauli_lubanski": max(pl)}
    else:
        casimir = {"spin": max(galilei_casimir_residual(real, psi, pts) for psi in suite)}
    doc = {
        "schema": 1,
        "group": args.group,
        "variant": args.variant,
        "lambda": {"re": float(np.real(lam)), "im": float(np.imag(lam))},
        "pair_residuals": {f"[{a},{b}]": float(v) for (a, b), v in res.items()},
        "casimir_residuals": {k: float(v) for k, v in casimir.items()},
    }
    return _dump(doc), 0


def _require(lab, names):
    missing = [n for n in names if n not in lab]
    if missing:
        raise UsageError(f"--labels is missing {missing}")


def cmd_algebra(args):
    if args.action != "dump":
        raise UsageError("algebra supports the 'dump' action")
    if args.name not in GROUPS:
        raise UsageError(f"unknown algebra {args.name!r}; choose from {list(GROUPS)}")
    return _dump(make_algebra(args.name).to_json()), 0


HANDLERS = {
    "verify": cmd_verify,
    "classify": cmd_classify,
    "simulate": cmd_simulate,
    "contract": cmd_contract,
    "reps-check": cmd_reps_check,
    "algebra": cmd_algebra,
}


# -- parsing ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(default):
    common = _Parser(add_help=False)
    common.add_argument("--config", default=default, help="JSON file whose keys replace command-line flags")
    common.add_argument("--seed", type=int, default=default, help="seed for every randomized sweep (default 0)")
    common.add_argument("--output", "-o", default=default, help="write to this path instead of stdout")
    return common


def build_parser():
    p = _Parser(prog="orbitkit", description="Coadjoint orbits and planar particle dynamics.",
                parents=[_common(None)])
    common = _common(argparse.SUPPRESS)  # so a subcommand does not reset options given before it
    p.add_argument("--version", action="version", version=f"orbitkit {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--filter", help="only checks whose name contains this text")
    v.add_argument("--inject-fault", choices=("action", "algebra"), help="corrupt one formula to exercise failures")

    c = sub.add_parser("classify", parents=[common], help="label the orbit through a point")
    c.add_argument("--group", choices=GROUPS)
    c.add_argument("--point", help='JSON, e.g. {"coords": {"h": 2, "p1": 1}}')

    s = sub.add_parser("simulate", parents=[common], help="integrate chart or minimal-coupling dynamics")
    s.add_argument("--group", choices=GROUPS)
    s.add_argument("--labels", help="orbit labels (group picture) or m, beta, e1, e2 (minimal picture)")
    s.add_argument("--x0", help="initial chart coordinates, or pi1, pi2, r1, r2")
    s.add_argument("--t", type=float)
    s.add_argument("--dt-out", type=float)
    s.add_argument("--format", choices=("csv", "json"))
    s.add_argument("--picture", choices=("group", "minimal"))
    s.add_argument("--rtol", type=float)
    s.add_argument("--atol", type=float)

    k = sub.add_parser("contract", parents=[common], help="contraction convergence table")
    k.add_argument("--epsilons", type=float, nargs="+")
    k.add_argument("--commutator", help="restrict the table to one commutator, e.g. K1,K2")

    r = sub.add_parser("reps-check", parents=[common], help="commutator and Casimir residuals of a realization")
    r.add_argument("--group", choices=("poincare", "galilei_ext"))
    r.add_argument("--labels", help='JSON, e.g. {"m": 1, "s": 0.5}')
    r.add_argument("--variant", choices=("shipped", "printed"))

    a = sub.add_parser("algebra", parents=[common], help="algebra utilities")
    a.add_argument("action", choices=("dump",))
    a.add_argument("name")
    return p


DEFAULTS = {"seed": 0, "format": "csv", "picture": "group", "rtol": 1e-10, "atol": 1e-12, "variant": "shipped"}


def parse(argv):
    """Parse ``argv`` and merge a ``--config`` file; flags given on the command line win."""
    args = build_parser().parse_args(argv)
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        if args.command is None and "command" in cfg:
            rest = [str(cfg["command"])] + list(argv)
            return parse(rest)
        cfg = {k.replace("-", "_"): v for k, v in cfg.items() if k != "command"}
        known = set(vars(args))
        unknown = sorted(set(cfg) - known)
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {unknown}")
    if args.command is None:
        raise UsageError(f"choose a command from {list(COMMANDS)}")
    for key in vars(args):
        if getattr(args, key) is None:
            if key in cfg:
                setattr(args, key, cfg[key])
            elif key in DEFAULTS:
                setattr(args, key, DEFAULTS[key])
    for key, typ in (("seed", int), ("t", float), ("dt_out", float), ("rtol", float), ("atol", float)):
        if getattr(args, key, None) is not None:
            try:
                setattr(args, key, typ(getattr(args, key)))
            except (TypeError, ValueError):
                raise UsageError(f"{key} must be a number") from None
    return args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse(argv)
        text, code = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"orbitkit: usage error: {exc}", file=sys.stderr)
        return 2
    except (OrbitkitError, ValueError) as exc:
        print(f"orbitkit: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
