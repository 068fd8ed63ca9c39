"""Command-line front end.

Each subcommand maps onto one public library operation, reads measures
from JSON documents (see ``serialization``) and writes a machine-readable
report document to standard output (and ``--out``), with optional CSV
tables of densities for plotting.

Exit codes: 0 pass/success, 1 verified failure (identity violated beyond
tolerance, or verdict "no" when ``--expect yes``), 2 usage error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import cauchy as cy
from . import hilbert as hb
from . import measures as ms
from . import quadrature as qd
from . import represent as rp
from . import serialization as io
from . import stconv as sc
from . import transforms as tr

_COMMANDS = {}


def _command(name):
    def wrap(fn):
        _COMMANDS[name] = fn
        return fn
    return wrap


class UsageError(Exception):
    pass


def _measures(args, n=None):
    mus = [io.load_measure(p) for p in args.measure or []]
    if n is not None and len(mus) != n:
        raise UsageError(f"expected {n} --measure argument(s), got {len(mus)}")
    return mus


def _alphas(args, n):
    alphas = args.alpha or []
    if len(alphas) == 1 and n == 2:
        alphas = alphas * 2
    if len(alphas) != n:
        raise UsageError(f"expected {n} --alpha value(s), got {len(alphas)}")
    return alphas


def _z_points(args, default=(complex(1.0, 0.0),)):
    if not args.z:
        return list(default)
    return [io.parse_complex(z) for z in args.z]


def _grid(args, default=None):
    if args.grid is None:
        return default
    return io.grid_from_spec(args.grid)


def _report_from(report):
    return report.to_dict()


def _density_csv(path, grid, density):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tau", "re_u", "im_u"])
        for t in np.asarray(grid, dtype=float):
            u = complex(density(float(t)))
            writer.writerow([float(t), u.real, u.imag])


@_command("eval")
def _cmd_eval(args):
    """Transform values of each measure at each z."""
    mus = _measures(args)
    if not mus:
        raise UsageError("eval needs at least one --measure")
    alphas = _alphas(args, len(mus))
    rows = []
    for mu, alpha in zip(mus, alphas):
        for z in _z_points(args):
            if mu.domain == ms.LINE:
                val = tr.cauchy_eval(mu, alpha, z)
            else:
                val = tr.stieltjes_eval(mu, alpha, z)
            rows.append({"alpha": alpha, "z": z, "value": val})
    return True, {"values": rows}, None


@_command("norm")
def _cmd_norm(args):
    """Weighted norms of each measure at index --alpha."""
    mus = _measures(args)
    if not mus:
        raise UsageError("norm needs at least one --measure")
    alphas = _alphas(args, len(mus))
    rows = [{"alpha": a, "norm": ms.norm_beta(mu, a)}
            for mu, a in zip(mus, alphas)]
    return True, {"norms": rows}, None


@_command("convolve")
def _cmd_convolve(args):
    """Half-line convolution measure; CSV gets the tabulated density."""
    mu1, mu2 = _measures(args, 2)
    a1, a2 = _alphas(args, 2)
    grid = _grid(args)
    res = sc.convolve(mu1, a1, mu2, a2, grid=grid)
    out = {
        "order": res.alpha,
        "atoms": [{"location": a.location, "weight": a.weight}
                  for a in res.measure.atoms],
        "grid_points": int(res.grid.size),
    }
    csv_fn = None
    if res.grid.size:
        csv_fn = lambda path: _density_csv(path, res.grid, res.density)
    return True, out, csv_fn


@_command("verify-product")
def _cmd_verify_product(args):
    mu1, mu2 = _measures(args, 2)
    a1, a2 = _alphas(args, 2)
    rep = sc.verify_product(mu1, a1, mu2, a2, _z_points(args),
                            tolerance=args.tol or 1e-6)
    return rep.passed, _report_from(rep), None


@_command("verify-inequalities")
def _cmd_verify_inequalities(args):
    mu1, mu2 = _measures(args, 2)
    a1, a2 = _alphas(args, 2)
    beta1 = args.beta[0] if args.beta else None
    beta2 = args.beta[1] if args.beta and len(args.beta) > 1 else None
    rep = sc.verify_inequality_suite(mu1, a1, mu2, a2, beta1=beta1,
                                     beta2=beta2,
                                     tolerance=args.tol or 1e-9)
    return rep.passed, _report_from(rep), None


def _single_density(mu):
    if len(mu.pieces) != 1 or mu.atoms:
        raise UsageError("this command needs a purely one-piece density measure")
    return hb.from_piece(mu.pieces[0])


@_command("hilbert")
def _cmd_hilbert(args):
    """Hilbert transform of a density measure on a grid."""
    (mu,) = _measures(args, 1)
    f = _single_density(mu)
    grid = _grid(args)
    if grid is None:
        raise UsageError("hilbert needs --grid")
    vals = [{"tau": float(t), "h": hb.hilbert_pv(f, float(t))} for t in grid]
    csv_fn = lambda path: _density_csv(
        path, grid, lambda t: complex(hb.hilbert_pv(f, t)))
    return True, {"values": vals}, csv_fn


@_command("tricomi")
def _cmd_tricomi(args):
    mu1, mu2 = _measures(args, 2)
    f1, f2 = _single_density(mu1), _single_density(mu2)
    grid = _grid(args)
    if grid is None:
        raise UsageError("tricomi needs --grid (interior evaluation points)")
    tol = args.tol or 1e-5
    residuals = hb.tricomi_residual(f1, f2, [float(t) for t in grid])
    worst = max(residuals)
    return worst <= tol, {"residuals": residuals, "max_residual": worst,
                          "tolerance": tol}, None


@_command("plemelj")
def _cmd_plemelj(args):
    """Boundary-value check at real points taken from --z (real parts)."""
    (mu,) = _measures(args, 1)
    f = _single_density(mu)
    tol = args.tol or 1e-5
    rows, worst = [], 0.0
    for z in _z_points(args):
        t = float(z.real)
        upper, lower, diag = hb.plemelj_boundary(f, t)
        href = hb.hilbert_pv(f, t)
        fval = f.scalar(t)
        res = max(abs(upper - (1j * fval + href)),
                  abs(lower - (-1j * fval + href)))
        worst = max(worst, res)
        rows.append({"t": t, "upper": upper, "lower": lower,
                     "expected_h": href, "residual": res})
    return worst <= tol, {"points": rows, "max_residual": worst,
                          "tolerance": tol}, None


@_command("phi-beta")
def _cmd_phi_beta(args):
    """Kernel density table plus the defining identity residual."""
    if not args.beta:
        raise UsageError("phi-beta needs --beta")
    beta = args.beta[0]
    tol = args.tol or 1e-6
    grid = _grid(args, default=np.geomspace(0.1, 10.0, 25))
    table = [{"t": float(t), "phi": rp.phi_beta(beta, float(t))} for t in grid]
    worst, rows = 0.0, []
    for z in _z_points(args):
        s = float(z.real)
        lhs = qd.integrate(lambda t: rp.phi_beta(beta, t) * (s + t) ** -beta,
                           (0.0, math.inf), None, [(0.0, beta)])
        rhs = 1.0 / (s ** beta + 1.0)
        res = abs(lhs - rhs)
        worst = max(worst, res)
        rows.append({"s": s, "lhs": lhs, "rhs": rhs, "residual": res})
    csv_fn = lambda path: _density_csv(
        path, grid, lambda t: complex(rp.phi_beta(beta, t)))
    return worst <= tol, {"table": table, "identity": rows,
                          "max_residual": worst, "tolerance": tol}, csv_fn


@_command("rescale-beta")
def _cmd_rescale_beta(args):
    """Order-beta representation of s -> f(s^beta) with identity residual."""
    if not args.beta:
        raise UsageError("rescale-beta needs --beta")
    beta = args.beta[0]
    (mu,) = _measures(args, 1)
    tol = args.tol or 1e-8
    rep = rp.StieltjesRepresentation(order=1.0, constant=0.0, pole_mass=0.0,
                                     measure=mu)
    grid = _grid(args, default=np.geomspace(1e-3, 1e3, 61))
    lifted = rp.rescale_beta(rep, beta, grid)
    worst, rows = 0.0, []
    for z in _z_points(args):
        s = float(z.real)
        lhs = complex(lifted.eval(s))
        rhs = complex(rep.eval(s ** beta))
        res = abs(lhs - rhs)
        worst = max(worst, res)
        rows.append({"s": s, "lifted": lhs, "direct": rhs, "residual": res})
    psi = lifted.details["density_fn"]
    csv_fn = lambda path: _density_csv(path, grid, lambda r: complex(psi(r)))
    return worst <= tol, {"identity": rows, "max_residual": worst,
                          "tolerance": tol}, csv_fn


@_command("sokal-check")
def _cmd_sokal_check(args):
    """Derivative-sign screen for order-alpha representability."""
    (mu,) = _measures(args, 1)
    (alpha,) = _alphas(args, 1)
    grid = _grid(args, default=np.array([0.5, 1.0, 2.0]))
    rep = rp.StieltjesRepresentation(order=alpha, constant=0.0, pole_mass=0.0,
                                     measure=mu)
    report = rp.sokal_condition_check(rep.as_function(), alpha, n_max=2,
                                      k_max=2, s_grid=grid)
    return report.passed, _report_from(report), None


@_command("cauchy-product")
def _cmd_cauchy_product(args):
    """Line-measure product; falls back to the general regime."""
    mu1, mu2 = _measures(args, 2)
    a1, a2 = _alphas(args, 2)
    grid = _grid(args)
    try:
        res = cy.cauchy_convolve(mu1, a1, mu2, a2, grid=grid)
    except ValueError:
        res = cy.cauchy_convolve_general(mu1, a1, mu2, a2, grid=grid)
    rep = res.verify(_z_points(args, default=(1j, 2j)),
                     tolerance=args.tol or 1e-6)
    out = {"regime": res.regime, "report": _report_from(rep)}
    csv_fn = None
    if res.grid.size:
        csv_fn = lambda path: _density_csv(path, res.grid, res.density_fn)
    return rep.passed, out, csv_fn


@_command("j-functional")
def _cmd_j_functional(args):
    mu1, mu2 = _measures(args, 2)
    a1, a2 = _alphas(args, 2)
    val = cy.j_functional(mu1, a1, mu2, a2)
    return True, {"value": "inf" if math.isinf(val) else val}, None


def _verdict_result(verdict, args):
    ok = True
    if args.expect is not None:
        ok = verdict.exists_positive == args.expect
    diag = {k: v for k, v in verdict.diagnostic.items()
            if not callable(v)}
    return ok, {"verdict": verdict.exists_positive, "diagnostic": diag}


@_command("positivity-11")
def _cmd_positivity(args):
    mu1, mu2 = _measures(args, 2)
    verdict = cy.positivity_check_11(mu1, mu2, a=args.split)
    ok, out = _verdict_result(verdict, args)
    return ok, out, None


@_command("criterion-g11")
def _cmd_criterion(args):
    mu1, mu2 = _measures(args, 2)
    (alpha,) = _alphas(args, 1)
    verdict = cy.criterion_g11(mu1, mu2, alpha, a=args.split or 1.0)
    ok, out = _verdict_result(verdict, args)
    return ok, out, None


@_command("kac-check")
def _cmd_kac(args):
    (mu,) = _measures(args, 1)
    (alpha,) = _alphas(args, 1)
    rep = cy.kac_check((mu, alpha), tolerance=args.tol or 1e-9)
    return rep.passed, _report_from(rep), None


@_command("lift")
def _cmd_lift(args):
    """Order lifting: fractional with --beta, else the 1 -> 2 witness."""
    (mu,) = _measures(args, 1)
    if args.beta:
        (alpha,) = _alphas(args, 1)
        rep = cy.verify_lift(mu, alpha, args.beta[0], _z_points(
            args, default=(1j, 2j)), tolerance=args.tol or 1e-6)
        return rep.passed, _report_from(rep), None
    result = cy.lift_1_to_2(mu)
    ok = True
    if args.expect is not None:
        ok = result.exists_positive == args.expect
    out = {"verdict": result.exists_positive}
    if result.exists_positive == "yes":
        out["witness"] = io.measure_to_dict(result.witness)
    return ok, out, None


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="stieltjes",
        description="Generalized Stieltjes/Cauchy transform toolkit")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--alpha", type=float, action="append",
                        help="transform order (repeatable)")
    parser.add_argument("--beta", type=float, action="append",
                        help="secondary order / norm index (repeatable)")
    parser.add_argument("--measure", action="append", metavar="FILE",
                        help="measure JSON document (repeatable)")
    parser.add_argument("--z", action="append", metavar="RE,IM",
                        help="evaluation point (repeatable)")
    parser.add_argument("--grid", metavar="SPEC",
                        help='grid JSON: {"kind","from","to","n"}')
    parser.add_argument("--tol", type=float, help="residual tolerance")
    parser.add_argument("--split", type=float, default=0.0,
                        help="support separation point")
    parser.add_argument("--expect", choices=("yes", "no"),
                        help="fail (exit 1) unless the verdict matches")
    parser.add_argument("--out", metavar="FILE", help="write report JSON here")
    parser.add_argument("--csv", metavar="FILE", help="write density CSV here")
    return parser


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    t0 = time.time()
    try:
        passed, results, csv_fn = _COMMANDS[args.command](args)
    except (UsageError, io.DocumentError, OSError) as exc:
        print(json.dumps({"command": args.command, "error": str(exc)}))
        return 2
    except qd.ConvergenceError as exc:
        print(json.dumps({"command": args.command,
                          "error": f"non-convergence: {exc}"}))
        return 3
    except ValueError as exc:
        print(json.dumps({"command": args.command, "error": str(exc)}))
        return 2
    doc = {
        "command": args.command,
        "inputs": {
            "alpha": args.alpha, "beta": args.beta,
            "measure": args.measure, "z": args.z,
            "grid": args.grid, "tol": args.tol, "split": args.split,
            "expect": args.expect,
        },
        "results": results,
        "pass": bool(passed),
        "timing_seconds": round(time.time() - t0, 6),
    }
    from .report import _jsonable
    text = json.dumps(_jsonable(doc), indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.csv and csv_fn is not None:
        csv_fn(args.csv)
    return 0 if passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
