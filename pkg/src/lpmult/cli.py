"""
Command-line driver.

Usage:
    lpmult cos-bound --lambda 8,16,32,64,128 --p 1.3333 --trunc 512 --out r.json
    lpmult dim4-bound --k 2,4,8,16 --p 1.3333 --out d.json
    lpmult omega-norm --lambda 8,16,32 -o o.json
    lpmult fk --k 2,4,8,16,32
    lpmult gamma --n 4 --alpha 1 --j 8,16,32,64
    lpmult testfn --p 1.3333 --j 2
    lpmult bessel-sums --a 2 --lambda 8,16,32
    lpmult sweep --lambda 16 --p 1.05,1.1,1.2

Every run writes a JSON report and a CSV table next to it (same stem).
Reports contain no timestamps, so identical invocations give identical bytes.
Exit status is 0 iff every result met its tolerance, 2 for usage or
validation errors, 3 for I/O errors and 1 for failed tolerances.
"""

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .bounds import (bessel_weighted_sum, conjugate, cos_bound, dim4_bound, fit_exponent,
                     omega_l2)
from .errors import DomainError
from .fkernel import L1_TARGET, fk_l1, u_evendim_sup
from .gammaconst import gamma_asymptotic_limit, gamma_asymptotic_ratio, gamma_const
from .symbols import SMOOTHING_ID, make_symbol
from .testfn import EPSILON_GRID, TestFnParams, lowercomp_norms

__all__ = ["main", "build_parser", "run_experiment", "format_json", "SUBCOMMANDS"]

SUBCOMMANDS = ("gamma", "fk", "testfn", "cos-bound", "dim4-bound", "omega-norm", "bessel-sums", "sweep")


class ValidationError(Exception):
    def __init__(self, field, message):
        super().__init__(f"--{field}: {message}")
        self.field = field


# -- serialization ------------------------------------------------------------------

def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def format_json(obj, indent=0):
    """JSON text with every float printed to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_, int, float, np.integer, np.floating)):
        return _num(obj)
    if isinstance(obj, complex):
        return format_json({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {format_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + format_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_text(results):
    columns = ["param", "value"]
    for r in results:
        for key in r["components"]:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in results:
        row = [r["param"], r["value"]] + [r["components"].get(c) for c in columns[2:]]
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, complex):
        return _num(abs(v))
    if isinstance(v, (int, float, np.integer, np.floating, bool, np.bool_)):
        out = _num(v)
        return "" if out == "null" else out
    return str(v)


# -- argument handling ------------------------------------------------------------------

def _float_list(field, text):
    try:
        vals = [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ValidationError(field, f"expected a comma-separated list of numbers, got {text!r}")
    if not vals:
        raise ValidationError(field, "empty list")
    if any(not math.isfinite(v) for v in vals):
        raise ValidationError(field, "values must be finite")
    return vals


def _int_list(field, text):
    vals = _float_list(field, text)
    if any(v != int(v) for v in vals):
        raise ValidationError(field, f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _p_list(text):
    ps = _float_list("p", text)
    for p in ps:
        if not 1.0 < p <= 2.0:
            raise ValidationError("p", f"p must lie in (1, 2], got {p}")
    return ps


_CONFIG_ALIASES = {"lambda": "lam", "J": "trunc", "l": "lam"}


def _read_config(path):
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read config file {path}: {exc}")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError("config", f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        out[_CONFIG_ALIASES.get(key, key)] = value
    return out


def build_parser():
    parser = argparse.ArgumentParser(prog="lpmult", description="Numerical checks for unimodular Fourier multipliers.")
    parser.add_argument("--version", action="version", version=f"lpmult {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def common(p):
        p.add_argument("--config", help="plain key=value file merged beneath the flags")
        p.add_argument("--out", "-o", help="JSON report path (CSV written next to it)")
        p.add_argument("--tol", type=float, help="tolerance used for tolerancesMet")
        return p

    g = common(sub.add_parser("gamma", help="gamma constants, symmetry and asymptotics"))
    g.add_argument("--n", default="2,4")
    g.add_argument("--j", default="8,16,32,64,128,256,512")
    g.add_argument("--alpha", default="1")

    f = common(sub.add_parser("fk", help="F_k L1 identity, core mass and sup |u^(k)|"))
    f.add_argument("--k", default="2,4,8,16,32")
    f.add_argument("--resolution", default="33", help="radii grid size for the sup search")

    t = common(sub.add_parser("testfn", help="near-extremizer norms over an epsilon grid"))
    t.add_argument("--n", default="2")
    t.add_argument("--p", default="1.3333333333333333")
    t.add_argument("--j", default="2")
    t.add_argument("--epsilon", default=",".join(str(e) for e in EPSILON_GRID))

    c = common(sub.add_parser("cos-bound", help="lower bound for the cos symbol"))
    c.add_argument("--lambda", "-l", dest="lam", default="8,16,32,64,128")
    c.add_argument("--p", default="1.3333333333333333")
    c.add_argument("--trunc", "-J", default=None)

    d = common(sub.add_parser("dim4-bound", help="lower bound for the tensor-power symbol on S^3"))
    d.add_argument("--k", default="2,4,8,16")
    d.add_argument("--p", default="1.3333333333333333")
    d.add_argument("--trunc", "-J", default=None, help="truncation degree (default 8k + 32 per k)")
    d.add_argument("--delta", default=None, help="also pair the smoothed symbol with this delta")
    d.add_argument("--resolution", default=None, help="sphere rule resolution (default max(64, 2J))")

    o = common(sub.add_parser("omega-norm", help="L2 norm of the kernel coefficients for the cos symbol"))
    o.add_argument("--lambda", "-l", dest="lam", default="8,16,32,64,128")
    o.add_argument("--trunc", "-J", default=None)

    b = common(sub.add_parser("bessel-sums", help="weighted even-order Bessel sums"))
    b.add_argument("--a", default="2")
    b.add_argument("--lambda", "-l", dest="lam", default="8,16,32,64,128")
    b.add_argument("--trunc", "-J", default=None)

    s = common(sub.add_parser("sweep", help="strong bound / (q - 1) over p for the cos symbol"))
    s.add_argument("--lambda", "-l", dest="lam", default="16")
    s.add_argument("--p", default="1.05,1.1,1.2")
    s.add_argument("--trunc", "-J", default=None)
    return parser


def _trunc_for(field_value, lam):
    need = int(math.ceil(2 * lam + 40))
    if field_value is None:
        return need
    J = _int_list("trunc", field_value)[0]
    if J < need:
        raise ValidationError("trunc", f"J = {J} is below 2 lambda + 40 = {need} for lambda = {lam}")
    return J


def _result(op, param, value, components, ok, tol):
    return {"param": param, "operation": op, "tolerance": tol, "components": components,
            "value": value, "tolerancesMet": bool(ok)}


# -- experiments ----------------------------------------------------------------------

def _run_gamma(a):
    tol = a.tol if a.tol is not None else 1e-10
    ns = _int_list("n", a.n)
    js = _int_list("j", a.j)
    alphas = _float_list("alpha", a.alpha)
    results = []
    for n in ns:
        if n < 2:
            raise ValidationError("n", "n must be >= 2")
        for alpha in alphas:
            if not 0 <= alpha <= n:
                raise ValidationError("alpha", f"alpha must lie in [0, n] for n = {n}")
            for j in js:
                if j < 1:
                    raise ValidationError("j", "j must be >= 1")
                val = gamma_const(n, j, alpha)
                sym = abs(val * gamma_const(n, j, n - alpha) - 1.0)
                ratio = gamma_asymptotic_ratio(n, j, alpha)
                comps = {"n": n, "j": j, "alpha": alpha, "symmetryResidual": sym,
                         "asymptoticRatio": ratio, "asymptoticLimit": gamma_asymptotic_limit(n, alpha)}
                results.append(_result("gamma_const", j, val, comps, sym <= tol, tol))
    fit = None
    if len(ns) == 1 and len(alphas) == 1 and len(js) >= 3:
        fit = fit_exponent([(r["param"], r["value"]) for r in results])
    return results, fit, {"n": ns, "j": js, "alpha": alphas, "tol": tol}


def _run_fk(a):
    tol = a.tol if a.tol is not None else 1e-6
    ks = _int_list("k", a.k)
    grid = _int_list("resolution", a.resolution)[0]
    if any(k < 1 for k in ks):
        raise ValidationError("k", "k must be positive")
    if grid < 3:
        raise ValidationError("resolution", "radii grid needs at least 3 points")
    results = []
    for k in ks:
        l1 = fk_l1(k)
        sup = u_evendim_sup(2, k, grid=grid)
        comps = {"l1": l1.value, "l1Error": l1.value - L1_TARGET, "R": l1.R, "coreMass": l1.core_mass,
                 "tailMass": l1.tail_mass, "uSupRadius1": sup.radii[0], "uSupRadius2": sup.radii[1]}
        results.append(_result("u_evendim_sup", k, sup.value, comps, abs(l1.value - L1_TARGET) <= tol, tol))
    fit = fit_exponent([(r["param"], r["value"]) for r in results]) if len(results) >= 3 else None
    return results, fit, {"k": ks, "resolution": grid, "tol": tol}


def _run_testfn(a):
    tol = a.tol if a.tol is not None else 1e-9
    n = _int_list("n", a.n)[0]
    p = _p_list(a.p)[0]
    j = _int_list("j", a.j)[0]
    eps = _float_list("epsilon", a.epsilon)
    results = []
    for e in sorted(eps, reverse=True):
        try:
            params = TestFnParams(n, p, e, j)
        except DomainError as exc:
            raise ValidationError("epsilon", str(exc))
        r = lowercomp_norms(params, tol=tol)
        comps = {"errP": r.err_p, "errQ": r.err_q, "normP": r.norm_p, "normQ": r.norm_q,
                 "mainP": r.main_p, "mainQ": r.main_q, "normQRatio": r.norm_q / r.main_q,
                 "residual": r.residual}
        results.append(_result("lowercomp_norms", e, r.norm_p / r.main_p, comps, r.converged, tol))
    return results, None, {"n": n, "p": p, "j": j, "epsilon": sorted(eps, reverse=True), "tol": tol}


def _bound_components(rep):
    comps = rep.components()
    for key in ("uInf", "uNormQClosed", "chainLhs", "chainRhs", "chainRatio", "tailMass",
                "innerProductSmoothed", "strongBoundSmoothed", "perturbationBound", "symbolL2Gap"):
        if key in rep.extras:
            v = rep.extras[key]
            comps[key] = abs(v) if isinstance(v, complex) else v
    return comps


def _run_cos(a):
    tol = a.tol if a.tol is not None else 1e-9
    lams = sorted(_float_list("lambda", a.lam))
    ps = _p_list(a.p)
    if any(l < 1 for l in lams):
        raise ValidationError("lambda", "lambda must be >= 1")
    Js = {lam: _trunc_for(a.trunc, lam) for lam in lams}
    results = []
    for p in ps:
        for lam in lams:
            rep = cos_bound(lam, p, Js[lam])
            ok = rep.extras["lastCoefficient"] <= 1e-15 and (p != 2.0 or rep.strong_bound <= 1.0 + tol)
            results.append(_result("cos_bound", lam, rep.strong_bound, _bound_components(rep), ok, tol))
    fit = None
    if len(ps) == 1 and len(lams) >= 3:
        fit = fit_exponent([(r["param"], r["value"]) for r in results])
    return results, fit, {"lambda": lams, "p": ps, "trunc": [Js[l] for l in lams], "tol": tol}


def _run_dim4(a):
    from .spherequad import make_rule
    tol = a.tol if a.tol is not None else 1e-9
    ks = _int_list("k", a.k)
    for k in ks:
        if k < 2 or k % 2:
            raise ValidationError("k", f"k must be even and >= 2, got {k}")
    ps = _p_list(a.p)
    delta = None
    if a.delta is not None:
        delta = _float_list("delta", a.delta)[0]
        if not 0 < delta < 0.5:
            raise ValidationError("delta", "delta must lie in (0, 2/n) = (0, 0.5)")
    Js = {}
    for k in ks:
        if a.trunc is None:
            Js[k] = 8 * k + 32
        else:
            J = _int_list("trunc", a.trunc)[0]
            if J < 2 * k + 16:
                raise ValidationError("trunc", f"J = {J} is below 2k + 16 = {2 * k + 16} for k = {k}")
            Js[k] = J
    res = None
    if a.resolution is not None:
        res = _int_list("resolution", a.resolution)[0]
        if res < 8:
            raise ValidationError("resolution", "resolution must be >= 8")
    results = []
    for p in ps:
        for k in sorted(ks):
            rule = make_rule(4, res, phi_nodes=8) if res is not None else None
            rep = dim4_bound(k, p, Js[k], rule=rule, delta=delta)
            ok = (p != 2.0 or rep.strong_bound <= 1.0 + tol) and rep.strong_bound >= 0
            results.append(_result("dim4_bound", k, rep.strong_bound, _bound_components(rep), ok, tol))
    fit = None
    if len(ps) == 1 and len(ks) >= 3:
        fit = fit_exponent([(r["param"], r["value"]) for r in results])
    return results, fit, {"k": sorted(ks), "p": ps, "trunc": [Js[k] for k in sorted(ks)], "delta": delta,
                          "resolution": res, "tol": tol}


def _run_omega(a):
    tol = a.tol if a.tol is not None else 1e-12
    lams = sorted(_float_list("lambda", a.lam))
    results = []
    for lam in lams:
        if lam < 0:
            raise ValidationError("lambda", "lambda must be nonnegative")
        J = _trunc_for(a.trunc, lam)
        val = omega_l2(make_symbol("cosPhase", 2, lam), lam, J)
        closed = lam / (2.0 * math.sqrt(math.pi))
        comps = {"trunc": J, "closedForm": closed}
        results.append(_result("omega_l2", lam, val, comps, abs(val - closed) <= tol * max(1.0, closed), tol))
    positive = [r for r in results if r["param"] > 0]
    fit = fit_exponent([(r["param"], r["value"]) for r in positive]) if len(positive) >= 3 else None
    return results, fit, {"lambda": lams, "trunc": [r["components"]["trunc"] for r in results], "tol": tol}


def _run_bessel(a):
    tol = a.tol if a.tol is not None else 1e-15
    exps = _float_list("a", a.a)
    lams = sorted(_float_list("lambda", a.lam))
    results = []
    for ex in exps:
        for lam in lams:
            if lam < 0:
                raise ValidationError("lambda", "lambda must be nonnegative")
            J = _trunc_for(a.trunc, lam)
            val = bessel_weighted_sum(ex, lam, J)
            comps = {"a": ex, "trunc": J, "ratio": val / lam ** ex if lam > 0 else None}
            results.append(_result("bessel_weighted_sum", lam, val, comps, True, tol))
    fit = None
    if len(exps) == 1 and len(lams) >= 3 and all(l > 0 for l in lams):
        fit = fit_exponent([(r["param"], r["value"]) for r in results])
    return results, fit, {"a": exps, "lambda": lams, "trunc": [_trunc_for(a.trunc, l) for l in lams],
                          "tol": tol}


def _run_sweep(a):
    tol = a.tol if a.tol is not None else 1e-9
    lams = sorted(_float_list("lambda", a.lam))
    ps = sorted(_p_list(a.p))
    if any(l < 1 for l in lams):
        raise ValidationError("lambda", "lambda must be >= 1")
    results = []
    for lam in lams:
        J = _trunc_for(a.trunc, lam)
        for p in ps:
            rep = cos_bound(lam, p, J)
            comps = _bound_components(rep)
            comps["lambda"] = lam
            q = conjugate(p)
            results.append(_result("cos_bound", p, rep.strong_bound / (q - 1.0), comps, True, tol))
    return results, None, {"lambda": lams, "p": ps, "trunc": [_trunc_for(a.trunc, l) for l in lams], "tol": tol}


_RUNNERS = {
    "gamma": _run_gamma,
    "fk": _run_fk,
    "testfn": _run_testfn,
    "cos-bound": _run_cos,
    "dim4-bound": _run_dim4,
    "omega-norm": _run_omega,
    "bessel-sums": _run_bessel,
    "sweep": _run_sweep,
}


def run_experiment(args):
    """Run one subcommand; returns the report dict (schema documented in the README)."""
    results, fit, config = _RUNNERS[args.subcommand](args)
    report = {
        "config": {"subcommand": args.subcommand, **config},
        "results": results,
        "samples": [[r["param"], r["value"]] for r in results],
        "fit": None if fit is None else {"slope": fit.slope, "intercept": fit.intercept,
                                         "maxResidual": fit.max_residual},
        "provenance": {
            "moduleVersions": {"lpmult": __version__, "numpy": np.__version__, "scipy": scipy.__version__},
            "smoothingChoice": SMOOTHING_ID,
        },
    }
    return report


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        defaults = _read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.subcommand]
        known = {a.dest for a in sub._actions}
        unknown = set(defaults) - known
        if unknown:
            raise ValidationError("config", f"unknown keys {sorted(unknown)}")
        # flags win: only fill values the user did not pass explicitly
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _parse(argv)
        report = run_experiment(args)
    except ValidationError as exc:
        print(f"lpmult: validation error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"lpmult: validation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lpmult: I/O error: {exc}", file=sys.stderr)
        return 3
    out = Path(args.out) if args.out else Path(f"{args.subcommand}.json")
    text = format_json(report) + "\n"
    try:
        out.write_text(text)
        out.with_suffix(".csv").write_text(_csv_text(report["results"]))
    except OSError as exc:
        print(f"lpmult: I/O error: {exc}", file=sys.stderr)
        return 3
    ok = all(r["tolerancesMet"] for r in report["results"])
    print(f"wrote {out} and {out.with_suffix('.csv')} ({len(report['results'])} results, "
          f"{'all tolerances met' if ok else 'some tolerances missed'})")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
