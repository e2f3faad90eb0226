"""Command-line front end.

Structured results are written to stdout as JSON (key order fixed, no
timestamps), energy curves as CSV.  Exit codes: 0 success, 2 usage or
domain error, 3 numeric failure.  ``CBIHARMONIC_TOL`` overrides the default
floating-point tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from . import classification as cls
from . import conformal as cf
from . import hypersurfaces as hs
from . import stability as st
from .exact import Surd, is_exact
from .polynomial import RootInterval

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class NumericFailure(ArithmeticError):
    """A verification suite ran but a check did not pass."""


def default_tol() -> float:
    raw = os.environ.get("CBIHARMONIC_TOL")
    if raw is None:
        return hs.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ValueError(f"CBIHARMONIC_TOL must be a number, got {raw!r}") from None
    if not tol > 0:
        raise ValueError("CBIHARMONIC_TOL must be positive")
    return tol


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def fmt_decimal(x) -> str:
    return f"{float(x):.15g}"


def fmt_number(x):
    """Rationals as ``{"exact": "p/q", "decimal": ...}``; floats as decimals."""
    if isinstance(x, Surd):
        if x.exact:
            r = x.rational()
            if r is not None:
                return fmt_number(r)
            return {"exact": f"{x.coeff}*sqrt({x.radicand})", "decimal": fmt_decimal(x)}
        return fmt_decimal(x)
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if is_exact(x):
        x = Fraction(x)
        return {"exact": f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator),
                "decimal": fmt_decimal(x)}
    return fmt_decimal(x)


def fmt_root(root: RootInterval):
    if root.exact_root:
        return {"kind": "exact", **fmt_number(root.lo)}
    return {
        "kind": "isolated",
        "decimal": fmt_decimal(root.midpoint),
        "midpoint": fmt_number(root.midpoint)["exact"],
        "error_bound": f"{float(root.error_bound()):.3e}",
        "lo": fmt_number(root.lo)["exact"],
        "hi": fmt_number(root.hi)["exact"],
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Fraction, Surd)):
        return fmt_number(obj)
    if isinstance(obj, RootInterval):
        return fmt_root(obj)
    if isinstance(obj, (np.floating, float)):
        return fmt_decimal(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def document(command, params, results, mode, tolerances):
    return {
        "command": command,
        "parameters": params,
        "mode": mode,
        "tolerances": tolerances,
        "version": __version__,
        "results": results,
    }


def emit(doc, out):
    json.dump(_jsonable(doc), out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def number(text: str):
    """``p/q`` or integer literals become exact Fractions; decimals stay float."""
    try:
        if any(c in text for c in ".eE") and "/" not in text:
            return float(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _square(x):
    return x * x


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _solution_row(s: cls.Solution):
    return {
        "family": s.family,
        **s.params,
        "variable": s.variable,
        "root": s.root,
        "geodesic": s.geodesic,
        "residual": f"{s.residual:.3e}",
        "residual_bound": f"{s.residual_bound:.3e}",
    }


def _certificates(res):
    out = []
    for c in res.certificates:
        c = dict(c)
        if "polynomial" in c:
            c["polynomial"] = list(c["polynomial"])
        if "hits" in c:
            c["hits"] = [list(h) for h in c["hits"]]
        out.append(c)
    return out


def cmd_classify(args):
    if args.target == "hypersphere":
        res = cls.classify_hyperspheres(args.m_max)
        params = {"m_max": args.m_max}
    elif args.target == "clifford":
        if args.m1 is not None or args.m2 is not None:
            if args.m1 is None or args.m2 is None:
                raise ValueError("--m1 and --m2 must be given together")
            res = cls.classify_clifford(pairs=[(args.m1, args.m2)], equal_radius_cap=0)
            params = {"m1": args.m1, "m2": args.m2}
        else:
            if args.m_max is None or args.m_max < 2:
                raise ValueError("give --m1/--m2 or --m-max >= 2")
            res = cls.classify_clifford(args.m_max, equal_radius_cap=args.equal_radius_cap)
            params = {"m_max": args.m_max, "equal_radius_cap": args.equal_radius_cap}
    else:
        if (args.m is None) == (args.m_max is None):
            raise ValueError("give exactly one of --m or --m-max")
        ms = [args.m] if args.m is not None else list(range(2, args.m_max + 1))
        ks = None if args.k is None else [args.k]
        if ks is not None and any(not 0 <= args.k <= m - 1 for m in ms):
            raise ValueError("--k must lie in [0, m-1]")
        res = cls.classify_hyperbolic(args.family, ms, ks)
        params = {"family": args.family, "m": ms, "k": args.k}
    results = {
        "family": res.family,
        "solutions": [_solution_row(s) for s in res.solutions],
        "certificates": _certificates(res),
    }
    return document(["classify", args.target], params, results, "exact", {"root_width": "2^-40", "residual": 1e-10})


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


def _entry(e: st.LevelEntry):
    row = {"stream": e.stream, "level": e.level, "laplace_eigenvalue": e.laplace_eigenvalue,
           "multiplicity": e.multiplicity, "negative": e.negative, "zero": e.zero}
    v = e.values[0]
    if isinstance(v, st.BlockSpectrum):
        if v.b is None:
            row["s0"] = v.a
        else:
            row.update({"a": v.a, "b": v.b, "d_sq": v.d_sq, "trace": v.trace, "det": v.det})
    else:
        row["eigenvalue"] = v
    return row


def report_dict(rep: st.IndexNullityReport):
    trunc = dict(rep.truncation)
    trunc["polynomials"] = {k: list(v) for k, v in trunc["polynomials"].items()}
    return {
        "m": rep.m,
        "r_sq": rep.r_sq,
        "index": rep.index,
        "nullity": rep.nullity,
        "variational": rep.variational,
        "operator": "J2c" if rep.conformal else "J2",
        "truncation": trunc,
        "breakdown": [_entry(e) for e in rep.breakdown],
    }


def cmd_stability(args):
    if args.target == "equator":
        rep = st.index_nullity_equator(args.m)
        params = {"m": args.m}
    else:
        r2 = Fraction(args.r2)
        rep = st.index_nullity_hypersphere(args.m, r2, conformal=not args.j2)
        params = {"m": args.m, "r2": r2}
        if not rep.variational:
            print(f"warning: S^{args.m}(r), r^2={r2}, is not c-biharmonic; report is exploratory",
                  file=sys.stderr)
    return document(["stability", args.target], params, report_dict(rep), "exact", {})


# ---------------------------------------------------------------------------
# energy curve
# ---------------------------------------------------------------------------


def cmd_energy_curve(args, out):
    if args.samples < 2:
        raise ValueError("--samples must be >= 2")
    t = np.linspace(-1.0, 1.0, args.samples)
    h, h_c = hs.energy_curve(args.m, t)
    crit = [0.0]
    t_sq = hs.energy_curve_critical_t_sq(args.m)
    if t_sq is not None:
        crit += [-math.sqrt(t_sq), math.sqrt(t_sq)]
    half_step = 1.0 / (args.samples - 1)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "h", "h_c", "critical"])
    for ti, hi, hci in zip(t, h, h_c):
        is_crit = any(abs(ti - c) < half_step for c in crit)
        w.writerow([fmt_decimal(ti), fmt_decimal(hi), fmt_decimal(hci), int(is_crit)])


# ---------------------------------------------------------------------------
# residual
# ---------------------------------------------------------------------------


def _r_sq(args, name="r", name_sq="r2"):
    r, r2 = getattr(args, name), getattr(args, name_sq)
    if (r is None) == (r2 is None):
        raise ValueError(f"give exactly one of --{name} or --{name_sq}")
    return _square(r) if r is not None else r2


def build_family(args) -> hs.HypersurfaceFamily:
    f = args.family
    if f == "hypersphere":
        return hs.SphereInSphere(args.m, _r_sq(args))
    if f == "clifford":
        if (args.r1 is None) == (args.t is None):
            raise ValueError("give exactly one of --r1 or --t")
        return hs.CliffordTorus(args.m1, args.m2, _square(args.r1) if args.r1 is not None else args.t)
    if f == "equidistant":
        return hs.HypEquidistant(args.m, _r_sq(args))
    if f == "horosphere":
        return hs.Horosphere(args.m, args.a)
    if f == "geodesic-sphere":
        return hs.HypGeodesicSphere(args.m, _r_sq(args))
    if f == "product":
        return hs.HypProduct(args.m, args.k, _r_sq(args))
    if f == "euclidean-hyperplane":
        return hs.EuclideanHyperplane(args.m)
    if f == "euclidean-sphere":
        return hs.EuclideanSphere(args.m, _r_sq(args))
    if f == "euclidean-cylinder":
        return hs.EuclideanCylinder(args.m, args.k, _r_sq(args))
    raise ValueError(f"unknown family {f!r}")  # pragma: no cover


def cmd_residual(args, tol):
    fam = build_family(args)
    rep = hs.residual(fam, tol)
    cmc = hs.cmc_residual(fam.geometric_data())
    results = {
        "family": args.family,
        "tension_coeff": rep.tension_coeff,
        "bitension_coeff": rep.bitension_coeff,
        "c_bitension_coeff": rep.c_bitension_coeff,
        "cmc_residual": cmc,
        "is_c_biharmonic": rep.is_c_biharmonic,
    }
    params = {k: v for k, v in vars(args).items() if k not in ("command", "func") and v is not None}
    return document(["residual", args.family], params, results, "exact" if rep.exact else "float",
                    {"zero_test": rep.tolerance})


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def verify_conformal(m: int):
    q = m - 1
    rows = []
    for c in cf.preset_suite(q):
        e0, e1, dev = cf.conformal_invariance_check(c.domain, c.phi, c.rho)
        rows.append({"config": c.name, "E_original": e0, "E_conformal": e1, "relative_deviation": f"{dev:.3e}",
                     "_dev": dev})
    devs = [r.pop("_dev") for r in rows]
    if m == 4:
        passed = max(devs) < 1e-8
        criterion = "max deviation < 1e-8"
    else:
        passed = min(devs) > 1e-3
        criterion = "min deviation > 1e-3 (no invariance off dimension 4)"
    return {"configs": rows, "criterion": criterion, "passed": passed}


def verify_ode():
    checks = []
    zs = np.linspace(0.2, 2.0, 10)
    for name in ("id", "sin", "sinh"):
        b = cf.PROFILES[name]
        checks.append({"check": f"eq-beta residual, beta={name}",
                       "value": float(np.max(np.abs(cf.beta_residual(b, zs)))), "threshold": 1e-10})
    sol = cf.integrate_eq_beta([1.0, 0.3, -0.2], (0.0, 2.0))
    y = sol.sol(np.linspace(0.0, 2.0, 200))
    fi = y[0] ** 2 * (1 - y[1] ** 2 + y[0] * y[2])
    checks.append({"check": "first integral drift", "value": float(np.ptp(fi)), "threshold": 1e-8})
    for beta, domain, z0, span in (
        ("sin", "sphere", 2 * math.atan(2 * math.tan(0.5)), (1e-3, math.pi - 1e-3)),
        ("id", "euclidean", 0.5, (1e-3, 2.0)),
        ("sinh", "sphere", 2 * math.atanh(0.5 * math.tan(0.5)), (1e-3, 2.0)),
    ):
        phi = cf.solve_conformal_profile(cf.PROFILES[beta], domain, z0, 1.0, span)
        r = np.linspace(span[0], span[1], 200)
        alpha = cf.PROFILES["sin" if domain == "sphere" else "id"]
        checks.append({"check": f"conformality zeta' alpha = beta, beta={beta}, {domain}",
                       "value": float(np.max(np.abs(phi.conformality_defect(alpha, r)))), "threshold": 1e-8})
    for c in checks:
        c["passed"] = c["value"] < c["threshold"]
    return {"checks": checks, "passed": all(c["passed"] for c in checks)}


def verify_crosscheck(m: int):
    q = m - 1
    rng = np.random.default_rng(0)
    r = rng.uniform(0.05, math.pi - 0.05, 200)
    wp = cf.WarpedProfile(cf.PROFILES["sin"], q, (0.0, math.pi))
    rho = cf.Profile("0.2 sin r", lambda x: 0.2 * np.sin(x), lambda x: 0.2 * np.cos(x), lambda x: -0.2 * np.sin(x))
    a, b = cf.conformal_scal_crosscheck(wp, rho, r)
    (fr, ff), (pr, pf) = cf.conformal_ric_crosscheck(wp, rho, r)
    checks = [
        {"check": "Scal conformal change", "value": float(np.max(np.abs(a - b)))},
        {"check": "Ric radial conformal change", "value": float(np.max(np.abs(fr - pr)))},
        {"check": "Ric fiber conformal change", "value": float(np.max(np.abs(ff - pf)))},
    ]
    for c in checks:
        c["threshold"] = 1e-9
        c["passed"] = c["value"] < 1e-9
    return {"checks": checks, "passed": all(c["passed"] for c in checks)}


def cmd_verify(args):
    if args.suite == "conformal":
        res = verify_conformal(args.m)
    elif args.suite == "ode":
        res = verify_ode()
    else:
        res = verify_crosscheck(args.m)
    doc = document(["verify", args.suite], {"m": args.m}, res, "float", {})
    return doc, res["passed"]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cbiharmonic", description="Conformal biharmonic hypersurfaces.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify c-biharmonic members of a family")
    csub = c.add_subparsers(dest="target", required=True)
    h = csub.add_parser("hypersphere")
    h.add_argument("--m-max", type=positive_int, required=True)
    cl = csub.add_parser("clifford")
    cl.add_argument("--m1", type=positive_int)
    cl.add_argument("--m2", type=positive_int)
    cl.add_argument("--m-max", type=positive_int)
    cl.add_argument("--equal-radius-cap", type=positive_int, default=30)
    hy = csub.add_parser("hyperbolic")
    hy.add_argument("--family", choices=cls.HYPERBOLIC_FAMILIES, required=True)
    hy.add_argument("--m", type=positive_int)
    hy.add_argument("--m-max", type=positive_int)
    hy.add_argument("--k", type=int)

    s = sub.add_parser("stability", help="index and nullity of c-biharmonic hyperspheres")
    ssub = s.add_subparsers(dest="target", required=True)
    eq = ssub.add_parser("equator")
    eq.add_argument("--m", type=positive_int, required=True)
    hsp = ssub.add_parser("hypersphere")
    hsp.add_argument("--m", type=positive_int, required=True)
    hsp.add_argument("--r2", type=number, required=True, help="r^2 as p/q")
    hsp.add_argument("--j2", action="store_true", help="use J_2 instead of J_2^c")

    e = sub.add_parser("energy-curve", help="CSV of h_m and h_m^c on [-1, 1]")
    e.add_argument("--m", type=positive_int, required=True)
    e.add_argument("--samples", type=positive_int, default=101)

    r = sub.add_parser("residual", help="tau, tau_2, tau_2^c coefficients of one hypersurface")
    r.add_argument("family", choices=["hypersphere", "clifford", "equidistant", "horosphere", "geodesic-sphere",
                                      "product", "euclidean-hyperplane", "euclidean-sphere", "euclidean-cylinder"])
    r.add_argument("--m", type=positive_int)
    r.add_argument("--m1", type=positive_int)
    r.add_argument("--m2", type=positive_int)
    r.add_argument("--k", type=int)
    for name in ("r", "r2", "r1", "t", "a"):
        r.add_argument(f"--{name}", type=number)

    v = sub.add_parser("verify", help="numerical verification suites")
    v.add_argument("suite", choices=["conformal", "ode", "crosscheck"])
    v.add_argument("--m", type=positive_int, default=4)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = default_tol()
        if args.command == "classify":
            emit(cmd_classify(args), out)
        elif args.command == "stability":
            emit(cmd_stability(args), out)
        elif args.command == "energy-curve":
            cmd_energy_curve(args, out)
        elif args.command == "residual":
            if args.family != "clifford" and args.m is None:
                raise ValueError("--m is required")
            emit(cmd_residual(args, tol), out)
        else:
            doc, passed = cmd_verify(args)
            emit(doc, out)
            if not passed:
                raise NumericFailure(f"verify {args.suite} failed")
    except (ArithmeticError, cf.IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main_entry():  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
