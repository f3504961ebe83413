"""Batch command line interface: JSON in, JSON out.

Subcommands: bound, solve, verify, volume, normality, subdivide-pd, algdeg.
All rationals cross the interface as exact strings ("p/q" or "p"); floats
are rejected.  Files named "-" mean stdin/stdout.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 no certificate /
failed verification, 5 resource budget exceeded, 10 internal self-check
failure.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import bounds
from .errors import (
    BudgetExceededError,
    NoCertificateWithinBudgetError,
    NullcertError,
)
from .groebner import algebraic_degree_for_lambda
from .lattice import (
    convex_hull,
    euclidean_volume,
    graded_from_polytope,
    graded_set,
    is_normal,
    normalized_volume,
    prism_polytope,
    unimodular_subdivision_Pd,
    verify_unimodular_subdivision,
)
from .poly import (
    Polynomial,
    PolySystem,
    degrees,
    grlex_key,
    max_degree,
    newton_polytope,
    unmixed_volume,
)
from .solver import (
    Certificate,
    degree_plan,
    minimal_degree_search,
    solve_at,
    solve_polytope,
    verify_certificate,
)

SCHEMA = "nullcert/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NO_CERT = 4
EXIT_BUDGET = 5
EXIT_SELF_CHECK = 10


class ParseError(Exception):
    pass


class SelfCheckError(Exception):
    pass


# -- input/output -----------------------------------------------------------

def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None


def _write_json(path, obj):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_doc(path):
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top-level JSON value must be an object")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise ParseError(f"{path}: missing or unsupported schema "
                         f"(expected {SCHEMA!r}, got {schema!r})")
    return doc


def _parse_coef(v, where):
    if isinstance(v, bool):
        raise ParseError(f"{where}: coefficient must be a rational string")
    if isinstance(v, int):
        c = Fraction(v)
    elif isinstance(v, float):
        raise ParseError(f"{where}: floating-point coefficients are not "
                         "accepted; use a rational string like \"3/2\"")
    elif isinstance(v, str):
        s = v.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                c = Fraction(int(num.strip()), int(den.strip()))
            else:
                c = Fraction(int(s))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot parse rational {v!r}") from None
    else:
        raise ParseError(f"{where}: coefficient must be a rational string")
    if c == 0:
        raise ParseError(f"{where}: zero coefficients may not be listed")
    return c


def _format_coef(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _parse_exponent(e, nvars, where):
    if not isinstance(e, list) or len(e) != nvars:
        raise ParseError(f"{where}: exp must be a list of {nvars} integers")
    out = []
    for v in e:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"{where}: exponents must be integers")
        out.append(v)
    return tuple(out)


def _parse_poly(obj, nvars, laurent, where):
    if not isinstance(obj, list):
        raise ParseError(f"{where}: a polynomial is a list of terms")
    terms = {}
    for k, term in enumerate(obj):
        if not isinstance(term, dict) or set(term) != {"exp", "coef"}:
            raise ParseError(f"{where} term {k}: expected "
                             "{{\"exp\": [...], \"coef\": \"p/q\"}}")
        exp = _parse_exponent(term["exp"], nvars, f"{where} term {k}")
        coef = _parse_coef(term["coef"], f"{where} term {k}")
        terms[exp] = terms.get(exp, Fraction(0)) + coef
    return Polynomial(terms, nvars, laurent)


def _serialize_poly(f):
    out = []
    for e in sorted(f.terms, key=lambda e: (grlex_key(e), e), reverse=True):
        out.append({"exp": list(e), "coef": _format_coef(f.terms[e])})
    return out


def parse_system_doc(doc, path="<system>"):
    """SystemDocument -> (list of Polynomial, localizer or None, vars, laurent).

    The polynomial list may be empty; commands that need a nonempty system
    enforce that themselves (domain error, not parse error)."""
    varnames = doc.get("vars")
    if (not isinstance(varnames, list) or not varnames
            or not all(isinstance(v, str) and v for v in varnames)):
        raise ParseError(f"{path}: \"vars\" must be a nonempty list of names")
    laurent = doc.get("laurent", False)
    if not isinstance(laurent, bool):
        raise ParseError(f"{path}: \"laurent\" must be a boolean")
    polys_obj = doc.get("polys")
    if not isinstance(polys_obj, list):
        raise ParseError(f"{path}: \"polys\" must be a list")
    nvars = len(varnames)
    polys = [_parse_poly(p, nvars, laurent, f"{path} polys[{i}]")
             for i, p in enumerate(polys_obj)]
    localizer = None
    if doc.get("localizer") is not None:
        localizer = _parse_poly(doc["localizer"], nvars, laurent,
                                f"{path} localizer")
    return polys, localizer, list(varnames), laurent


def serialize_system(fs, varnames):
    doc = {
        "schema": SCHEMA,
        "vars": list(varnames),
        "laurent": fs.laurent,
        "polys": [_serialize_poly(f) for f in fs],
    }
    if not fs.localizer.is_constant() or fs.localizer.constant_term() != 1:
        doc["localizer"] = _serialize_poly(fs.localizer)
    return doc


def _require_system(doc, path):
    polys, localizer, varnames, laurent = parse_system_doc(doc, path)
    if not polys:
        raise ValueError("the document lists no polynomials")
    return PolySystem(polys, localizer=localizer), varnames


def parse_points_doc(doc, path="<polytope>"):
    pts_obj = doc.get("points")
    if not isinstance(pts_obj, list) or not pts_obj:
        raise ParseError(f"{path}: \"points\" must be a nonempty list")
    pts = []
    dim = None
    for i, p in enumerate(pts_obj):
        if not isinstance(p, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in p):
            raise ParseError(f"{path} points[{i}]: expected a list of integers")
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise ParseError(f"{path} points[{i}]: mixed dimensions")
        pts.append(tuple(p))
    return pts


def parse_certificate_doc(doc, path="<certificate>"):
    if not isinstance(doc.get("cofactors"), list):
        raise ParseError(f"{path}: \"cofactors\" must be a list")
    polys, _, varnames, laurent = parse_system_doc(
        {**doc, "polys": doc["cofactors"], "localizer": None}, path)
    exponent_D = doc.get("exponent_D", 1)
    if not isinstance(exponent_D, int) or isinstance(exponent_D, bool) \
            or exponent_D < 0:
        raise ParseError(f"{path}: \"exponent_D\" must be a nonnegative integer")
    shift = doc.get("shift")
    if shift is not None:
        shift = tuple(_parse_exponent(shift, len(varnames), f"{path} shift"))
    return Certificate(tuple(polys), exponent_D=exponent_D, shift=shift), laurent


def serialize_certificate(cert, varnames, laurent, extra=None):
    doc = {
        "schema": SCHEMA,
        "vars": list(varnames),
        "laurent": laurent,
        "cofactors": [_serialize_poly(g) for g in cert.cofactors],
        "exponent_D": cert.exponent_D,
        "shift": list(cert.shift) if cert.shift is not None else None,
    }
    if cert.provenance is not None:
        doc["provenance"] = _bound_report_dict(cert.provenance)
    if extra:
        doc.update(extra)
    return doc


def _bound_report_dict(report):
    inputs = {}
    for k, v in report.inputs.items():
        if isinstance(v, Fraction):
            inputs[k] = _format_coef(v)
        else:
            inputs[k] = v
    out = {
        "theorem": report.theorem_id,
        "formula": report.formula,
        "inputs": inputs,
        "exponent_D": report.exponent_D,
        "degree_bound": report.degree_bound,
        "notes": list(report.notes),
    }
    if report.support is not None:
        out["support"] = {
            "dilation": report.support.dilation,
            "base": report.support.base,
            "shift_dilation": report.support.shift_dilation,
        }
    return out


# -- bound ------------------------------------------------------------------

def _enlarged_newton(fs):
    """Newton polytope of {x_1..x_n, f_1..f_s} (plus the localizer)."""
    pts = set()
    for f in fs:
        pts |= f.support()
    pts |= fs.localizer.support()
    n = fs.nvars
    for i in range(n):
        pts.add(tuple(1 if j == i else 0 for j in range(n)))
    return convex_hull(pts)


def _system_newton(fs):
    pts = set()
    for f in fs:
        pts |= f.support()
    pts |= fs.localizer.support()
    return convex_hull(pts)


def cmd_bound(args):
    doc = _load_doc(args.system)
    fs, _ = _require_system(doc, args.system)
    n = fs.nvars
    s = len(fs)
    t = args.theorem

    def need(flag, name):
        if flag is None:
            raise ValueError(f"--{name} is required for theorem {t}")
        return flag

    base_vertices = None
    if t == "thm1":
        base = _enlarged_newton(fs)
        report = bounds.bound_thm1(n, s, normalized_volume(base),
                                   d=max_degree(fs))
        base_vertices = base.vertices
    elif t == "thm2":
        base = _system_newton(fs)
        report = bounds.bound_thm2(n, s, normalized_volume(base))
        base_vertices = base.vertices
    elif t in ("thm3", "thm31"):
        report = bounds.bound_thm3(degrees(fs), n)
    elif t in ("thm4", "thm32"):
        report = bounds.bound_thm4(n, s, max_degree(fs),
                                   need(args.delta, "delta"))
    elif t == "main-lemma":
        report = bounds.bound_main_lemma(need(args.codim, "codim"), s,
                                         need(args.deg_ideal, "deg-ideal"))
    elif t == "thm-cm":
        report = bounds.bound_thm_cm(need(args.codim, "codim"),
                                     max_degree(fs),
                                     need(args.deg_ideal, "deg-ideal"))
    elif t == "cor12":
        report = bounds.bound_cor12(need(args.codim, "codim"),
                                    max_degree(fs),
                                    need(args.deg_hideal, "deg-hideal"))
    elif t in ("thm21", "cor21", "thm22", "cor22"):
        P = _system_newton(fs)
        vol = euclidean_volume(P)
        deg_p = fs.localizer.degree() if args.deg_p is None else args.deg_p
        if t == "thm21":
            report = bounds.bound_thm21(n, s, vol, deg_p)
        elif t == "cor21":
            report = bounds.bound_cor21(n, s, vol, deg_p, max_degree(fs))
        elif t == "thm22":
            report = bounds.bound_thm22(n, s, P.dim, vol)
        else:
            report = bounds.bound_cor22(n, s, P.dim, vol, deg_p,
                                        max_degree(fs))
        base_vertices = P.vertices
    elif t == "bezout":
        value = bounds.bezout_algdeg_bound(degrees(fs), n)
        _write_json(args.output, {"schema": SCHEMA, "theorem": "bezout",
                                  "value": value,
                                  "inputs": {"n": n, "degrees": degrees(fs)}})
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown theorem {t}")

    out = {"schema": SCHEMA, **_bound_report_dict(report)}
    if base_vertices is not None:
        out["base_vertices"] = [list(v) for v in base_vertices]
    _write_json(args.output, out)
    return EXIT_OK


# -- solve ------------------------------------------------------------------

def _parse_budget(text):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"--budget must be \"auto\" or an integer, "
                         f"got {text!r}") from None
    if value < 0:
        raise ValueError("--budget must be >= 0")
    return value


def cmd_solve(args):
    doc = _load_doc(args.system)
    fs, varnames = _require_system(doc, args.system)
    budget = _parse_budget(args.budget)
    shift = tuple(args.shift) if args.shift is not None else None
    provenance = None
    result_extra = {"mode": args.mode}

    if args.mode == "degree":
        if fs.laurent:
            raise ValueError("degree mode requires an ordinary "
                             "(non-Laurent) system")
        if shift is not None:
            raise ValueError("--shift applies to polytope mode only")
        if budget is None:
            provenance = bounds.bound_thm3(degrees(fs), fs.nvars)
            budget = provenance.degree_bound
        result_extra["budget"] = budget
        if args.minimal:
            try:
                D_min, cert = minimal_degree_search(fs, budget,
                                                    provenance=provenance)
                result_extra["D_min"] = D_min
            except NoCertificateWithinBudgetError:
                cert = None
        else:
            target = fs.localizer ** args.exponent
            plan = degree_plan(fs, budget)
            cert = solve_at(fs, plan, target, exponent_D=args.exponent,
                            provenance=provenance)
    else:
        base = _system_newton(fs) if fs.laurent else _enlarged_newton(fs)
        if budget is None:
            U = normalized_volume(base)
            if fs.laurent:
                provenance = bounds.bound_thm2(fs.nvars, len(fs), U)
            else:
                provenance = bounds.bound_thm1(fs.nvars, len(fs), U,
                                               d=max_degree(fs))
            budget = provenance.support.dilation
        if budget < 1:
            raise ValueError("polytope mode needs a dilation budget >= 1")
        result_extra["budget"] = budget
        result_extra["base_vertices"] = [list(v) for v in base.vertices]
        if args.minimal:
            cert = None
            for t in range(1, budget + 1):
                cert = solve_polytope(fs, t, base, exponent_D=args.exponent,
                                      shift=shift, provenance=provenance)
                if cert is not None:
                    result_extra["dilation_min"] = t
                    break
        else:
            cert = solve_polytope(fs, budget, base, exponent_D=args.exponent,
                                  shift=shift, provenance=provenance)

    if cert is None:
        _write_json("-", {"schema": SCHEMA, "status": "no-certificate",
                          **result_extra})
        return EXIT_NO_CERT

    check = verify_certificate(fs, cert)
    if not check:
        raise SelfCheckError(f"solver output failed re-verification: "
                             f"{check.detail}")
    out = serialize_certificate(cert, varnames, fs.laurent,
                                extra={"status": "ok", **result_extra})
    _write_json(args.emit, out)
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def cmd_verify(args):
    sys_doc = _load_doc(args.system)
    cert_doc = _load_doc(args.certificate)
    polys, localizer, varnames, sys_laurent = parse_system_doc(
        sys_doc, args.system)
    if not polys:
        raise ValueError("the system lists no polynomials")
    cert, cert_laurent = parse_certificate_doc(cert_doc, args.certificate)
    laurent = sys_laurent or cert_laurent
    if laurent:
        polys = [Polynomial(f.terms, f.nvars, True) for f in polys]
        if localizer is not None:
            localizer = Polynomial(localizer.terms, localizer.nvars, True)
        cert = Certificate(
            tuple(Polynomial(g.terms, g.nvars, True) for g in cert.cofactors),
            exponent_D=cert.exponent_D, shift=cert.shift)
    fs = PolySystem(polys, localizer=localizer)
    result = verify_certificate(fs, cert)
    out = {"schema": SCHEMA, "pass": bool(result)}
    if not result:
        out["detail"] = result.detail
        out["offending_monomial"] = (list(result.offending_monomial)
                                     if result.offending_monomial else None)
    _write_json(args.output, out)
    return EXIT_OK if result else EXIT_NO_CERT


# -- volume -----------------------------------------------------------------

def cmd_volume(args):
    doc = _load_doc(args.input)
    if "polys" in doc:
        polys, localizer, _, _ = parse_system_doc(doc, args.input)
        if not polys:
            raise ValueError("the document lists no polynomials")
        P = newton_polytope(polys)
        U = unmixed_volume(polys)
    elif "points" in doc:
        P = convex_hull(parse_points_doc(doc, args.input))
        U = normalized_volume(P)
    else:
        raise ParseError(f"{args.input}: expected \"polys\" or \"points\"")
    out = {
        "schema": SCHEMA,
        "vertices": [list(v) for v in P.vertices],
        "rho": P.dim,
        "euclidean_volume": _format_coef(euclidean_volume(P)),
        "normalized_volume": normalized_volume(P),
        "unmixed_volume": U,
        "notes": ["normalized volume is measured in the saturated induced "
                  "lattice; a point has normalized volume 1",
                  "euclidean volume = normalized volume / rho!"],
    }
    _write_json(args.output, out)
    return EXIT_OK


# -- normality --------------------------------------------------------------

def cmd_normality(args):
    doc = _load_doc(args.input)
    pts = parse_points_doc(doc, args.input)
    if args.lift:
        gset = graded_from_polytope(convex_hull(pts))
    else:
        gset = graded_set(pts)
    report = is_normal(gset, depth=args.depth)
    out = {
        "schema": SCHEMA,
        "normal": report.normal,
        "depth": report.depth,
        "points": [list(p) for p in gset.points],
    }
    if not report.normal:
        out["counterexample"] = list(report.counterexample)
        out["level"] = report.level
    _write_json(args.output, out)
    return EXIT_OK


def cmd_subdivide_pd(args):
    sub = unimodular_subdivision_Pd(args.n, args.d)
    P = prism_polytope(args.n, args.d)
    if not verify_unimodular_subdivision(P, sub):
        raise SelfCheckError("generated subdivision failed verification")
    out = {
        "schema": SCHEMA,
        "n": args.n,
        "d": args.d,
        "count": len(sub.simplices),
        "normalized_volume": normalized_volume(P),
        "simplices": [[list(v) for v in simp] for simp in sub.simplices],
        "verified": True,
    }
    _write_json(args.output, out)
    return EXIT_OK


# -- algebraic degree -------------------------------------------------------

def _parse_lambda_doc(doc, s, path):
    mat = doc.get("matrix")
    if not isinstance(mat, list) or len(mat) != s \
            or not all(isinstance(r, list) and len(r) == s for r in mat):
        raise ParseError(f"{path}: \"matrix\" must be {s}x{s}")
    out = []
    for i, row in enumerate(mat):
        vals = []
        for j, v in enumerate(row):
            if v == 0 or v == "0":
                vals.append(Fraction(0))
            else:
                vals.append(_parse_coef(v, f"{path} matrix[{i}][{j}]"))
        out.append(vals)
    return out


def cmd_algdeg(args):
    doc = _load_doc(args.system)
    fs, _ = _require_system(doc, args.system)
    s = len(fs)
    lams = []
    if args.lambda_file is not None:
        lams.append(_parse_lambda_doc(_load_doc(args.lambda_file), s,
                                      args.lambda_file))
    else:
        if args.samples < 1:
            raise ValueError("--samples must be >= 1")
        rng = random.Random(args.seed)
        for _ in range(args.samples):
            lams.append([[Fraction(rng.randint(-3, 3)) for _ in range(s)]
                         for _ in range(s)])
    records = []
    best = None
    for lam in lams:
        entry = {"lambda": [[_format_coef(v) for v in row] for row in lam]}
        got = algebraic_degree_for_lambda(fs, lam)
        if got is None:
            entry["in_gamma"] = False
        else:
            t, delta = got
            entry.update({"in_gamma": True, "t": t, "delta": delta})
            if best is None or delta < best:
                best = delta
        records.append(entry)
    out = {
        "schema": SCHEMA,
        "records": records,
        "min_delta": best,
        "bezout_bound": bounds.bezout_algdeg_bound(degrees(fs), fs.nvars),
    }
    if args.lambda_file is None:
        out["note"] = ("sampled lambdas are a heuristic search; min_delta "
                       "is an upper estimate of the algebraic degree")
    _write_json(args.output, out)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="nullcert",
        description="Nullstellensatz certificates: bounds, solving, "
                    "verification, and lattice-polytope utilities.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate a bound formula on a system")
    p.add_argument("system", help="SystemDocument JSON path or -")
    p.add_argument("--theorem", required=True,
                   choices=["thm1", "thm2", "thm3", "thm31", "thm4", "thm32",
                            "main-lemma", "thm-cm", "cor12", "thm21", "cor21",
                            "thm22", "cor22", "bezout"])
    p.add_argument("--delta", type=int)
    p.add_argument("--codim", type=int)
    p.add_argument("--deg-ideal", type=int)
    p.add_argument("--deg-hideal", type=int)
    p.add_argument("--deg-p", type=int)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("solve", help="search for a certificate")
    p.add_argument("system")
    p.add_argument("--mode", choices=["degree", "polytope"], default="degree")
    p.add_argument("--budget", default="auto",
                   help="degree bound / dilation, or \"auto\" for the "
                        "theorem default")
    p.add_argument("--minimal", action="store_true",
                   help="scan budgets upward and report the smallest that "
                        "certifies")
    p.add_argument("--exponent", type=int, default=1,
                   help="certify localizer^exponent instead of localizer")
    p.add_argument("--shift", type=int, nargs="+",
                   help="fixed Laurent support shift (polytope mode)")
    p.add_argument("--emit", default="-",
                   help="where to write the certificate JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against a system")
    p.add_argument("system")
    p.add_argument("certificate")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("volume", help="Newton polytope and volume data")
    p.add_argument("input", help="system or polytope document")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("normality", help="truncated saturation check")
    p.add_argument("input", help="polytope/points document")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--lift", action="store_true",
                   help="check A(P) = {1} x (P cap Z^n) instead of the "
                        "listed points")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("subdivide-pd",
                       help="unimodular subdivision of the prism P_d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_subdivide_pd)

    p = sub.add_parser("algdeg", help="algebraic degree per lambda matrix")
    p.add_argument("system")
    p.add_argument("--lambda-file", dest="lambda_file",
                   help="JSON document with an s x s \"matrix\"")
    p.add_argument("--samples", type=int, default=1,
                   help="number of random lambda matrices when no file is "
                        "given")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_algdeg)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"nullcert: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as e:
        print(f"nullcert: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except NoCertificateWithinBudgetError as e:
        print(f"nullcert: {e}", file=sys.stderr)
        return EXIT_NO_CERT
    except SelfCheckError as e:
        print(f"nullcert: self-check failed: {e}", file=sys.stderr)
        return EXIT_SELF_CHECK
    except (NullcertError, ValueError) as e:
        print(f"nullcert: domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
