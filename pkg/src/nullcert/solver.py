"""Reduce Nullstellensatz certificates to exact sparse linear systems.

A certificate 1 = sum g_i f_i (or p^D = sum g_i f_i) is found by fixing a
finite allowed support S_i for every cofactor g_i, writing the coefficients
of the products as a linear system over the unknown cofactor coefficients,
and solving that system exactly over the rationals.  Small systems go
through fraction-free elimination with Markowitz pivoting; large ones go
through the modular backend with exact final verification.  Every returned
certificate is re-verified before it leaves this module.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EmptyPlanError,
    NoCertificateWithinBudgetError,
    NotOrdinaryPolynomialError,
    UnreachableTargetError,
)
from .lattice import dilate, lattice_points
from .poly import Polynomial, grlex_key
from ._modsolve import solve_system_modular

DEFAULT_MAX_UNKNOWNS = 200000
DEFAULT_MAX_NONZEROS = 5000000
# systems with at most this many unknowns are eliminated directly
_DIRECT_UNKNOWNS = 260


def _max_unknowns_cap(override=None):
    if override is not None:
        return override
    env = os.environ.get("NULLCERT_MAX_UNKNOWNS")
    if env:
        return int(env)
    return DEFAULT_MAX_UNKNOWNS


@dataclass(frozen=True)
class SupportPlan:
    """Per-cofactor allowed exponent sets, with a record of how they were
    derived (degree budget or polytope dilation + optional shift)."""

    supports: tuple            # tuple of tuples of exponent tuples
    mode: str                  # "degree" | "polytope"
    detail: dict = field(compare=False, default_factory=dict)

    def total_unknowns(self):
        return sum(len(s) for s in self.supports)


def _exps_degree_at_most(n, k):
    """All nonnegative exponent tuples of length n with sum <= k, lex order."""
    if k < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v, slots - 1)

    rec([], k, n)
    return out


def degree_plan(fs, D):
    """Degree-mode plan: S_i = {a >= 0 : |a| + deg f_i <= D}, so that every
    product g_i f_i has total degree at most D."""
    if fs.laurent:
        raise NotOrdinaryPolynomialError("degree plans need ordinary polynomials")
    if D < 0:
        raise ValueError("degree budget must be >= 0")
    supports = []
    for f in fs:
        if f.is_zero():
            supports.append(())
            continue
        supports.append(tuple(_exps_degree_at_most(fs.nvars, D - f.degree())))
    return SupportPlan(tuple(supports), "degree", {"D": D})


DEFAULT_MAX_PLAN_POINTS = 2000000


def polytope_plan(fs, dilation, base, shift=None,
                  max_points=DEFAULT_MAX_PLAN_POINTS):
    """Polytope-mode plan: S_i = {a : a + support(f_i) + shift inside the
    lattice points of dilation * base}; nonnegative entries only unless the
    system is Laurent.  Dilated polytopes whose bounding box exceeds
    max_points raise BudgetExceededError before any enumeration starts."""
    if dilation < 1:
        raise ValueError("dilation must be >= 1")
    if base.ambient_dim != fs.nvars:
        raise DimensionMismatchError("polytope dimension does not match system")
    if shift is not None:
        shift = tuple(shift)
        if len(shift) != fs.nvars:
            raise DimensionMismatchError("shift has wrong length")
        if not fs.laurent and any(v != 0 for v in shift):
            raise NotOrdinaryPolynomialError("shifts need a Laurent system")
    big = dilate(base, dilation)
    box = 1
    for i in range(big.ambient_dim):
        lo = min(v[i] for v in big.vertices)
        hi = max(v[i] for v in big.vertices)
        box *= hi - lo + 1
    if box > max_points:
        raise BudgetExceededError(
            f"dilated support polytope spans {box} grid points "
            f"(cap {max_points})")
    T = set(lattice_points(big))
    n = fs.nvars
    supports = []
    for f in fs:
        if f.is_zero():
            supports.append(())
            continue
        cand = None
        for e in f.support():
            moved = {tuple(q[i] - e[i] for i in range(n)) for q in T}
            cand = moved if cand is None else (cand & moved)
            if not cand:
                break
        cand = cand or set()
        if shift is not None:
            cand = {tuple(a[i] - shift[i] for i in range(n)) for a in cand}
        if not fs.laurent:
            cand = {a for a in cand if all(v >= 0 for v in a)}
        supports.append(tuple(sorted(cand)))
    detail = {"dilation": dilation, "base": base}
    if shift is not None:
        detail["shift"] = shift
    return SupportPlan(tuple(supports), "polytope", detail)


@dataclass(frozen=True)
class LinearSystem:
    """The exact linear system of a support plan against a target."""

    columns: tuple         # (poly index, exponent) per unknown
    row_monomials: tuple
    rows: tuple            # dict col_index -> Fraction
    rhs: tuple             # Fraction per row


def build_system(fs, plan, target, max_unknowns=None, max_nonzeros=None):
    """Assemble the linear system whose solutions are exactly the cofactor
    tuples with support in the plan satisfying sum g_i f_i = target.

    Raises EmptyPlanError when no cofactor has an allowed support against a
    nonzero generator, UnreachableTargetError when some target monomial
    cannot be produced by any allowed product, and BudgetExceededError when
    the system would exceed the resource caps."""
    polys = list(fs)
    if len(plan.supports) != len(polys):
        raise DimensionMismatchError("plan arity does not match system")
    cap = _max_unknowns_cap(max_unknowns)
    nnz_cap = max_nonzeros if max_nonzeros is not None else DEFAULT_MAX_NONZEROS
    n_unknowns = 0
    n_nonzeros = 0
    usable = False
    for f, sup in zip(polys, plan.supports):
        if f.is_zero() or not sup:
            continue
        usable = True
        n_unknowns += len(sup)
        n_nonzeros += len(sup) * len(f.terms)
    if not usable:
        raise EmptyPlanError("no cofactor has allowed support against a nonzero generator")
    if n_unknowns > cap:
        raise BudgetExceededError(
            f"{n_unknowns} unknowns exceeds the cap {cap}")
    if n_nonzeros > nnz_cap:
        raise BudgetExceededError(
            f"{n_nonzeros} matrix entries exceeds the cap {nnz_cap}")

    columns = []
    for i, (f, sup) in enumerate(zip(polys, plan.supports)):
        if f.is_zero():
            continue
        for a in sorted(sup, key=lambda a: (grlex_key(a), a)):
            columns.append((i, a))
    col_index = {col: j for j, col in enumerate(columns)}

    row_map = {}
    nv = fs.nvars
    for j, (i, a) in enumerate(columns):
        for e, c in polys[i].terms.items():
            m = tuple(a[t] + e[t] for t in range(nv))
            row = row_map.setdefault(m, {})
            acc = row.get(j, Fraction(0)) + c
            if acc == 0:
                row.pop(j, None)
            else:
                row[j] = acc
    for m in target.terms:
        if m not in row_map:
            raise UnreachableTargetError(m)
        if not row_map[m]:
            raise UnreachableTargetError(m)

    monos = sorted(row_map, key=lambda m: (grlex_key(m), m))
    rows = tuple(row_map[m] for m in monos)
    rhs = tuple(target.coefficient(m) for m in monos)
    return LinearSystem(tuple(columns), tuple(monos), rows, rhs)


# -- exact solving ----------------------------------------------------------

def _scale_rows(system):
    """Clear denominators row by row, returning integer rows and rhs."""
    int_rows = []
    int_rhs = []
    for row, b in zip(system.rows, system.rhs):
        denlcm = b.denominator
        for v in row.values():
            d = v.denominator
            g = _gcd(denlcm, d)
            denlcm = denlcm // g * d
        r = {c: int(v * denlcm) for c, v in row.items()}
        int_rows.append(r)
        int_rhs.append(int(b * denlcm))
    return int_rows, int_rhs


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _direct_solve(int_rows, int_rhs):
    """Fraction-free sparse elimination with Markowitz pivoting.

    Rows stay integral (cross-multiplication followed by content removal);
    pivot choice minimizes (row fill - 1) * (column fill - 1) with a
    deterministic tie-break on lowest column then oldest row.  Returns a
    dict of nonzero unknowns (free variables at zero) or None when the
    system is inconsistent."""
    active = {}
    for idx, (row, b) in enumerate(zip(int_rows, int_rhs)):
        active[idx] = (dict(row), b)
    pivots = []
    while True:
        col_count = {}
        for row, _ in active.values():
            for c in row:
                col_count[c] = col_count.get(c, 0) + 1
        best = None
        for ridx in active:
            row, _ = active[ridx]
            for c in row:
                score = (len(row) - 1) * (col_count[c] - 1)
                key = (score, c, ridx)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, pc, pr = best
        prow, prhs = active.pop(pr)
        a_p = prow[pc]
        for ridx in list(active):
            row, b = active[ridx]
            a_r = row.get(pc)
            if a_r is None:
                continue
            new = {}
            for c, v in row.items():
                new[c] = v * a_p
            for c, v in prow.items():
                acc = new.get(c, 0) - a_r * v
                if acc == 0:
                    new.pop(c, None)
                else:
                    new[c] = acc
            new.pop(pc, None)
            nb = b * a_p - a_r * prhs
            content = 0
            for v in new.values():
                content = _gcd(content, v)
            content = _gcd(content, nb)
            if content > 1:
                new = {c: v // content for c, v in new.items()}
                nb //= content
            active[ridx] = (new, nb)
        pivots.append((pc, prow, prhs))
    for row, b in active.values():
        if not row and b != 0:
            return None
    xs = {}
    for pc, prow, prhs in reversed(pivots):
        acc = Fraction(prhs)
        for c, v in prow.items():
            if c == pc:
                continue
            xc = xs.get(c)
            if xc is not None:
                acc -= v * xc
        val = acc / prow[pc]
        if val != 0:
            xs[pc] = val
    return xs


def solve_linear_system(system):
    """Exact solution dict {column index: Fraction} or None (inconsistent).
    Dispatches between direct elimination and the modular backend by size;
    the backend's answers are always certified exactly, with a fallback to
    direct elimination when certification fails."""
    int_rows, int_rhs = _scale_rows(system)
    ncols = len(system.columns)
    if ncols <= _DIRECT_UNKNOWNS:
        return _direct_solve(int_rows, int_rhs)
    status, payload = solve_system_modular(int_rows, int_rhs, ncols)
    if status == "solution":
        return payload
    if status == "infeasible":
        return None
    return _direct_solve(int_rows, int_rhs)


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Cofactors g_i with sum g_i f_i = localizer^exponent_D."""

    cofactors: tuple
    exponent_D: int = 1
    shift: tuple | None = None
    provenance: object = None     # BoundReport when a theorem set the budget
    plan: SupportPlan | None = None


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    detail: str | None = None
    offending_monomial: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_certificate(fs, cert, target=None):
    """Exact check that sum g_i f_i equals the target (localizer^D when no
    explicit target is given), plus support containment when the
    certificate carries its plan."""
    polys = list(fs)
    cofs = list(cert.cofactors)
    if len(cofs) != len(polys):
        raise DimensionMismatchError(
            f"{len(cofs)} cofactors against {len(polys)} polynomials")
    if target is None:
        target = fs.localizer ** cert.exponent_D
    total = Polynomial.zero(fs.nvars, fs.laurent)
    for g, f in zip(cofs, polys):
        total = total + g * f
    diff = total - target
    if not diff.is_zero():
        worst = max(diff.terms, key=lambda m: (grlex_key(m), m))
        return VerificationResult(
            False,
            detail=(f"coefficient mismatch at {worst}: expected "
                    f"{target.coefficient(worst)}, got {total.coefficient(worst)}"),
            offending_monomial=worst)
    if cert.plan is not None:
        for i, g in enumerate(cofs):
            allowed = set(cert.plan.supports[i])
            bad = g.support() - allowed
            if bad:
                worst = max(bad, key=lambda m: (grlex_key(m), m))
                return VerificationResult(
                    False,
                    detail=f"cofactor {i} uses exponent {worst} outside its plan",
                    offending_monomial=worst)
    return VerificationResult(True)


def _assemble(fs, plan, columns, solution, exponent_D, shift, provenance):
    n = fs.nvars
    per_poly = {}
    for j, (i, a) in enumerate(columns):
        v = solution.get(j)
        if v:
            per_poly.setdefault(i, {})[a] = v
    cofs = tuple(
        Polynomial(per_poly.get(i, {}), n, fs.laurent)
        for i in range(len(fs)))
    return Certificate(cofs, exponent_D=exponent_D, shift=shift,
                       provenance=provenance, plan=plan)


def _filtered_plan(fs, plan, D):
    """Sub-plan keeping only exponents a with |a| + deg f_i <= D.  Any
    solution over the sub-plan extends by zeros to one over the plan."""
    sup = []
    total = 0
    for f, s in zip(fs, plan.supports):
        if f.is_zero():
            sup.append(())
            continue
        d = f.degree()
        keep = tuple(a for a in s if sum(a) + d <= D)
        total += len(keep)
        sup.append(keep)
    return SupportPlan(tuple(sup), plan.mode, dict(plan.detail)), total


def solve_at(fs, plan, target, exponent_D=1, shift=None, provenance=None,
             max_unknowns=None, max_nonzeros=None):
    """Solve for cofactors with supports exactly as planned.  Returns a
    verified Certificate, or None when the plan is structurally empty, the
    target is unreachable, or the linear system is inconsistent.  Resource
    caps raise BudgetExceededError instead of returning None.

    Large plans are probed through ascending degree-filtered sub-plans
    first: certificates of low degree are found on small systems, and only
    instances with no low-degree certificate pay for the full system."""
    if not fs.laurent and plan.total_unknowns() > _DIRECT_UNKNOWNS:
        full = max((sum(a) + f.degree()
                    for f, s in zip(fs, plan.supports) if not f.is_zero()
                    for a in s), default=-1)
        D = max(target.degree(), 1)
        while D < full:
            sub, total = _filtered_plan(fs, plan, D)
            if total >= plan.total_unknowns():
                break
            cert = None
            if total:
                cert = _solve_exact_plan(fs, sub, plan, target, exponent_D,
                                         shift, provenance,
                                         max_unknowns, max_nonzeros)
            if cert is not None:
                return cert
            D *= 2
    return _solve_exact_plan(fs, plan, plan, target, exponent_D, shift,
                             provenance, max_unknowns, max_nonzeros)


def _solve_exact_plan(fs, build_plan, record_plan, target, exponent_D, shift,
                      provenance, max_unknowns, max_nonzeros):
    try:
        system = build_system(fs, build_plan, target,
                              max_unknowns=max_unknowns,
                              max_nonzeros=max_nonzeros)
    except (EmptyPlanError, UnreachableTargetError):
        return None
    solution = solve_linear_system(system)
    if solution is None:
        return None
    cert = _assemble(fs, record_plan, system.columns, solution, exponent_D,
                     shift, provenance)
    check = verify_certificate(fs, cert, target=target)
    assert check.ok, f"internal: solver produced a bad certificate: {check.detail}"
    return cert


def solve_with_localizer(fs, plan, D, **kw):
    """Certificate for localizer^D = sum g_i f_i."""
    if D < 0:
        raise ValueError("exponent must be >= 0")
    target = fs.localizer ** D
    return solve_at(fs, plan, target, exponent_D=D, **kw)


def minimal_degree_search(fs, D_max, provenance=None, **kw):
    """Smallest degree budget D <= D_max whose degree-mode plan admits a
    certificate for the localizer, found by ascending linear scan (monotone
    feasibility makes the first hit minimal).  Raises
    NoCertificateWithinBudget when the scan is exhausted."""
    if D_max < 0:
        raise ValueError("D_max must be >= 0")
    target = fs.localizer
    for D in range(D_max + 1):
        plan = degree_plan(fs, D)
        cert = solve_at(fs, plan, target, exponent_D=1, provenance=provenance, **kw)
        if cert is not None:
            return D, cert
    raise NoCertificateWithinBudgetError(
        f"no certificate with degree budget <= {D_max}")


def solve_polytope(fs, dilation, base, exponent_D=1, shift=None,
                   provenance=None, **kw):
    """Polytope-mode solve.  For Laurent systems without a caller-supplied
    shift, tries the zero shift and then the vertices of the dilated
    polytope in lexicographic order."""
    target = fs.localizer ** exponent_D
    if shift is not None or not fs.laurent:
        plan = polytope_plan(fs, dilation, base, shift=shift)
        return solve_at(fs, plan, target, exponent_D=exponent_D, shift=shift,
                        provenance=provenance, **kw)
    zero = tuple(0 for _ in range(fs.nvars))
    candidates = [zero] + sorted(dilate(base, dilation).vertices)
    for a in candidates:
        plan = polytope_plan(fs, dilation, base, shift=a)
        cert = solve_at(fs, plan, target, exponent_D=exponent_D, shift=a,
                        provenance=provenance, **kw)
        if cert is not None:
            return cert
    return None
