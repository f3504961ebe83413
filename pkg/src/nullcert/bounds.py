"""Closed-form budget formulas for Nullstellensatz certificates.

Every function returns a BoundReport recording the formula, the inputs, and
the resulting exponent / degree / support-polytope budgets, so that a
certificate can cite exactly which bound licensed its search.  All
arithmetic is exact big-integer arithmetic; volume inputs are euclidean
volumes as Fractions (for an integral polytope of dimension rho, rho! times
the euclidean volume is the integer normalized volume).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial


@dataclass(frozen=True)
class SupportSpec:
    """Dilation budget on a base polytope: N(g_i f_i) must fit inside
    ``dilation * base`` (minus the shift, when one is present)."""

    dilation: int
    base: str
    shift_dilation: int | None = None


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    formula: str
    inputs: dict = field(compare=False)
    exponent_D: int | None = None
    degree_bound: int | None = None
    support: SupportSpec | None = None
    notes: tuple = ()

    def __post_init__(self):
        for val in (self.exponent_D, self.degree_bound):
            if val is not None and val < 0:
                raise ValueError(f"negative bound in report: {val}")


def _require_positive(**kw):
    for name, val in kw.items():
        if val < 1:
            raise ValueError(f"{name} must be >= 1, got {val}")


def _require_nonneg(**kw):
    for name, val in kw.items():
        if val < 0:
            raise ValueError(f"{name} must be >= 0, got {val}")


def _as_int(x, what):
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"{what} must be an integer, got {x}")
    return x.numerator


def _check_sorted_desc(ds):
    ds = list(ds)
    if not ds:
        raise ValueError("degree list must be nonempty")
    if any(d < 0 for d in ds):
        raise ValueError("degrees must be nonnegative")
    if any(ds[i] < ds[i + 1] for i in range(len(ds) - 1)):
        raise ValueError(f"degree list must be sorted descending: {ds}")
    return ds


# -- dense identity certificates over affine space --------------------------

def bound_thm1(n, s, U, d=None):
    """Support budget for 1 = sum g_i f_i over affine space:
    N(g_i f_i) is contained in n^(n+3) * U dilations of the Newton polytope
    of {x_1..x_n, f_1..f_s}.  With the maximum degree d supplied, also the
    degree bound n^(n+3) * d * U."""
    _require_positive(n=n, s=s, U=U)
    dil = n ** (n + 3) * U
    deg = None
    if d is not None:
        _require_nonneg(d=d)
        deg = dil * d
    return BoundReport(
        theorem_id="Thm1",
        formula="N(g_i f_i) <= n^(n+3) * U * N;  deg g_i f_i <= n^(n+3) * d * U",
        inputs={"n": n, "s": s, "U": U, "d": d},
        exponent_D=1,
        degree_bound=deg,
        support=SupportSpec(dilation=dil, base="newton(x_1..x_n, f_1..f_s)"),
        notes=("identity certificate: the localizer is the constant 1",),
    )


def bound_thm2(n, s, U):
    """Support budget for the Laurent (torus) certificate: a shift a and
    cofactors with a in n^(2n+3) * U^2 * N and N(g_i f_i) inside
    n^(2n+3) * U^2 * N - a."""
    _require_positive(n=n, s=s, U=U)
    dil = n ** (2 * n + 3) * U * U
    return BoundReport(
        theorem_id="Thm2",
        formula=("a in n^(2n+3) * U^2 * N;  N(g_i f_i) <= n^(2n+3) * U^2 * N - a;"
                 "  D <= n^(n+2) * U"),
        inputs={"n": n, "s": s, "U": U},
        exponent_D=n ** (n + 2) * U,
        support=SupportSpec(dilation=dil, base="newton(f_1..f_s)",
                            shift_dilation=dil),
        notes=("Laurent cofactors: supports live in Z^n after the shift",
               "the underlying derivation also gives the localizer power "
               "budget D <= n^(n+2) * U"),
    )


# -- degree-list certificates ----------------------------------------------

def _thm3_value(ds, n):
    m = min(n, len(ds))
    val = 2 * ds[-1]
    for j in range(m - 1):
        val *= ds[j]
    return val


def bound_thm3(degree_list, n):
    """deg g_i f_i <= 2 * d_s * prod of the min(n,s)-1 largest degrees."""
    ds = _check_sorted_desc(degree_list)
    _require_positive(n=n)
    val = _thm3_value(ds, n)
    return BoundReport(
        theorem_id="Thm3",
        formula="deg g_i f_i <= 2 * d_s * prod_{j<=min(n,s)-1} d_j",
        inputs={"n": n, "s": len(ds), "degrees": tuple(ds)},
        exponent_D=1,
        degree_bound=val,
    )


def bound_thm4(n, s, d, delta):
    """deg g_i f_i <= min(n,s)^2 * d * delta, delta the algebraic degree."""
    _require_positive(n=n, s=s)
    _require_nonneg(d=d, delta=delta)
    m = min(n, s)
    val = m * m * d * delta
    return BoundReport(
        theorem_id="Thm4",
        formula="deg g_i f_i <= min(n,s)^2 * d * delta",
        inputs={"n": n, "s": s, "d": d, "delta": delta},
        exponent_D=1,
        degree_bound=val,
    )


# -- localizer power bounds from commutative algebra ------------------------

def bound_main_lemma(r, s, deg_I):
    """p^D lies in (eta_1..eta_s) for D = min(r,s)^2 * deg I."""
    _require_positive(r=r, s=s, deg_I=deg_I)
    m = min(r, s)
    return BoundReport(
        theorem_id="MainLemma",
        formula="D = min(r,s)^2 * deg I",
        inputs={"r": r, "s": s, "deg_I": deg_I},
        exponent_D=m * m * deg_I,
    )


def bound_thm_cm(r, d, deg_I):
    """D = r^2 * d^r * deg I for membership of p^D after degree-d moves."""
    _require_positive(r=r, d=d, deg_I=deg_I)
    return BoundReport(
        theorem_id="ThmCM",
        formula="D = r^2 * d^r * deg I",
        inputs={"r": r, "d": d, "deg_I": deg_I},
        exponent_D=r * r * d ** r * deg_I,
    )


def bound_cor12(r, d, deg_Ih):
    """Homogenized form: D = (r+1)^2 * d^(r+1) * deg I^h; with the zero
    ideal (deg I^h = 1, r = n) this reads (n+1)^2 * d^(n+1)."""
    _require_nonneg(r=r)
    _require_positive(d=d, deg_Ih=deg_Ih)
    return BoundReport(
        theorem_id="Cor12",
        formula="D = (r+1)^2 * d^(r+1) * deg I^h",
        inputs={"r": r, "d": d, "deg_Ih": deg_Ih},
        exponent_D=(r + 1) ** 2 * d ** (r + 1) * deg_Ih,
    )


# -- sparse (polytope) certificates -----------------------------------------

def _min_np1_s(n, s):
    return min(n + 1, s)


def bound_thm21(n, s, vol_P, deg_p):
    """Sparse localized certificate p^D = sum g_i f_i:
    D <= n! * min(n+1,s)^2 * vol(P) and
    N(g_i f_i) inside (1+deg p) * n! * min(n+1,s)^2 * vol(P) dilations of P;
    vol(P) is the euclidean volume of the full-dimensional polytope P."""
    _require_positive(n=n, s=s)
    _require_nonneg(deg_p=deg_p)
    vol = Fraction(vol_P)
    if vol <= 0:
        raise ValueError("vol_P must be positive")
    m = _min_np1_s(n, s)
    D = _as_int(factorial(n) * m * m * vol, "n! * min^2 * vol(P)")
    dil = (1 + deg_p) * D
    return BoundReport(
        theorem_id="Thm21",
        formula=("D <= n! * min(n+1,s)^2 * vol(P);  "
                 "N(g_i f_i) <= (1+deg p) * n! * min(n+1,s)^2 * vol(P) * P"),
        inputs={"n": n, "s": s, "vol_P": vol, "deg_p": deg_p},
        exponent_D=D,
        support=SupportSpec(dilation=dil, base="P"),
        notes=("the proof's intermediate display uses a single min(n+1,s) "
               "factor; the statement's squared factor is implemented",),
    )


def bound_cor21(n, s, vol_P, deg_p, d):
    """Degree form of the sparse certificate:
    deg g_i f_i <= d * (1+deg p) * n! * min(n+1,s)^2 * vol(P)."""
    rep = bound_thm21(n, s, vol_P, deg_p)
    _require_nonneg(d=d)
    deg = d * (1 + deg_p) * rep.exponent_D
    return BoundReport(
        theorem_id="Cor21",
        formula=("D <= n! * min(n+1,s)^2 * vol(P);  "
                 "deg g_i f_i <= d * (1+deg p) * n! * min(n+1,s)^2 * vol(P)"),
        inputs={"n": n, "s": s, "vol_P": Fraction(vol_P), "deg_p": deg_p, "d": d},
        exponent_D=rep.exponent_D,
        degree_bound=deg,
        notes=rep.notes,
    )


def bound_thm22(n, s, rho, vol_P):
    """Laurent sparse certificate over a rho-dimensional polytope:
    D <= rho! * min(n+1,s)^2 * vol(P), with a shift budget
    a in (rho! * min(n+1,s) * vol(P))^2 * P (single min factor inside
    the square) and the cofactor supports in the same dilation minus a."""
    _require_positive(n=n, s=s, rho=rho)
    vol = Fraction(vol_P)
    if vol <= 0:
        raise ValueError("vol_P must be positive")
    m = _min_np1_s(n, s)
    D = _as_int(factorial(rho) * m * m * vol, "rho! * min^2 * vol(P)")
    k = _as_int(factorial(rho) * m * vol, "rho! * min * vol(P)")
    dil = k * k
    return BoundReport(
        theorem_id="Thm22",
        formula=("D <= rho! * min(n+1,s)^2 * vol(P);  "
                 "a in (rho! * min(n+1,s) * vol(P))^2 * P;  "
                 "N(g_i f_i) <= (rho! * min(n+1,s) * vol(P))^2 * P - a"),
        inputs={"n": n, "s": s, "rho": rho, "vol_P": vol},
        exponent_D=D,
        support=SupportSpec(dilation=dil, base="P", shift_dilation=dil),
        notes=("the shift budget squares a single min(n+1,s) factor",),
    )


def bound_cor22(n, s, rho, vol_P, deg_p, d):
    """Degree form of the Laurent sparse certificate:
    deg g_i f_i <= d * ((1+deg p) * rho! * min(n+1,s) * vol(P))^2."""
    rep = bound_thm22(n, s, rho, vol_P)
    _require_nonneg(deg_p=deg_p, d=d)
    m = _min_np1_s(n, s)
    k = _as_int((1 + deg_p) * factorial(rho) * m * Fraction(vol_P),
                "(1+deg p) * rho! * min * vol(P)")
    return BoundReport(
        theorem_id="Cor22",
        formula=("D <= rho! * min(n+1,s)^2 * vol(P);  "
                 "deg g_i f_i <= d * ((1+deg p) * rho! * min(n+1,s) * vol(P))^2"),
        inputs={"n": n, "s": s, "rho": rho, "vol_P": Fraction(vol_P),
                "deg_p": deg_p, "d": d},
        exponent_D=rep.exponent_D,
        degree_bound=d * k * k,
        notes=rep.notes,
    )


# -- homogeneous membership exponents ---------------------------------------

def bound_thm31(degree_list, n):
    """x_0^D lies in the homogenized ideal for D = 2 * d_s * prod of the
    min(n,s)-1 largest degrees."""
    ds = _check_sorted_desc(degree_list)
    _require_positive(n=n)
    val = _thm3_value(ds, n)
    return BoundReport(
        theorem_id="Thm31",
        formula="D = 2 * d_s * prod_{j<=min(n,s)-1} d_j",
        inputs={"n": n, "s": len(ds), "degrees": tuple(ds)},
        exponent_D=val,
    )


def bound_thm32(n, s, d, delta):
    """x_0^D membership exponent D = min(n,s)^2 * d * delta."""
    rep = bound_thm4(n, s, d, delta)
    return BoundReport(
        theorem_id="Thm32",
        formula="D = min(n,s)^2 * d * delta",
        inputs=rep.inputs,
        exponent_D=rep.degree_bound,
    )


def bezout_algdeg_bound(degree_list, n):
    """Upper bound on the algebraic degree:
    delta <= d_s * prod of the min(n,s)-2 largest degrees."""
    ds = _check_sorted_desc(degree_list)
    _require_positive(n=n)
    m = min(n, len(ds))
    val = ds[-1]
    for i in range(m - 2):
        val *= ds[i]
    return val
