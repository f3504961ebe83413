"""Exact integer linear algebra helpers.

Everything in here works over plain Python ints / Fractions — no floats, no
epsilons.  Provides Hermite normal form, integer kernels, lattice saturation,
Bareiss determinants and a tiny phase-1 simplex for exact linear feasibility.
"""

from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_vector(v):
    """Divide out the content of an integer vector (zero vector stays zero)."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _pivot_col(row):
    for j, x in enumerate(row):
        if x != 0:
            return j
    return None


def hnf_rows(rows):
    """Row-style Hermite normal form of the lattice spanned by `rows`.

    Returns a list of tuples: an echelon basis with positive pivots, entries
    above each pivot reduced into [0, pivot).  The result is the canonical
    basis of the generated lattice, independent of input order.
    """
    basis = []  # list of lists, kept sorted by pivot column
    for r in rows:
        row = list(r)
        while True:
            j = _pivot_col(row)
            if j is None:
                break
            hit = None
            for i, b in enumerate(basis):
                if _pivot_col(b) == j:
                    hit = i
                    break
            if hit is None:
                if row[j] < 0:
                    row = [-x for x in row]
                basis.append(row)
                basis.sort(key=lambda b: _pivot_col(b))
                break
            b = basis[hit]
            a, c = b[j], row[j]
            g = gcd(a, c)
            # extended gcd: u*a + v*c == g
            u, v = _bezout(a, c)
            new_b = [u * b[k] + v * row[k] for k in range(len(row))]
            new_r = [(a // g) * row[k] - (c // g) * b[k] for k in range(len(row))]
            basis[hit] = new_b
            row = new_r
    # reduce entries above pivots; ascending pivot order, so fixing a column
    # never disturbs one that was already reduced
    basis.sort(key=lambda b: _pivot_col(b))
    for k in range(len(basis)):
        for i in range(k + 1, len(basis)):
            p = _pivot_col(basis[i])
            piv = basis[i][p]
            q = basis[k][p] // piv
            if q:
                basis[k] = [basis[k][t] - q * basis[i][t] for t in range(len(basis[i]))]
    return [tuple(b) for b in basis]


def _bezout(a, b):
    """Return (u, v) with u*a + v*b == gcd(a, b)."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_u, old_v = -old_u, -old_v
    return old_u, old_v


def kernel_basis(mat, ncols):
    """Basis of the integer kernel {x in Z^ncols : mat @ x = 0}.

    `mat` is a list of length-ncols rows (linear forms).  Uses the classic
    [M^T | I] Hermite reduction: HNF rows whose leading part vanishes carry
    kernel vectors in the identity part.
    """
    m = len(mat)
    if m == 0:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    aug = []
    for i in range(ncols):
        aug.append(tuple(mat[r][i] for r in range(m)) + tuple(1 if j == i else 0 for j in range(ncols)))
    out = []
    for row in hnf_rows(aug):
        if all(x == 0 for x in row[:m]):
            out.append(row[m:])
    return out


def saturation_basis(rows, ncols):
    """Basis of span_R(rows) ∩ Z^ncols (the saturated lattice).

    Returns an HNF basis; full-rank input yields the identity basis.
    """
    gens = [r for r in rows if any(r)]
    if not gens:
        return []
    orth = kernel_basis(gens, ncols)
    if not orth:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    return hnf_rows(kernel_basis(orth, ncols))


def hnf_solve(basis, target):
    """Express `target` over an HNF `basis`; returns integer coords or None.

    `basis` must be the output of hnf_rows (echelon, positive pivots).
    """
    rem = list(target)
    coords = []
    for b in basis:
        p = _pivot_col(b)
        q, r = divmod(rem[p], b[p])
        if r != 0:
            return None
        coords.append(q)
        if q:
            rem = [rem[k] - q * b[k] for k in range(len(rem))]
    if any(rem):
        return None
    return coords


def in_lattice(basis, target):
    return hnf_solve(basis, target) is not None


def det_int(mat):
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(mat, rhs):
    """Solve a square rational system exactly; returns list of Fractions or None."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        pv = a[k][k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / pv
                a[i] = [a[i][j] - f * a[k][j] for j in range(n + 1)]
    return [a[i][n] / a[i][i] for i in range(n)]


# --- exact linear feasibility (phase-1 simplex, Bland's rule) ----------------

def lp_feasible(a_eq, b_eq):
    """Exact feasibility of {x >= 0 : A x = b} over the rationals.

    Phase-1 simplex with Bland's anti-cycling rule; terminates and returns a
    bool.  Sizes here are tiny (hull membership, face separation), so the
    dense tableau is fine.
    """
    m = len(a_eq)
    if m == 0:
        return True
    n = len(a_eq[0])
    rows = []
    rhs = []
    for i in range(m):
        r = [Fraction(x) for x in a_eq[i]]
        b = Fraction(b_eq[i])
        if b < 0:
            r = [-x for x in r]
            b = -b
        rows.append(r)
        rhs.append(b)
    # tableau with artificial basis; objective = sum of artificials
    ncols = n + m
    tab = []
    for i in range(m):
        tab.append(rows[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [rhs[i]])
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            obj[j] += tab[i][j]
    while True:
        enter = next((j for j in range(n) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][ncols] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # unbounded phase-1 objective cannot happen; defensive
            return False
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [tab[i][j] - f * tab[leave][j] for j in range(ncols + 1)]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [obj[j] - f * tab[leave][j] for j in range(ncols + 1)]
        basis[leave] = enter
    return obj[ncols] == 0
