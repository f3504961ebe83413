"""Shared builders and miniature reference oracles for the test suite.

The oracles here are deliberately naive -- dense Fraction row reduction,
bounding-box lattice scans, binomial Hilbert counts -- so that the fast
paths in the package have something obviously correct to disagree with.
"""

import itertools
from fractions import Fraction

from nullcert import Polynomial, PolySystem


def mono(exp, coef=1, laurent=False):
    return Polynomial.monomial(tuple(exp), coef, laurent)


def one(nvars):
    return Polynomial.constant(1, nvars)


# -- the telescoping chain family ------------------------------------------


def chain_system(n, d):
    """f1 = 1 - x1*x2^d, f_i = x_i - x_{i+1}^d, f_n = x_n^2 (n >= 2, d >= 2)."""
    assert n >= 2 and d >= 2
    first = [0] * n
    first[0], first[1] = 1, d
    polys = [one(n) - mono(first)]
    for i in range(1, n - 1):
        a = [0] * n
        a[i] = 1
        b = [0] * n
        b[i + 1] = d
        polys.append(mono(a) - mono(b))
    last = [0] * n
    last[n - 1] = 2
    polys.append(mono(last))
    return PolySystem(polys)


def chain_cofactors(n, d):
    """Cofactors that telescope the chain system back to 1.

    g1 = 1, g_i = x1 * prod_{j=2..i} x_j^(d-1) for middle i, and the last
    cofactor trades the final x_{n-1}^d tail against x_n^2.
    """
    cofs = [one(n)]
    for i in range(2, n):
        e = [0] * n
        e[0] = 1
        for j in range(1, i):
            e[j] = d - 1
        cofs.append(mono(e))
    e = [0] * n
    e[0] = 1
    for j in range(1, n - 1):
        e[j] = d - 1
    e[n - 1] = d - 2
    cofs.append(mono(e))
    return cofs


def chain_closing_degree(n, d):
    """Largest total degree among the g_i * f_i products of the hand identity."""
    return 1 + (n - 2) * (d - 1) + d


# -- dense rational row reduction ------------------------------------------


def ref_dense_solve(rows, rhs, ncols):
    """Gauss-Jordan over Fraction; rows are {col: value} dicts.

    Returns a full-length solution list (free variables pinned at zero) or
    None when the system is inconsistent.
    """
    m = []
    for row, b in zip(rows, rhs):
        dense = [Fraction(row.get(c, 0)) for c in range(ncols)] + [Fraction(b)]
        m.append(dense)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    xs = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        xs[c] = m[i][ncols]
    return xs


def residual_ok(rows, rhs, xs):
    for row, b in zip(rows, rhs):
        if sum(Fraction(v) * xs[c] for c, v in row.items()) != b:
            return False
    return True


# -- random material --------------------------------------------------------


def exponents_up_to(nvars, deg):
    for e in itertools.product(range(deg + 1), repeat=nvars):
        if sum(e) <= deg:
            yield e


def random_poly(rng, nvars, max_deg=2, fill=0.35, coef_range=2):
    """Sparse polynomial with coefficients in {-coef_range..coef_range} \\ {0}.

    Resamples until at least one term lands, so the result is never the
    zero polynomial.
    """
    while True:
        terms = {}
        for e in exponents_up_to(nvars, max_deg):
            if rng.random() < fill:
                c = rng.randint(-coef_range, coef_range)
                if c:
                    terms[e] = Fraction(c)
        if terms:
            return Polynomial(terms, nvars)


def random_system(rng, max_n=3, max_s=3, max_deg=2):
    n = rng.randint(1, max_n)
    s = rng.randint(1, max_s)
    return PolySystem([random_poly(rng, n, max_deg) for _ in range(s)])


def random_fraction(rng, num_range=6, den_range=4):
    return Fraction(rng.randint(-num_range, num_range),
                    rng.randint(1, den_range))


# -- geometry oracles -------------------------------------------------------


def box_points(polytope):
    """Every lattice point of the polytope, found by a bounding-box scan."""
    verts = polytope.vertices
    n = polytope.ambient_dim
    lo = [min(v[i] for v in verts) for i in range(n)]
    hi = [max(v[i] for v in verts) for i in range(n)]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return sorted(p for p in itertools.product(*ranges) if polytope.contains(p))


def binom(m, k):
    if m < k or k < 0:
        return 0
    out = 1
    for i in range(k):
        out = out * (m - i) // (i + 1)
    return out
