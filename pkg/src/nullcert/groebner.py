"""Gröbner-basis oracle: Buchberger with cofactor tracking, Hilbert-series
dimension/degree of homogeneous ideals, and the per-matrix algebraic degree.

This module is deliberately independent of the linear-system certificate
solver: the two share only the polynomial arithmetic, so each can serve as
an oracle for the other.  Everything runs over exact rationals; budgets cap
the pair queue so a runaway basis computation fails loudly instead of
spinning.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    NonHomogeneousError,
    NotOrdinaryPolynomialError,
)
from .poly import Polynomial, grevlex_key, grlex_key, homogenize

_ORDER_KEYS = {"grevlex": grevlex_key, "grlex": grlex_key}

DEFAULT_MAX_PAIRS = 20000
DEFAULT_MAX_BASIS = 400


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic basis plus an optional cofactor matrix expressing each
    basis element over the original generators."""

    generators: tuple
    order: str
    cofactor_matrix: tuple | None = None

    def contains_one(self):
        return any(g.is_constant() and not g.is_zero() for g in self.generators)


def _leading(f, key):
    exp = max(f.terms, key=key)
    return exp, f.terms[exp]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _quot_mono(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(f, exp, coef):
    n = f.nvars
    return Polynomial(
        {tuple(e[i] + exp[i] for i in range(n)): c * coef
         for e, c in f.terms.items()}, n)


def _reduce_full(p, cof, basis, key):
    """Full normal form of p modulo basis, updating the cofactor row so the
    invariant p_original = (sum of cof_j * gens_j) + p_current + remainder
    is preserved.  Returns (remainder, cof)."""
    rem_terms = {}
    while p.terms:
        lexp, lc = _leading(p, key)
        for bpoly, bcof in basis:
            bexp, bc = _leading(bpoly, key)
            if _divides(bexp, lexp):
                q_exp = _quot_mono(lexp, bexp)
                q_coef = lc / bc
                p = p - _mono_mul(bpoly, q_exp, q_coef)
                cof = [cof[j] - _mono_mul(bcof[j], q_exp, q_coef)
                       if bcof[j].terms else cof[j]
                       for j in range(len(cof))]
                break
        else:
            rem_terms[lexp] = lc
            p = Polynomial({e: c for e, c in p.terms.items() if e != lexp},
                           p.nvars)
    return Polynomial(rem_terms, p.nvars), cof


def buchberger(gens, order="grevlex", max_pairs=DEFAULT_MAX_PAIRS,
               max_basis=DEFAULT_MAX_BASIS):
    """Reduced Gröbner basis with cofactor tracking.

    Pair selection is the normal strategy (smallest lcm in the order);
    Buchberger's coprimality criterion and a conservative chain criterion
    prune the queue.  Exceeding the pair or basis budget raises
    BudgetExceededError.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if order not in _ORDER_KEYS:
        raise ValueError(f"unknown order {order!r}")
    key = _ORDER_KEYS[order]
    n = gens[0].nvars
    for g in gens:
        if g.laurent:
            raise NotOrdinaryPolynomialError("Buchberger needs ordinary polynomials")
        if g.nvars != n:
            raise DimensionMismatchError("generators disagree on nvars")

    def unit_row(j):
        return [Polynomial.constant(1, n) if i == j else Polynomial.zero(n)
                for i in range(len(gens))]

    G = []          # list of (poly, cofactor_row)
    for j, g in enumerate(gens):
        if not g.is_zero():
            G.append((g, unit_row(j)))
    if not G:
        return GroebnerBasis((), order, ())

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    reduced_pairs = set()   # pairs whose S-polynomial was actually reduced
    coprime_pairs = set()   # pairs discarded by the coprimality criterion
    processed = 0

    def lcm_exp(i, j):
        a = _leading(G[i][0], key)[0]
        b = _leading(G[j][0], key)[0]
        return tuple(max(x, y) for x, y in zip(a, b))

    while pairs:
        processed += 1
        if processed > max_pairs:
            raise BudgetExceededError(f"pair budget {max_pairs} exceeded")
        pair = min(pairs, key=lambda ij: (key(lcm_exp(*ij)), ij))
        pairs.discard(pair)
        i, j = pair
        L = lcm_exp(i, j)
        ei = _leading(G[i][0], key)[0]
        ej = _leading(G[j][0], key)[0]
        # coprimality criterion: disjoint leading supports reduce to zero
        if all(x + y == z for x, y, z in zip(ei, ej, L)):
            coprime_pairs.add(pair)
            continue
        # conservative chain criterion: only settled pairs justify a skip
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if not _divides(_leading(G[k][0], key)[0], L):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            settled = reduced_pairs | coprime_pairs
            if pik in settled and pjk in settled:
                skip = True
                break
        if skip:
            reduced_pairs.add(pair)
            continue
        fi, ci = G[i]
        fj, cj = G[j]
        _, lci = _leading(fi, key)
        _, lcj = _leading(fj, key)
        spoly = (_mono_mul(fi, _quot_mono(L, ei), Fraction(1) / lci)
                 - _mono_mul(fj, _quot_mono(L, ej), Fraction(1) / lcj))
        scof = [
            _mono_mul(ci[t], _quot_mono(L, ei), Fraction(1) / lci)
            - _mono_mul(cj[t], _quot_mono(L, ej), Fraction(1) / lcj)
            for t in range(len(gens))]
        rem, rcof = _reduce_full(spoly, scof, G, key)
        reduced_pairs.add(pair)
        if rem.is_zero():
            continue
        G.append((rem, rcof))
        if len(G) > max_basis:
            raise BudgetExceededError(f"basis budget {max_basis} exceeded")
        new = len(G) - 1
        for t in range(new):
            pairs.add((t, new))

    return _reduce_basis(G, len(gens), order, key, n)


def _reduce_basis(G, ngens, order, key, n):
    """Minimize (drop elements whose leading term another divides), then
    inter-reduce tails and normalize to monic, tracking cofactors."""
    # minimize: keep only elements with minimal leading terms
    keep = []
    lts = [_leading(p, key)[0] for p, _ in G]
    for idx in range(len(G)):
        lt = lts[idx]
        redundant = False
        for jdx in range(len(G)):
            if jdx == idx:
                continue
            if _divides(lts[jdx], lt) and (lts[jdx] != lt or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(idx)
    kept = [G[idx] for idx in keep]
    # inter-reduce: each element fully reduced modulo the others
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = kept[:idx] + kept[idx + 1:]
            rem, rcof = _reduce_full(kept[idx][0], kept[idx][1], others, key)
            if rem != kept[idx][0]:
                changed = True
            if rem.is_zero():
                kept.pop(idx)
                break
            kept[idx] = (rem, rcof)
    # monic + deterministic order
    final = []
    for poly, cof in kept:
        _, lc = _leading(poly, key)
        inv = Fraction(1) / lc
        final.append((poly * inv, tuple(c * inv for c in cof)))
    final.sort(key=lambda pc: key(_leading(pc[0], key)[0]))
    return GroebnerBasis(
        tuple(p for p, _ in final), order,
        tuple(c for _, c in final))


def normal_form(f, basis):
    """Remainder of f on division by the basis (no cofactor bookkeeping)."""
    key = _ORDER_KEYS[basis.order]
    dummy = [Polynomial.zero(f.nvars)]
    pairs = [(g, [Polynomial.zero(f.nvars)]) for g in basis.generators]
    rem, _ = _reduce_full(f, dummy, pairs, key)
    return rem


def membership_certificate(f, gens, basis=None, **budget):
    """Cofactors h with f = sum h_i * gens_i, or None when f is not in the
    ideal.  Quotients from division by the reduced basis are composed with
    the basis's own cofactor matrix."""
    gens = list(gens)
    if basis is None:
        basis = buchberger(gens, **budget)
    if not basis.generators:
        return list(Polynomial.zero(f.nvars) for _ in gens) if f.is_zero() else None
    key = _ORDER_KEYS[basis.order]
    n = f.nvars
    quots = [Polynomial.zero(n) for _ in basis.generators]
    p = f
    while p.terms:
        lexp, lc = _leading(p, key)
        for bi, b in enumerate(basis.generators):
            bexp, bc = _leading(b, key)
            if _divides(bexp, lexp):
                q_exp = _quot_mono(lexp, bexp)
                q_coef = lc / bc
                quots[bi] = quots[bi] + Polynomial({q_exp: q_coef}, n)
                p = p - _mono_mul(b, q_exp, q_coef)
                break
        else:
            return None
    cofs = [Polynomial.zero(n) for _ in gens]
    for bi, q in enumerate(quots):
        if q.is_zero():
            continue
        row = basis.cofactor_matrix[bi]
        for j in range(len(gens)):
            if row[j].terms:
                cofs[j] = cofs[j] + q * row[j]
    check = Polynomial.zero(n)
    for j in range(len(gens)):
        check = check + cofs[j] * gens[j]
    assert check == f, "cofactor composition failed to reproduce the input"
    return cofs


# -- Hilbert series of monomial ideals --------------------------------------

@dataclass(frozen=True)
class IdealProfile:
    """Krull dimension and degree of a homogeneous quotient ring."""

    dim: int
    degree: int


MAX_HILBERT_GENS = 18


def _minimal_monomials(exps):
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    out = []
    for e in exps:
        if not any(_divides(m, e) for m in out):
            out.append(e)
    return out


def _hilbert_numerator(mingens, nvars):
    """Coefficient list of K(t) = sum over subsets S of (-1)^|S| t^{deg lcm S},
    the numerator of the Hilbert series of S/(monomial ideal) over
    (1-t)^nvars."""
    g = len(mingens)
    if g > MAX_HILBERT_GENS:
        raise BudgetExceededError(
            f"{g} minimal generators exceeds the inclusion-exclusion cap "
            f"{MAX_HILBERT_GENS}")
    coeffs = {0: 1}
    lcms = [None] * (1 << g)
    zero = tuple(0 for _ in range(nvars))
    lcms[0] = zero
    for mask in range(1, 1 << g):
        low = mask & (-mask)
        idx = low.bit_length() - 1
        prev = lcms[mask ^ low]
        gen = mingens[idx]
        cur = tuple(max(a, b) for a, b in zip(prev, gen))
        lcms[mask] = cur
        sign = -1 if bin(mask).count("1") % 2 else 1
        d = sum(cur)
        coeffs[d] = coeffs.get(d, 0) + sign
    deg = max(coeffs)
    out = [0] * (deg + 1)
    for d, c in coeffs.items():
        out[d] = c
    while out and out[-1] == 0:
        out.pop()
    return out


def _strip_one_roots(coeffs):
    """Divide the integer polynomial by (1-t) as often as it vanishes at 1;
    returns (multiplicity, quotient coefficients)."""
    mult = 0
    cur = list(coeffs)
    while cur and sum(cur) == 0:
        # synthetic division by (1 - t): c(t) = (1-t) q(t)
        q = [0] * (len(cur) - 1)
        acc = 0
        for k in range(len(cur) - 1):
            acc = acc + cur[k]
            q[k] = acc
        cur = q
        while cur and cur[-1] == 0:
            cur.pop()
        mult += 1
    return mult, cur


def ideal_profile(gens, **budget):
    """Dimension and degree of a homogeneous ideal via the Hilbert series of
    its leading-term ideal.

    The zero ideal in n variables yields (n, 1).  The unit ideal yields
    (-1, 0): the quotient is the zero ring.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (possibly zero) to fix nvars")
    nvars = gens[0].nvars
    live = [g for g in gens if not g.is_zero()]
    if not live:
        return IdealProfile(nvars, 1)
    for g in live:
        if len({sum(e) for e in g.terms}) != 1:
            raise NonHomogeneousError(f"generator is not homogeneous: {g!r}")
    basis = buchberger(live, **budget)
    key = _ORDER_KEYS[basis.order]
    lts = [_leading(g, key)[0] for g in basis.generators]
    mingens = _minimal_monomials(lts)
    zero = tuple(0 for _ in range(nvars))
    if zero in mingens:
        return IdealProfile(-1, 0)
    K = _hilbert_numerator(mingens, nvars)
    mult, reduced = _strip_one_roots(K)
    dim = nvars - mult
    degree = sum(reduced)
    return IdealProfile(dim, degree)


def zero_ideal_profile(nvars):
    return IdealProfile(nvars, 1)


# -- homogenization of affine ideals ----------------------------------------

def homogenize_ideal(gens, **budget):
    """Homogeneous generators of the homogenized ideal I^h: homogenize each
    element of a degrevlex Gröbner basis of the affine ideal (using the
    order with the homogenizing variable last)."""
    basis = buchberger(list(gens), order="grevlex", **budget)
    return [homogenize(g) for g in basis.generators]


# -- algebraic degree for a single coefficient matrix -----------------------

def algebraic_degree_for_lambda(system, lam, **budget):
    """Evaluate the algebraic degree for one square coefficient matrix.

    Forms h_i = sum_j lam[i][j] f_j, finds the minimal t <= min(n, s) with
    1 in (h_1..h_t), and checks h_1..h_{t-1} is a regular sequence by
    requiring each homogenized prefix ideal to drop the quotient dimension
    by exactly one.  Returns (t, delta) with delta the maximum degree of
    the homogenized prefix ideals, or None when the matrix is not generic
    enough (no prefix reaches 1, or the sequence is not regular).
    """
    fs = list(system)
    s = len(fs)
    n = fs[0].nvars
    if len(lam) != s or any(len(row) != s for row in lam):
        raise DimensionMismatchError(f"lambda must be {s}x{s}")
    hs = []
    for row in lam:
        h = Polynomial.zero(n)
        for c, f in zip(row, fs):
            c = Fraction(c) if not isinstance(c, Fraction) else c
            if c != 0:
                h = h + f * c
        hs.append(h)
    tmax = min(n, s)
    t_found = None
    for t in range(1, tmax + 1):
        prefix = [h for h in hs[:t] if not h.is_zero()]
        if not prefix:
            continue
        if buchberger(prefix, **budget).contains_one():
            t_found = t
            break
    if t_found is None:
        return None
    if t_found == 1:
        return (1, 1)
    delta = 1
    expected_dim = n + 1
    for i in range(1, t_found):
        prefix = [h for h in hs[:i] if not h.is_zero()]
        if len(prefix) < i:
            return None    # a zero member cannot drop the dimension
        hgens = homogenize_ideal(prefix, **budget)
        prof = ideal_profile(hgens, **budget)
        expected_dim -= 1
        if prof.dim != expected_dim:
            return None
        delta = max(delta, prof.degree)
    return (t_found, delta)
