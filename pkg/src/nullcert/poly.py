"""Exact multivariate (optionally Laurent) polynomial arithmetic over Q.

Polynomials are stored as a map from exponent tuples to nonzero Fractions.
All arithmetic is exact; there is no floating point anywhere.  The module
also provides the support/Newton-polytope bridge into the lattice geometry
code and x0-homogenization (the homogenizing variable is appended as the
*last* exponent slot, which makes it the least significant variable under
the graded orders below).
"""

from fractions import Fraction

from .errors import (
    DimensionMismatchError,
    NotOrdinaryPolynomialError,
)
from .lattice import convex_hull, normalized_volume


def _as_coef(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be exact (int/Fraction/str), got {type(c).__name__}")


class Polynomial:
    """A polynomial in n variables with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions.  With
    ``laurent=True`` negative exponents are allowed.  Instances are treated
    as immutable: no method mutates ``terms`` after construction.
    """

    __slots__ = ("terms", "nvars", "laurent")

    def __init__(self, terms, nvars, laurent=False):
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for exp, coef in items:
            exp = tuple(exp)
            if len(exp) != nvars:
                raise DimensionMismatchError(
                    f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if not all(isinstance(e, int) for e in exp):
                raise TypeError(f"exponents must be integers: {exp}")
            if not laurent and any(e < 0 for e in exp):
                raise NotOrdinaryPolynomialError(
                    f"negative exponent {exp} requires laurent=True")
            coef = _as_coef(coef)
            if coef == 0:
                continue
            if exp in clean:
                coef = clean[exp] + coef
                if coef == 0:
                    del clean[exp]
                    continue
            clean[exp] = coef
        self.terms = clean
        self.nvars = nvars
        self.laurent = laurent

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars, laurent=False):
        return cls({}, nvars, laurent)

    @classmethod
    def constant(cls, c, nvars, laurent=False):
        return cls({tuple(0 for _ in range(nvars)): c}, nvars, laurent)

    @classmethod
    def monomial(cls, exp, coef=1, laurent=False):
        exp = tuple(exp)
        return cls({exp: coef}, len(exp), laurent)

    @classmethod
    def variable(cls, i, nvars, laurent=False):
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls({exp: 1}, nvars, laurent)

    # -- predicates and accessors ------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        zero = tuple(0 for _ in range(self.nvars))
        return all(e == zero for e in self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def support(self):
        """The set of exponent vectors with nonzero coefficient."""
        return set(self.terms)

    def degree(self):
        """Maximum total degree (sum of exponents); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self):
        return self.coefficient(tuple(0 for _ in range(self.nvars)))

    # -- ring operations ----------------------------------------------------

    def _check_compat(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars, self.laurent)
        self._check_compat(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            acc = out.get(exp, Fraction(0)) + c
            if acc == 0:
                out.pop(exp, None)
            else:
                out[exp] = acc
        return Polynomial(out, self.nvars, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()},
                          self.nvars, self.laurent)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars, self.laurent)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_coef(other)
            if c == 0:
                return Polynomial.zero(self.nvars, self.laurent)
            return Polynomial({e: cf * c for e, cf in self.terms.items()},
                              self.nvars, self.laurent)
        self._check_compat(other)
        out = {}
        n = self.nvars
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(ea[i] + eb[i] for i in range(n))
                acc = out.get(e, Fraction(0)) + ca * cb
                if acc == 0:
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Polynomial(out, n, self.laurent or other.laurent)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.nvars, self.laurent)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, values):
        """Exact evaluation at a rational point (tuple of length nvars)."""
        if len(values) != self.nvars:
            raise DimensionMismatchError("evaluation point has wrong length")
        vals = [_as_coef(v) for v in values]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(vals, exp):
                if e == 0:
                    continue
                if e < 0 and v == 0:
                    raise ZeroDivisionError("negative exponent at zero coordinate")
                term *= v ** e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        parts = []
        for exp in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                f"x{i+1}" if e == 1 else f"x{i+1}^{e}"
                for i, e in enumerate(exp) if e != 0)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return f"Polynomial({s})"


# -- term orders ------------------------------------------------------------

def grlex_key(exp):
    """Graded lexicographic sort key (the canonical serialization order)."""
    return (sum(exp), exp)


def grevlex_key(exp):
    """Graded reverse lexicographic sort key, x1 > x2 > ... > x_n.

    Larger key means larger monomial.  With the homogenizing variable stored
    in the last slot it is automatically the least significant.
    """
    return (sum(exp), tuple(-e for e in reversed(exp)))


# -- support geometry -------------------------------------------------------

def support(f):
    return f.support()


def newton_polytope(fs):
    """Convex hull of the union of supports of the given polynomials."""
    if isinstance(fs, Polynomial):
        fs = [fs]
    pts = set()
    for f in fs:
        pts |= f.support()
    return convex_hull(pts)


def unmixed_volume(fs):
    """Normalized volume of the joint Newton polytope (induced-lattice
    convention for lower-dimensional polytopes)."""
    return normalized_volume(newton_polytope(fs))


# -- homogenization ---------------------------------------------------------

def homogenize(f, total_degree=None):
    """x0-homogenization at degree max(deg f, total_degree).

    The homogenizing variable occupies the new last exponent slot.
    """
    if f.laurent:
        raise NotOrdinaryPolynomialError("cannot homogenize a Laurent polynomial")
    deg = max(f.degree(), total_degree or 0)
    if f.is_zero():
        return Polynomial.zero(f.nvars + 1)
    out = {}
    for exp, c in f.terms.items():
        out[exp + (deg - sum(exp),)] = c
    return Polynomial(out, f.nvars + 1)


def dehomogenize(f):
    """Substitute 1 for the homogenizing (last) variable and drop it."""
    if f.laurent:
        raise NotOrdinaryPolynomialError("dehomogenize expects an ordinary polynomial")
    if f.nvars == 0:
        raise DimensionMismatchError("no variable to dehomogenize")
    out = {}
    for exp, c in f.terms.items():
        e = exp[:-1]
        acc = out.get(e, Fraction(0)) + c
        if acc == 0:
            out.pop(e, None)
        else:
            out[e] = acc
    return Polynomial(out, f.nvars - 1)


def monomial_shift(f, a):
    """Multiply f by the monomial x^a (a may have negative entries in
    Laurent mode)."""
    a = tuple(a)
    if len(a) != f.nvars:
        raise DimensionMismatchError("shift vector has wrong length")
    out = {}
    for exp, c in f.terms.items():
        e = tuple(exp[i] + a[i] for i in range(f.nvars))
        if not f.laurent and any(x < 0 for x in e):
            raise NotOrdinaryPolynomialError(
                f"shift by {a} lands at negative exponent {e}; needs laurent=True")
        out[e] = c
    return Polynomial(out, f.nvars, f.laurent)


def scalar_mul(c, f):
    return f * c


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


# -- systems ----------------------------------------------------------------

class PolySystem:
    """A finite list of polynomials f_1..f_s sharing nvars and the Laurent
    flag, with an optional localizer p (default: the constant 1)."""

    __slots__ = ("polys", "localizer", "nvars", "laurent")

    def __init__(self, polys, localizer=None):
        polys = tuple(polys)
        if not polys:
            raise ValueError("a system needs at least one polynomial")
        nvars = polys[0].nvars
        laurent = any(f.laurent for f in polys)
        for f in polys:
            if f.nvars != nvars:
                raise DimensionMismatchError("system members disagree on nvars")
        if localizer is None:
            localizer = Polynomial.constant(1, nvars, laurent)
        elif localizer.nvars != nvars:
            raise DimensionMismatchError("localizer has wrong nvars")
        if laurent:
            polys = tuple(
                f if f.laurent else Polynomial(f.terms, nvars, True)
                for f in polys)
            if not localizer.laurent:
                localizer = Polynomial(localizer.terms, nvars, True)
        self.polys = polys
        self.localizer = localizer
        self.nvars = nvars
        self.laurent = laurent

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __repr__(self):
        return f"PolySystem({list(self.polys)!r}, localizer={self.localizer!r})"


def max_degree(fs):
    """Maximum total degree over the system (0 for all-zero input)."""
    return max((f.degree() for f in fs), default=-1) if fs else -1


def degrees(fs):
    """Total degrees sorted descending, d1 >= d2 >= ... >= d_s."""
    return sorted((f.degree() for f in fs), reverse=True)
