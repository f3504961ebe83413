"""Lattice polytopes over Z^n with exact arithmetic.

Convex hulls, lattice-point enumeration, dilation/translation, normalized
volumes (unit = primitive simplex of the induced lattice), graded-set
normality checking with witnesses, and the explicit unimodular subdivision of
the prism P_d = {x >= 0, x_1 + ... + x_{n-1} <= 1, x_n <= d}.

All polytopes are immutable value objects; every operation returns fresh
instances and results are deterministic (canonical vertex order, lex point
order).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import factorial, gcd

from ._intlinalg import (
    det_int,
    hnf_rows,
    hnf_solve,
    in_lattice,
    kernel_basis,
    lp_feasible,
    saturation_basis,
)
from .errors import DimensionMismatchError, EmptyPointSetError, NonGradedSetError


class LatticePolytope:
    """Convex hull of finitely many integer points.

    ``vertices`` is the canonical (lex-sorted) tuple of extreme points,
    ``dim`` the affine dimension, and ``hull_lattice_basis`` an HNF basis of
    the lattice generated by the pairwise vertex differences.  Volume and
    point enumeration work in the *saturated* induced lattice
    span_R(P - a0) ∩ Z^n, so that e.g. d·Δ_n has normalized volume d^n.
    """

    __slots__ = ("vertices", "ambient_dim", "dim", "hull_lattice_basis",
                 "_sat_basis", "_vcoords", "_facets", "_nvol")

    def __init__(self, vertices, ambient_dim):
        # internal: `vertices` must already be exactly the extreme points
        self.vertices = tuple(sorted(vertices))
        self.ambient_dim = ambient_dim
        base = self.vertices[0]
        diffs = [tuple(v[i] - base[i] for i in range(ambient_dim))
                 for v in self.vertices[1:]]
        self.hull_lattice_basis = tuple(hnf_rows(diffs))
        self.dim = len(self.hull_lattice_basis)
        sat = saturation_basis(diffs, ambient_dim)
        self._sat_basis = tuple(sat)
        self._vcoords = tuple(tuple(hnf_solve(sat, d)) if sat else ()
                              for d in [tuple(0 for _ in range(ambient_dim))] + diffs)
        self._facets = None
        self._nvol = None

    @property
    def base_vertex(self):
        return self.vertices[0]

    def __eq__(self, other):
        return (isinstance(other, LatticePolytope)
                and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    # -- induced-coordinate helpers ------------------------------------------

    def induced_coords(self, point):
        """Integer coordinates of `point` in the saturated induced lattice,
        or None if the point is outside the affine lattice of P."""
        if len(point) != self.ambient_dim:
            raise DimensionMismatchError(
                f"point has dim {len(point)}, polytope ambient {self.ambient_dim}")
        base = self.vertices[0]
        diff = tuple(point[i] - base[i] for i in range(self.ambient_dim))
        if self.dim == 0:
            return () if not any(diff) else None
        c = hnf_solve(self._sat_basis, diff)
        return tuple(c) if c is not None else None

    def from_induced(self, coords):
        base = list(self.vertices[0])
        for c, b in zip(coords, self._sat_basis):
            for i in range(self.ambient_dim):
                base[i] += c * b[i]
        return tuple(base)

    def facet_inequalities(self):
        """Facet system in induced coordinates: list of (normal, offset) with
        normal·x <= offset for all points of P."""
        if self._facets is None:
            self._facets = _facets_of(list(self._vcoords))
        return self._facets

    def contains(self, point):
        c = self.induced_coords(point)
        if c is None:
            return False
        return all(_dot(h, c) <= off for h, off in self.facet_inequalities())


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _facets_of(pts):
    """Brute-force facet enumeration for a full-dimensional point set in Z^rho."""
    if not pts:
        return []
    rho = len(pts[0])
    if rho == 0:
        return []
    seen = set()
    out = []
    for sub in combinations(range(len(pts)), rho):
        base = pts[sub[0]]
        diffs = [tuple(pts[i][k] - base[k] for k in range(rho)) for i in sub[1:]]
        normal = kernel_basis(diffs, rho)
        if len(normal) != 1:
            continue
        h = normal[0]
        off = _dot(h, base)
        lo = any(_dot(h, p) < off for p in pts)
        hi = any(_dot(h, p) > off for p in pts)
        if lo and hi:
            continue
        if hi:
            h = tuple(-x for x in h)
            off = -off
        key = (h, off)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def convex_hull(points):
    """LatticePolytope spanned by the given integer points.

    Raises EmptyPointSetError on empty input and DimensionMismatchError on
    ragged coordinates.  The vertex set is the minimal one: a point survives
    iff it is not a convex combination of the others (exact LP test).
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise EmptyPointSetError("convex hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatchError("points of mixed dimension")
    pts = sorted(set(pts))
    if len(pts) == 1:
        return LatticePolytope(pts, n)
    verts = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not _in_conv(p, others):
            verts.append(p)
    return LatticePolytope(verts, n)


def _in_conv(p, pts):
    """Exact test: is p a convex combination of pts?"""
    rows = [[q[i] for q in pts] for i in range(len(p))]
    rows.append([1] * len(pts))
    rhs = list(p) + [1]
    return lp_feasible(rows, rhs)


def dilate(polytope, k):
    """k-fold dilation {k·v : v in P}; dilate(P, 0) is the origin point."""
    k = int(k)
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    n = polytope.ambient_dim
    if k == 0:
        return LatticePolytope([tuple(0 for _ in range(n))], n)
    verts = [tuple(k * x for x in v) for v in polytope.vertices]
    return LatticePolytope(verts, n)


def translate(polytope, a):
    if len(a) != polytope.ambient_dim:
        raise DimensionMismatchError("translation vector dimension mismatch")
    verts = [tuple(v[i] + a[i] for i in range(polytope.ambient_dim))
             for v in polytope.vertices]
    return LatticePolytope(verts, polytope.ambient_dim)


def lattice_points(polytope):
    """All integer points of P, lex-sorted.  Enumerates the bounding box in
    induced coordinates and filters by the exact facet system."""
    if polytope.dim == 0:
        return [polytope.vertices[0]]
    coords = polytope._vcoords
    rho = polytope.dim
    lo = [min(c[i] for c in coords) for i in range(rho)]
    hi = [max(c[i] for c in coords) for i in range(rho)]
    facets = polytope.facet_inequalities()
    found = []
    for c in product(*(range(lo[i], hi[i] + 1) for i in range(rho))):
        if all(_dot(h, c) <= off for h, off in facets):
            found.append(polytope.from_induced(c))
    found.sort()
    return found


# -- volume -----------------------------------------------------------------

def normalized_volume(polytope):
    """Volume of P normalized so a primitive simplex of the induced lattice
    has volume 1 (rho! times the euclidean volume in induced coordinates).
    Always a nonnegative integer; a point counts 1."""
    if polytope._nvol is None:
        if polytope.dim == 0:
            polytope._nvol = 1
        else:
            total = 0
            pts = list(polytope._vcoords)
            for simp in _placing_triangulation(pts):
                base = pts[simp[0]]
                mat = [[pts[i][k] - base[k] for k in range(polytope.dim)]
                       for i in simp[1:]]
                total += abs(det_int(mat))
            polytope._nvol = total
    return polytope._nvol


def euclidean_volume(polytope):
    """Rational euclidean volume in induced-lattice coordinates (for a
    full-dimensional polytope this is the ordinary Lebesgue volume).  A point
    follows the normalized convention: volume 1."""
    return Fraction(normalized_volume(polytope), factorial(polytope.dim))


class _RankTracker:
    """Incremental rational row-echelon rank over appended integer vectors."""

    def __init__(self):
        self.rows = []  # reduced rows as lists of Fractions

    def try_add(self, vec):
        v = [Fraction(x) for x in vec]
        for r in self.rows:
            p = next(i for i, x in enumerate(r) if x != 0)
            if v[p] != 0:
                f = v[p] / r[p]
                v = [a - f * b for a, b in zip(v, r)]
        if any(x != 0 for x in v):
            self.rows.append(v)
            return True
        return False


def _placing_triangulation(pts):
    """Beneath-beyond triangulation of a full-dimensional point set in Z^rho.

    Points are inserted in lex order; returns simplices as index tuples.
    Interior points are skipped (harmless for volume purposes)."""
    rho = len(pts[0])
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    if rho == 0:
        return []
    tracker = _RankTracker()
    seed = [order[0]]
    deferred = []
    idx = 1
    while idx < len(order) and len(seed) < rho + 1:
        cand = order[idx]
        diff = [pts[cand][k] - pts[seed[0]][k] for k in range(rho)]
        if tracker.try_add(diff):
            seed.append(cand)
        else:
            deferred.append(cand)
        idx += 1
    if len(seed) < rho + 1:
        raise ValueError("point set is not full-dimensional in induced coordinates")
    queue = deferred + order[idx:]
    simplices = [tuple(seed)]
    ref = [sum(pts[i][k] for i in seed) for k in range(rho)]  # centroid * (rho+1)
    scale = rho + 1
    facets = {}
    for drop in seed:
        keyset = frozenset(s for s in seed if s != drop)
        facets[keyset] = _oriented_plane([pts[i] for i in keyset], ref, scale)
    for p in queue:
        visible = [ks for ks, (h, off) in facets.items()
                   if _dot(h, pts[p]) > off]
        if not visible:
            continue
        ridge_count = {}
        for ks in visible:
            for drop in ks:
                ridge = ks - {drop}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for ks in visible:
            simplices.append(tuple(sorted(ks)) + (p,))
            del facets[ks]
        for ridge, cnt in ridge_count.items():
            if cnt == 1:
                keyset = ridge | {p}
                facets[keyset] = _oriented_plane([pts[i] for i in keyset], ref, scale)
    return simplices


def _oriented_plane(face_pts, ref, scale):
    """Hyperplane through `face_pts` oriented so normal·ref < offset*scale."""
    rho = len(face_pts[0])
    if rho == 1:
        h, off = (1,), face_pts[0][0]
    else:
        base = face_pts[0]
        diffs = [tuple(q[k] - base[k] for k in range(rho)) for q in face_pts[1:]]
        h = kernel_basis(diffs, rho)[0]
        off = _dot(h, base)
    if _dot(h, ref) > off * scale:
        h = tuple(-x for x in h)
        off = -off
    return h, off


# -- graded sets and normality ----------------------------------------------

@dataclass(frozen=True)
class GradedSet:
    """Finite set A ⊂ Z^(n+1) with an integral witness ω, ⟨a, ω⟩ = 1 for all a."""

    points: tuple
    witness: tuple

    def __post_init__(self):
        for a in self.points:
            if _dot(a, self.witness) != 1:
                raise NonGradedSetError(f"point {a} has level {_dot(a, self.witness)} != 1")


def graded_set(points, witness=None):
    """Build a GradedSet, computing an integral grading witness if not given.

    Raises NonGradedSetError when no integral ω with ⟨a, ω⟩ = 1 exists.
    """
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise EmptyPointSetError("graded set needs at least one point")
    k = len(pts[0])
    if any(len(p) != k for p in pts):
        raise DimensionMismatchError("points of mixed dimension")
    if witness is not None:
        return GradedSet(tuple(pts), tuple(int(x) for x in witness))
    base = pts[0]
    diffs = [tuple(p[i] - base[i] for i in range(k)) for p in pts[1:]]
    ker = kernel_basis(diffs, k) if diffs else \
        [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    vals = [_dot(base, v) for v in ker]
    combo = _combo_for_one(vals)
    if combo is None:
        raise NonGradedSetError("no integral grading witness exists")
    omega = [0] * k
    for c, v in zip(combo, ker):
        for i in range(k):
            omega[i] += c * v[i]
    return GradedSet(tuple(pts), tuple(omega))


def _combo_for_one(vals):
    """Integer coefficients c with sum c_i * vals_i == 1, or None."""
    g = 0
    coeffs = []
    for v in vals:
        if g == 0:
            g = abs(v)
            coeffs = [0] * len(coeffs) + [1 if v > 0 else (-1 if v < 0 else 0)]
        else:
            new_g = gcd(g, v)
            if new_g != g:
                # extended combine: new_g = u*g + w*v
                u, w = _ext_pair(g, v)
                coeffs = [u * c for c in coeffs] + [w]
                g = new_g
            else:
                coeffs.append(0)
    if g != 1:
        return None
    return coeffs


def _ext_pair(a, b):
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


def graded_from_polytope(polytope):
    """A(P) = {1} × (P ∩ Z^n), graded by the first coordinate."""
    pts = [(1,) + q for q in lattice_points(polytope)]
    n = polytope.ambient_dim
    return GradedSet(tuple(sorted(pts)), (1,) + tuple(0 for _ in range(n)))


@dataclass
class NormalityReport:
    """Outcome of the truncated saturation check.

    When ``normal`` is False, ``counterexample`` is a point of the cone lattice
    at ``level`` that is not a sum of ``level`` elements of A.  ``witness``
    reproduces the explicit decomposition for any point counted normal.
    """

    normal: bool
    depth: int
    counterexample: tuple | None = None
    level: int | None = None
    _parents: dict = field(default_factory=dict, repr=False)
    _level1: frozenset = field(default_factory=frozenset, repr=False)

    def witness(self, point, level):
        point = tuple(point)
        out = []
        m = level
        while m > 1:
            try:
                prev, elem = self._parents[(m, point)]
            except KeyError:
                raise ValueError(
                    "point was not counted normal at that level") from None
            out.append(elem)
            point = prev
            m -= 1
        if point not in self._level1:
            raise ValueError("point was not counted normal at that level")
        out.append(point)
        return list(reversed(out))


def is_normal(gset, depth=5):
    """Level-by-level saturation check: for every m <= depth, each point of
    pos(A) ∩ ZA at level m must be a sum of m elements of A.

    Dynamic programming over levels; returns a NormalityReport carrying the
    first counterexample (lex-least at the lowest failing level) or parent
    links that reproduce every decomposition on demand.
    """
    pts = list(gset.points)
    za = hnf_rows(pts)
    hull = convex_hull(pts)
    aset = set(pts)
    parents = {}
    # level 1: cone points at level 1 are the lattice points of conv(A) in ZA
    frozen1 = frozenset(aset)
    level_targets = [q for q in lattice_points(hull) if in_lattice(za, q)]
    for q in level_targets:
        if q not in aset:
            return NormalityReport(False, depth, counterexample=q, level=1,
                                   _level1=frozen1)
    prev = aset
    for m in range(2, depth + 1):
        cur = {}
        for s in prev:
            for a in pts:
                t = tuple(s[i] + a[i] for i in range(len(a)))
                if t not in cur:
                    cur[t] = (s, a)
        for t, link in cur.items():
            parents[(m, t)] = link
        targets = [q for q in lattice_points(dilate(hull, m)) if in_lattice(za, q)]
        for q in targets:
            if q not in cur:
                return NormalityReport(False, depth, counterexample=q, level=m,
                                       _parents=parents, _level1=frozen1)
        prev = set(cur)
    return NormalityReport(True, depth, _parents=parents, _level1=frozen1)


# -- the prism P_d and its unimodular subdivision ---------------------------

def prism_polytope(n, d):
    """P_d = {x >= 0, x_1 + ... + x_{n-1} <= 1, x_n <= d} in R^n."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    pts = []
    bases = [tuple(0 for _ in range(n))]
    bases += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n - 1)]
    for b in bases:
        pts.append(b)
        pts.append(b[:-1] + (b[-1] + d,))
    return convex_hull(pts)


@dataclass(frozen=True)
class SimplexSubdivision:
    """A list of full-dimensional simplices, each a tuple of integer vertices."""

    simplices: tuple


def unimodular_subdivision_Pd(n, d):
    """Explicit unimodular triangulation of P_d into n·d simplices.

    The unit prism slice is split along the staircase of simplices
    S_i = conv{α_1..α_i, β_i..β_n} (α_i, β_i the bottom/top copies of the
    basis vectors), and the slices are stacked d times along x_n.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    alpha = {}
    beta = {}
    for i in range(1, n):
        e = tuple(1 if j == i - 1 else 0 for j in range(n))
        alpha[i] = e
        beta[i] = e[:-1] + (1,)
    alpha[n] = tuple(0 for _ in range(n))
    beta[n] = tuple(0 for _ in range(n - 1)) + (1,)
    slice_simplices = []
    for i in range(1, n + 1):
        verts = [alpha[j] for j in range(1, i + 1)] + [beta[j] for j in range(i, n + 1)]
        slice_simplices.append(tuple(verts))
    out = []
    for level in range(d):
        for simp in slice_simplices:
            out.append(tuple(v[:-1] + (v[-1] + level,) for v in simp))
    return SimplexSubdivision(tuple(out))


def verify_unimodular_subdivision(polytope, subdivision):
    """True iff the simplices are distinct, every one is unimodular
    (normalized volume 1 in P's induced lattice) and lies inside P, the
    volumes add up to P's normalized volume, and every pairwise intersection
    is a common face."""
    rho = polytope.dim
    seen = set()
    for simp in subdivision.simplices:
        key = frozenset(tuple(v) for v in simp)
        if key in seen:
            return False
        seen.add(key)
    coords = []
    for simp in subdivision.simplices:
        cs = []
        for v in simp:
            if len(v) != polytope.ambient_dim:
                raise DimensionMismatchError("simplex vertex dimension mismatch")
            if not polytope.contains(v):
                return False
            cs.append(polytope.induced_coords(v))
        if len(set(cs)) != rho + 1:
            return False
        base = cs[0]
        mat = [[c[k] - base[k] for k in range(rho)] for c in cs[1:]]
        if abs(det_int(mat)) != 1:
            return False
        coords.append(cs)
    if len(coords) != normalized_volume(polytope):
        return False
    for a, b in combinations(coords, 2):
        if not _share_face(a, b):
            return False
    return True


def _share_face(simp_a, simp_b):
    """Exact test that two simplices meet in a common face: a separating
    hyperplane exists that is tight exactly on the shared vertices."""
    common = set(simp_a) & set(simp_b)
    rho = len(simp_a[0])
    # unknowns: alpha (rho, split into +/-), beta (split), slack per strict row
    strict_a = [v for v in simp_a if v not in common]
    strict_b = [v for v in simp_b if v not in common]
    nfree = 2 * (rho + 1)
    nslack = len(strict_a) + len(strict_b)
    rows = []
    rhs = []

    def free_part(v):
        # alpha·v - beta with split variables
        part = []
        for k in range(rho):
            part.extend([v[k], -v[k]])
        part.extend([-1, 1])
        return part

    si = 0
    for v in strict_a:
        row = free_part(v) + [0] * nslack
        row[nfree + si] = 1
        rows.append(row)
        rhs.append(-1)
        si += 1
    for v in strict_b:
        row = free_part(v) + [0] * nslack
        row[nfree + si] = -1
        rows.append(row)
        rhs.append(1)
        si += 1
    for v in common:
        rows.append(free_part(v) + [0] * nslack)
        rhs.append(0)
    return lp_feasible(rows, rhs)
