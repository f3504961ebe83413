"""Integer lattice kernels: HNF, kernels, saturation, determinants, LP."""

import random
from fractions import Fraction

from nullcert._intlinalg import (
    det_int,
    hnf_rows,
    hnf_solve,
    in_lattice,
    kernel_basis,
    lp_feasible,
    primitive_vector,
    saturation_basis,
    solve_rational,
    vec_gcd,
)
from helpers import ref_dense_solve


def _rand_mat(rng, m, n, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def _pivot(row):
    for j, v in enumerate(row):
        if v:
            return j
    return None


def test_vec_gcd_and_primitive():
    assert vec_gcd([4, -6, 8]) == 2
    assert vec_gcd([0, 0]) == 0
    assert primitive_vector([4, -6, 8]) == (2, -3, 4)
    assert primitive_vector([0, 5, 0]) == (0, 1, 0)


def test_hnf_known_case():
    H = hnf_rows([[2, 4], [3, 5]])
    assert H == [(1, 1), (0, 2)]
    # the classical (2,4),(3,5) lattice has index |det| = 2
    assert abs(det_int([[2, 4], [3, 5]])) == 2
    assert abs(det_int([list(r) for r in H])) == 2


def test_hnf_is_echelon_with_positive_pivots_and_reduced_columns():
    rng = random.Random(2024)
    for _ in range(30):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = _rand_mat(rng, m, n)
        H = hnf_rows(rows)
        pivots = [_pivot(r) for r in H]
        assert None not in pivots
        assert pivots == sorted(set(pivots))
        for i, r in enumerate(H):
            p = pivots[i]
            assert r[p] > 0
            for k in range(i):
                assert 0 <= H[k][p] < r[p]


def test_hnf_is_canonical_under_row_shuffles():
    rng = random.Random(66)
    for _ in range(20):
        m, n = rng.randint(2, 4), rng.randint(2, 4)
        rows = _rand_mat(rng, m, n)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert hnf_rows(rows) == hnf_rows(shuffled)


def test_hnf_preserves_the_row_lattice():
    rng = random.Random(515)
    for _ in range(25):
        m, n = rng.randint(1, 4), rng.randint(2, 4)
        rows = _rand_mat(rng, m, n)
        H = hnf_rows(rows)
        # every original row lies in the HNF lattice
        for r in rows:
            assert in_lattice(H, r)
        # random integer combinations of original rows do too
        for _ in range(5):
            cs = [rng.randint(-3, 3) for _ in rows]
            combo = [sum(c * r[j] for c, r in zip(cs, rows)) for j in range(n)]
            assert in_lattice(H, combo)


def test_hnf_solve_round_trip():
    H = hnf_rows([[1, 2, 0], [0, 0, 3]])
    coords = hnf_solve(H, [2, 4, 3])
    assert coords is not None
    recon = [sum(c * H[i][j] for i, c in enumerate(coords)) for j in range(3)]
    assert recon == [2, 4, 3]
    assert hnf_solve(H, [0, 1, 0]) is None
    assert hnf_solve(H, [1, 2, 1]) is None


def test_kernel_basis_annihilates_and_has_right_rank():
    rng = random.Random(808)
    for _ in range(25):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        mat = _rand_mat(rng, m, n)
        ker = kernel_basis(mat, n)
        for v in ker:
            for row in mat:
                assert sum(a * b for a, b in zip(row, v)) == 0
        # rank-nullity against a Fraction elimination rank
        rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in mat]
        rank = sum(1 for r in hnf_rows(mat) if any(r))
        assert len(ker) == n - rank


def test_kernel_of_injective_map_is_trivial():
    assert kernel_basis([[1, 0], [0, 1], [3, 7]], 2) == []


def test_saturation_basis_divides_out_content():
    S = saturation_basis([[2, 0], [0, 2]], 2)
    assert in_lattice(hnf_rows(S), [1, 0])
    assert in_lattice(hnf_rows(S), [0, 1])
    S2 = saturation_basis([[2, 4]], 2)
    H2 = hnf_rows(S2)
    assert in_lattice(H2, [1, 2])
    assert not in_lattice(H2, [1, 0])


def test_saturation_contains_rational_multiples():
    rng = random.Random(99)
    for _ in range(20):
        n = rng.randint(2, 4)
        m = rng.randint(1, n)
        rows = _rand_mat(rng, m, n, -4, 4)
        S = hnf_rows(saturation_basis(rows, n))
        for r in rows:
            assert in_lattice(S, r)
            half = [v // 2 for v in r]
            if all(2 * h == v for h, v in zip(half, r)) and any(half):
                assert in_lattice(S, half)


def test_det_known_values():
    assert det_int([]) == 1
    assert det_int([[7]]) == 7
    assert det_int([[1, 2], [3, 4]]) == -2
    assert det_int([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    assert det_int([[1, 2], [2, 4]]) == 0


def test_det_matches_cofactor_expansion():
    rng = random.Random(31337)

    def cof_det(a):
        n = len(a)
        if n == 1:
            return a[0][0]
        out = 0
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            out += (-1) ** j * a[0][j] * cof_det(minor)
        return out

    for _ in range(20):
        n = rng.randint(1, 4)
        a = _rand_mat(rng, n, n)
        assert det_int(a) == cof_det(a)


def test_det_alternating_under_row_swap():
    a = [[1, 2, 3], [0, 1, 4], [5, 6, 0]]
    b = [a[1], a[0], a[2]]
    assert det_int(a) == -det_int(b)


def test_solve_rational_against_dense_reference():
    rng = random.Random(4242)
    for _ in range(25):
        n = rng.randint(1, 4)
        mat = _rand_mat(rng, n, n)
        rhs = [rng.randint(-5, 5) for _ in range(n)]
        got = solve_rational(mat, rhs)
        rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in mat]
        ref = ref_dense_solve(rows, [Fraction(b) for b in rhs], n)
        if det_int(mat) == 0:
            assert got is None
        else:
            assert got is not None and ref is not None
            assert got == ref


def test_lp_feasible_hand_cases():
    # x + y = 1, x,y >= 0: feasible
    assert lp_feasible([[1, 1]], [1])
    # x + y = -1 with x,y >= 0: infeasible
    assert not lp_feasible([[1, 1]], [-1])
    # x - y = 0 and x + y = 2: x = y = 1
    assert lp_feasible([[1, -1], [1, 1]], [0, 2])
    # contradictory pair
    assert not lp_feasible([[1, 0], [1, 0]], [1, 2])
    # no constraints at all
    assert lp_feasible([], [])


def test_lp_feasible_simplex_membership():
    # q in conv{(0,0),(2,0),(0,2)} iff barycentric weights exist
    verts = [(0, 0), (2, 0), (0, 2)]
    inside = [(0, 0), (1, 1), (1, 0)]
    outside = [(2, 1), (-1, 0), (2, 2)]
    for q, expect in [(p, True) for p in inside] + [(p, False) for p in outside]:
        a_eq = [
            [v[0] for v in verts],
            [v[1] for v in verts],
            [1, 1, 1],
        ]
        b_eq = [q[0], q[1], 1]
        assert lp_feasible(a_eq, b_eq) == expect
