"""Modular + p-adic lifting backend for large exact sparse linear systems.

The strategy: row-reduce the integer system modulo a fixed 24-bit prime to
discover the pivot structure, then lift a candidate rational solution with
Dixon's p-adic iteration and rational reconstruction.  A candidate solution
is checked exactly over the rationals before being reported; when the
modular reduction looks inconsistent, a Fredholm witness (y with y^T A = 0,
y^T b = 1) is lifted and checked exactly instead.  Anything that cannot be
certified exactly is reported as a failure so the caller can fall back to
direct exact elimination; this module never returns an unverified answer.

All numpy arithmetic stays within int64: the prime is below 2^24, matrix
entries are capped at 2^24, and row counts are capped so no accumulated
value can reach 2^63.  Eliminations defer the modulo to the pivot row and
column only (each Schur update subtracts less than 2^48 per step, so 2^13
steps stay above -2^61).  The lifting loop tries rational reconstruction at
geometrically spaced checkpoints, prefiltered by an independent prime, so
solutions with small numerators and denominators exit early.
"""

from fractions import Fraction
from math import isqrt

import numpy as np

PRIME = 16777213          # largest prime below 2^24
_CHECK_PRIME = 16777199   # second prime, used only to prefilter candidates
_MAX_ROWS = 8192          # keeps int64 dot products overflow-free
_MAX_ENTRY = 1 << 24
_MAX_RHS = 1 << 40
_MAX_DIGITS = 4000


def _lu_mod(A, p):
    """In-place LU with partial pivoting modulo p.  Returns (LU, perm) with
    the unit-lower factors stored below the diagonal, or None if singular."""
    LU = A % p
    r = LU.shape[0]
    perm = list(range(r))
    for k in range(r):
        col = LU[k:, k] % p
        LU[k:, k] = col
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return None
        pr = k + int(nz[0])
        if pr != k:
            LU[[k, pr]] = LU[[pr, k]]
            perm[k], perm[pr] = perm[pr], perm[k]
        LU[k, k:] %= p
        inv = pow(int(LU[k, k]), p - 2, p)
        if k + 1 < r:
            LU[k + 1:, k] = (LU[k + 1:, k] * inv) % p
            LU[k + 1:, k + 1:] -= np.outer(LU[k + 1:, k], LU[k, k + 1:])
    LU %= p
    return LU, perm


def _lu_solve(LU, perm, c, p):
    """Solve the permuted triangular system for one right-hand side mod p."""
    r = LU.shape[0]
    y = c[perm] % p
    for k in range(1, r):
        y[k] = (y[k] - int(np.dot(LU[k, :k], y[:k]))) % p
    x = np.zeros(r, dtype=np.int64)
    for k in range(r - 1, -1, -1):
        acc = int(np.dot(LU[k, k + 1:], x[k + 1:])) if k + 1 < r else 0
        x[k] = ((int(y[k]) - acc) * pow(int(LU[k, k]), p - 2, p)) % p
    return x


def _row_echelon(A, p):
    """Row echelon form mod p.  Returns (pivcols, pivrows) where pivrows
    indexes the *original* rows supplying each pivot."""
    M = A % p
    rows, cols = M.shape
    perm = list(range(rows))
    piv_cols = []
    piv_rows = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = M[r:, c] % p
        M[r:, c] = col
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
            perm[r], perm[pr] = perm[pr], perm[r]
        M[r, :] %= p
        inv = pow(int(M[r, c]), p - 2, p)
        M[r, c:] = (M[r, c:] * inv) % p
        if r + 1 < rows:
            M[r + 1:, :] -= np.outer(M[r + 1:, c], M[r, :])
        piv_cols.append(c)
        piv_rows.append(perm[r])
        r += 1
    return piv_cols, piv_rows


def _rational_reconstruct(x, modulus):
    """Classic half-gcd rational reconstruction; returns a Fraction or None."""
    bound = isqrt(modulus // 2)
    a, b = modulus, x % modulus
    pa, pb = 0, 1
    while b > bound:
        q = a // b
        a, b = b, a - q * b
        pa, pb = pb, pa - q * pb
    if pb == 0 or abs(pb) > bound:
        return None
    num, den = b, pb
    if den < 0:
        num, den = -num, -den
    if (den * x - num) % modulus != 0:
        return None
    return Fraction(num, den)


def _hadamard_digits(S, rhs, p):
    """Number of p-adic digits sufficient for rational reconstruction of the
    Cramer solution of S x = rhs (Hadamard bounds on numerator/denominator)."""
    den2 = 1
    num2 = 1
    for i in range(S.shape[0]):
        row = [int(v) for v in S[i]]
        norm = sum(v * v for v in row)
        den2 *= max(norm, 1)
        num2 *= max(norm + int(rhs[i]) * int(rhs[i]), 1)
    # |den| <= sqrt(den2), |num| <= sqrt(num2).  The reconstructor uses the
    # symmetric cutoff sqrt(p^k / 2) for both parts, so the modulus must
    # clear 2 * max(num, den)^2, not merely 2 * num * den.
    target = 2 * max(isqrt(num2) + 1, isqrt(den2) + 1) ** 2
    k = 1
    pk = p
    while pk <= target:
        pk *= p
        k += 1
    return k + 1


def _candidate_ok_mod_q(S, rhs, cand, q):
    """Cheap prefilter: does the reconstructed candidate satisfy the square
    system modulo an independent prime q?"""
    xq = np.zeros(S.shape[0], dtype=np.int64)
    for i, f in enumerate(cand):
        d = f.denominator % q
        if d == 0:
            return False
        xq[i] = (f.numerator % q) * pow(d, q - 2, q) % q
    lhs = (S % q) @ xq % q
    want = np.array([int(v) % q for v in rhs], dtype=np.int64)
    return bool(np.array_equal(lhs, want))


def _dixon_solve(S, rhs, p):
    """Exact rational solution of the square nonsingular system S x = rhs by
    p-adic lifting.  Returns a list of Fractions or None on any failure.

    Reconstruction is attempted at geometrically spaced digit counts so that
    solutions with small height return early; each early candidate must pass
    an independent-prime check before being accepted."""
    r = S.shape[0]
    lu = _lu_mod(S.copy(), p)
    if lu is None:
        return None
    LU, perm = lu
    k_max = _hadamard_digits(S, rhs, p)
    if k_max > _MAX_DIGITS:
        return None
    checkpoints = []
    c = 8
    while c < k_max:
        checkpoints.append(c)
        c *= 2
    checkpoints.append(k_max)
    acc = [0] * r
    pw = 1
    residual = [int(v) for v in rhs]
    done = 0
    for k in checkpoints:
        while done < k:
            cvec = np.array([v % p for v in residual], dtype=np.int64)
            x = _lu_solve(LU, perm, cvec, p)
            Sx = S @ x
            residual = [(residual[i] - int(Sx[i])) // p for i in range(r)]
            if any(abs(v) > (1 << 62) for v in residual):
                return None
            for i in range(r):
                acc[i] += int(x[i]) * pw
            pw *= p
            done += 1
        modulus = pw
        cand = []
        for i in range(r):
            f = _rational_reconstruct(acc[i] % modulus, modulus)
            if f is None:
                break
            cand.append(f)
        if len(cand) < r:
            continue
        if k < k_max and not _candidate_ok_mod_q(S, rhs, cand, _CHECK_PRIME):
            continue
        return cand
    return None


def _check_bounds(rows, rhs, nrows):
    if nrows > _MAX_ROWS:
        return False
    for row in rows:
        for v in row.values():
            if abs(v) >= _MAX_ENTRY:
                return False
    for v in rhs:
        if abs(v) >= _MAX_RHS:
            return False
    return True


def _dense(rows, rhs, ncols):
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            A[i, c] = v
    b = np.array([int(v) for v in rhs], dtype=np.int64)
    return A, b


def _exact_residual_ok(rows, rhs, xs):
    """Exact check of a candidate solution on every row (bigint/Fraction)."""
    for row, b in zip(rows, rhs):
        acc = Fraction(0)
        for c, v in row.items():
            xc = xs.get(c)
            if xc is not None:
                acc += v * xc
        if acc != b:
            return False
    return True


def solve_system_modular(rows, rhs, ncols):
    """Decide the integer sparse system exactly via the modular route.

    rows: list of {col: int}; rhs: list of int.
    Returns ("solution", {col: Fraction}), ("infeasible", None), or
    ("fail", reason) when this route cannot certify an answer.
    """
    nrows = len(rows)
    if ncols == 0:
        if all(v == 0 for v in rhs):
            return ("solution", {})
        return ("infeasible", None)
    if not _check_bounds(rows, rhs, nrows):
        return ("fail", "entries out of modular range")
    A, b = _dense(rows, rhs, ncols)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    piv_cols, piv_rows = _row_echelon(aug, PRIME)
    if ncols in piv_cols:
        # looks inconsistent mod p: certify with an exact Fredholm witness
        return _certify_infeasible(rows, rhs, A, b, piv_cols, piv_rows)
    if not piv_cols:
        # A == 0 mod p; decide exactly
        if all(not row for row in rows):
            if all(v == 0 for v in rhs):
                return ("solution", {})
            return ("infeasible", None)
        return ("fail", "zero reduction mod p but nonzero entries")
    S = A[np.ix_(piv_rows, piv_cols)]
    sub_rhs = b[piv_rows]
    sol = _dixon_solve(S, sub_rhs, PRIME)
    if sol is None:
        return ("fail", "lifting failed")
    xs = {piv_cols[i]: sol[i] for i in range(len(piv_cols)) if sol[i] != 0}
    if not _exact_residual_ok(rows, rhs, xs):
        return ("fail", "candidate solution failed exact check")
    return ("solution", xs)


def _certify_infeasible(rows, rhs, A, b, piv_cols, piv_rows):
    """Look for y with y^T A = 0 and y^T b = 1, checked exactly.

    The forward echelon hit a pivot in the right-hand-side column, so the
    witness is supported on the pivot rows.  Restricting the transposed
    system to those rows and to the pivot columns (with the rhs column
    standing in for the inconsistent pivot) gives a square system that the
    lifting backend can solve."""
    # rhs values become matrix entries here, so the tighter entry cap applies
    if any(abs(int(v)) >= _MAX_ENTRY for v in b[piv_rows]):
        return ("fail", "rhs out of range for witness system")
    # last pivot is the rhs column; its row completes the support of y
    cols_a = piv_cols[:-1]
    sub = np.concatenate(
        [A[np.ix_(piv_rows, cols_a)], b[piv_rows].reshape(-1, 1)], axis=1)
    m = sub.shape[0]
    if sub.shape[1] != m:
        return ("fail", "no liftable infeasibility witness")
    e = np.zeros(m, dtype=np.int64)
    e[m - 1] = 1
    sol = _dixon_solve(np.ascontiguousarray(sub.T), e, PRIME)
    if sol is None:
        return ("fail", "witness lifting failed")
    y = {piv_rows[i]: sol[i] for i in range(m) if sol[i] != 0}
    # exact check: y^T A = 0 per column, y^T b = 1
    col_acc = {}
    for r_idx, row in enumerate(rows):
        yr = y.get(r_idx)
        if yr is None:
            continue
        for c, v in row.items():
            col_acc[c] = col_acc.get(c, Fraction(0)) + yr * v
    if any(v != 0 for v in col_acc.values()):
        return ("fail", "witness failed exact check")
    dot_b = sum(y[r] * rhs[r] for r in y)
    if dot_b != 1:
        return ("fail", "witness failed exact check")
    return ("infeasible", None)
