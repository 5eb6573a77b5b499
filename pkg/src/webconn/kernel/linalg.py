"""Exact linear algebra over QQ(x, y).

Determinants, ranks and square solves clear denominators row by row and then
run Bareiss' fraction-free elimination on polynomial matrices, so every
intermediate division is an exact polynomial division.  FLINT raises on an
inexact division, which doubles as an internal consistency check.
"""
from __future__ import annotations

import random

import flint

from .poly import MPoly, RatFunc, as_ratfunc, _ONE, _ZERO
from ..errors import DegenerateInputError, DimensionError, SingularSystemError


def _lcm(a, b):
    if a.is_one():
        return b
    if b.is_one():
        return a
    g = a.gcd(b)
    return (a / g) * b


def _clear_row(row):
    """Return (polynomial row, multiplier) with poly_row == multiplier * row."""
    L = _ONE
    for e in row:
        L = _lcm(L, e._d)
    out = []
    for e in row:
        if e._n.is_zero():
            out.append(_ZERO)
        else:
            out.append(e._n * (L / e._d))
    return out, L


def _as_rows(M):
    rows = [[as_ratfunc(e) for e in row] for row in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def sylvester_matrix(f, g):
    """Sylvester matrix of two p-polynomials given by coefficient lists.

    Coefficients run from the leading one down (``f[0]`` multiplies the
    highest power).  The result has ``deg g`` rows of f-shifts followed by
    ``deg f`` rows of g-shifts.
    """
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    zero = RatFunc()
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(M) -> RatFunc:
    rows = _as_rows(M)
    n = len(rows)
    if n == 0:
        return RatFunc(1)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    A = []
    scale = _ONE
    for r in rows:
        pr, L = _clear_row(r)
        A.append(pr)
        scale = scale * L
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return RatFunc()
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = akk * row_i[j] - aik * row_k[j]
                row_i[j] = v / prev if not prev.is_one() else v
            row_i[k] = _ZERO
        prev = akk
    det = A[n - 1][n - 1]
    if sign < 0:
        det = -det
    return RatFunc(det, scale)


def resultant_p(F: MPoly, G: MPoly) -> RatFunc:
    """Resultant in p of two polynomials, as a Sylvester determinant."""
    if F.is_zero() or G.is_zero():
        raise DegenerateInputError("resultant of a zero polynomial")
    if F.degree("p") < 1 or G.degree("p") < 1:
        raise DegenerateInputError("resultant_p needs both inputs of positive degree in p")
    f = F.p_coeffs()[::-1]
    g = G.p_coeffs()[::-1]
    return bareiss_det(sylvester_matrix(f, g))


def resultant_coeffs(f, g) -> RatFunc:
    """Resultant of p-polynomials given by leading-first RatFunc coefficient lists."""
    if len(f) < 2 or len(g) < 2 or as_ratfunc(f[0]).is_zero() or as_ratfunc(g[0]).is_zero():
        raise DegenerateInputError("resultant needs leading coefficients and positive degrees")
    return bareiss_det(sylvester_matrix([as_ratfunc(c) for c in f], [as_ratfunc(c) for c in g]))


def _forward_eliminate(A, ncols):
    """In-place fraction-free row echelon form; returns pivot (row, col) pairs."""
    nrows = len(A)
    prev = _ONE
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            e = A[i][c]
            if not e.is_zero():
                size = len(e)
                if best is None or size < best:
                    piv, best = i, size
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        arc = A[r][c]
        row_r = A[r]
        for i in range(r + 1, nrows):
            row_i = A[i]
            aic = row_i[c]
            for j in range(c + 1, len(row_i)):
                v = arc * row_i[j] - aic * row_r[j]
                row_i[j] = v / prev if not prev.is_one() else v
            row_i[c] = _ZERO
        prev = arc
        pivots.append((r, c))
        r += 1
    return pivots


def solve_linear(M, b):
    """Unique solution of ``M sol = b`` over QQ(x, y)."""
    sols = solve_linear_multi(M, [[e] for e in b])
    return [row[0] for row in sols]


def solve_linear_multi(M, B):
    """Solve ``M X = B`` for a square nonsingular M and a block of columns B."""
    rows = _as_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("solve_linear needs a square matrix")
    Bm = _as_rows(B)
    if len(Bm) != n:
        raise DimensionError("right-hand side has the wrong length")
    k = len(Bm[0]) if Bm else 0
    A = []
    for r, rb in zip(rows, Bm):
        pr, _ = _clear_row(r + rb)
        A.append(pr)
    pivots = _forward_eliminate(A, n)
    if len(pivots) < n:
        raise SingularSystemError("matrix is singular over QQ(x, y)")
    X = [[None] * k for _ in range(n)]
    for i in range(n - 1, -1, -1):
        piv = RatFunc(A[i][i])
        for col in range(k):
            acc = RatFunc(A[i][n + col])
            for j in range(i + 1, n):
                if not A[i][j].is_zero():
                    acc = acc - RatFunc(A[i][j]) * X[j][col]
            X[i][col] = acc / piv
    return X


def matrix_rank(M) -> int:
    """Rank over QQ(x, y) with exact zero tests."""
    rows = _as_rows(M)
    if not rows:
        return 0
    A = [_clear_row(r)[0] for r in rows]
    full = min(len(A), len(A[0]))
    # rank at a point never exceeds the generic rank, so a full-rank
    # specialization settles the question without symbolic elimination
    if _point_rank(A, full) == full:
        return full
    return len(_forward_eliminate(A, len(A[0])))


def _point_rank(A, full: int, tries: int = 3) -> int:
    rng = random.Random(len(A) * 1009 + len(A[0]))
    zero = flint.fmpq(0)
    best = 0
    for _ in range(tries):
        qx = flint.fmpq(rng.randint(-97, 97), rng.randint(1, 13))
        qy = flint.fmpq(rng.randint(-97, 97), rng.randint(1, 13))
        vals = [e(zero, qx, qy) if not e.is_zero() else zero for r in A for e in r]
        best = max(best, flint.fmpq_mat(len(A), len(A[0]), vals).rank())
        if best == full:
            break
    return best


def _size(e: RatFunc) -> int:
    return len(e._n) + len(e._d)


def nullspace(M, column_order=None):
    """Kernel basis of M over QQ(x, y) from its reduced row echelon form.

    Columns are scanned in ``column_order`` (default: natural order); the
    columns that do not receive a pivot are the free coordinates.  Returns
    ``(free_columns, vectors)`` where ``vectors[i]`` is the kernel vector
    with a 1 in ``free_columns[i]`` and 0 in the other free columns.  The
    RREF is unique for a given column order, so the output is canonical.
    """
    rows = [{j: as_ratfunc(e) for j, e in enumerate(r) if not as_ratfunc(e).is_zero()} for r in M]
    ncols = len(M[0]) if M else 0
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivot_rows = {}
    remaining = [r for r in rows if r]
    for c in order:
        cand = [r for r in remaining if c in r]
        if not cand:
            continue
        piv = min(cand, key=lambda r: (_size(r[c]), len(r)))
        remaining = [r for r in remaining if r is not piv]
        inv = piv[c].inv()
        piv = {j: e * inv for j, e in piv.items()}
        new_remaining = []
        for r in remaining:
            f = r.get(c)
            if f is not None:
                r = _axpy(r, piv, f)
            if r:
                new_remaining.append(r)
        remaining = new_remaining
        for pc in list(pivot_rows):
            r = pivot_rows[pc]
            f = r.get(c)
            if f is not None:
                pivot_rows[pc] = _axpy(r, piv, f)
        pivot_rows[c] = piv
    free = [c for c in order if c not in pivot_rows]
    vectors = []
    for fc in free:
        v = [RatFunc()] * ncols
        v[fc] = RatFunc(1)
        for pc, r in pivot_rows.items():
            e = r.get(fc)
            if e is not None:
                v[pc] = -e
        vectors.append(v)
    return free, vectors


def _axpy(r, piv, f):
    """r - f * piv on sparse rows, dropping exact zeros."""
    out = dict(r)
    for j, e in piv.items():
        v = out.get(j, RatFunc()) - f * e
        if v.is_zero():
            out.pop(j, None)
        else:
            out[j] = v
    return out


def mat_vec(M, v):
    out = []
    for row in M:
        acc = RatFunc()
        for a, b in zip(row, v):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out
