"""The connection attached to a d-web and its curvature.

Abelian relations correspond to solutions (b_3, ..., b_d) of a first order
linear system with d-1 equations.  Its prolongation to jets of order d-2
has a kernel E of rank pi_d, and the Spencer operator D composed with the
inverse of the order-drop isomorphism gives a connection on E.  The
engine below works over any coefficient field given through an ``Ops``
object, so the same code runs on rational functions and on symbolic
expressions in tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .assoc import all_associated_polynomials, fundamental_form, linearization_polynomial
from .errors import AdaptedBasisError, ConstructionError, ProlongationError, UnsupportedDegreeError
from .kernel import Form1, Form2, FormMatrix, RatFunc, nullspace
from .kernel import ppoly
from .webdef import WebEquation, pi_d

MAX_SUPPORTED_DEGREE = 6


class Ops:
    """Field hooks for the engine; the default works on RatFunc."""

    def zero(self):
        return RatFunc()

    def one(self):
        return RatFunc(1)

    def diff(self, e, var):
        return e.diff(var)

    def is_zero(self, e) -> bool:
        return e.is_zero()

    def size(self, e) -> int:
        """Cost estimate used to pick pivots."""
        return len(e.num._f) + len(e.den._f)


RATIONAL = Ops()


# -- jets --------------------------------------------------------------------

def multi_indices(order: int):
    """(a, b) standing for d^a/dx^a d^b/dy^b, graded with x first."""
    out = []
    for k in range(order + 1):
        for a in range(k, -1, -1):
            out.append((a, k - a))
    return out


class JetLayout:
    """Flat coordinates b_{c+3}^(alpha) for components c and |alpha| <= order."""

    def __init__(self, n: int, order: int):
        self.n = n
        self.order = order
        self.mis = multi_indices(order)
        self.block = len(self.mis)
        self._pos = {mi: k for k, mi in enumerate(self.mis)}

    @property
    def size(self) -> int:
        return self.n * self.block

    def index(self, c: int, mi) -> int:
        return c * self.block + self._pos[mi]

    def coords(self):
        for c in range(self.n):
            for mi in self.mis:
                yield c, mi


def _shift(mi, var):
    return (mi[0] + 1, mi[1]) if var == "x" else (mi[0], mi[1] + 1)


def base_equations(A, ops=RATIONAL):
    """The system as linear forms {(component, multi-index): coefficient}.

    Row m reads d_x b_(d-m+1) + d_y b_(d-m+2) + sum_j A[m][j] b_(j+3) with
    the derivative terms present only when the index lies in 3..d.
    """
    rows = len(A)
    d = rows + 1
    n = d - 2
    eqs = []
    for m in range(1, d):
        form = {}
        if m <= d - 2:
            form[(d - m + 1 - 3, (1, 0))] = ops.one()
        if m >= 2:
            form[(d - m + 2 - 3, (0, 1))] = ops.one()
        for c in range(n):
            a = A[m - 1][c]
            if not ops.is_zero(a):
                form[(c, (0, 0))] = a
        eqs.append(form)
    return eqs


def _total_derivative(form, var, ops):
    out = {}
    for (c, mi), a in form.items():
        key = (c, _shift(mi, var))
        out[key] = out[key] + a if key in out else a
        da = ops.diff(a, var)
        if not ops.is_zero(da):
            k0 = (c, mi)
            out[k0] = out[k0] + da if k0 in out else da
    return {k: v for k, v in out.items() if not ops.is_zero(v)}


def prolongation(A, k: int, ops=RATIONAL):
    """Rows of the k-th prolongation p_k, each a linear form on jets of order k+1."""
    eqs = base_equations(A, ops)
    rows = []
    for form in eqs:
        cache = {(0, 0): form}
        for mi in multi_indices(k):
            if mi in cache:
                continue
            if mi[1] > 0:
                cache[mi] = _total_derivative(cache[(mi[0], mi[1] - 1)], "y", ops)
            else:
                cache[mi] = _total_derivative(cache[(mi[0] - 1, 0)], "x", ops)
        rows.extend(cache[mi] for mi in multi_indices(k))
    return rows


def prolongation_matrix(A, k: int, ops=RATIONAL):
    n = len(A[0])
    layout = JetLayout(n, k + 1)
    M = []
    for form in prolongation(A, k, ops):
        row = [ops.zero()] * layout.size
        for (c, mi), a in form.items():
            row[layout.index(c, mi)] = a
        M.append(row)
    return M, layout


# -- generic elimination -------------------------------------------------------

def solve_columns(M, B, ops=RATIONAL):
    """Solve M X = B for a full column rank M; inconsistent rows raise."""
    rows = [list(r) + list(b) for r, b in zip(M, B)]
    ncols = len(M[0])
    width = ncols + len(B[0])
    pivots = []
    remaining = rows
    for c in range(ncols):
        cand = [r for r in remaining if not ops.is_zero(r[c])]
        if not cand:
            raise ConstructionError("projected basis is not independent")
        piv = min(cand, key=lambda r: ops.size(r[c]))
        remaining = [r for r in remaining if r is not piv]
        inv = ops.one() / piv[c]
        piv = [e * inv for e in piv]
        for t in range(len(remaining)):
            r = remaining[t]
            f = r[c]
            if not ops.is_zero(f):
                remaining[t] = [r[j] - f * piv[j] for j in range(width)]
        for t in range(len(pivots)):
            r = pivots[t]
            f = r[c]
            if not ops.is_zero(f):
                pivots[t] = [r[j] - f * piv[j] for j in range(width)]
        pivots.append(piv)
    for r in remaining:
        if any(not ops.is_zero(e) for e in r[ncols:]):
            raise ConstructionError("Spencer image does not lie in the projected bundle")
    return [r[ncols:] for r in pivots]


# -- connection engine ---------------------------------------------------------

def classical_basis_4web(A, ops=RATIONAL):
    """The classical adapted basis for d = 4, in the layout of ``JetLayout(2, 2)``."""
    (A11, A12), (A21, A22), (A31, A32) = A
    dx = lambda e: ops.diff(e, "x")  # noqa: E731
    dy = lambda e: ops.diff(e, "y")  # noqa: E731
    z = ops.zero()
    one = ops.one()
    e1 = [z, -one, z, A21 + A12, A31, -A32,
          z, z, one, A11, -A12, -A22 - A31]
    e2 = [-one, A21, A31,
          -dy(A11) + dx(A21) - A21 * A21 - A11 * (A22 - A31),
          -A31 * A21 - A32 * A11 + dx(A31),
          -A31 * A31 + dy(A31),
          z, A11, z,
          -A11 * (A21 + A12) + dx(A11),
          -A11 * A31 + dy(A11),
          -dx(A31) + dy(A21) + A32 * A11]
    e3 = [z, z, -A32,
          dy(A12) - dx(A22) - A11 * A32,
          A32 * A12 - dx(A32),
          A32 * (A31 + A22) - dy(A32),
          one, -A12, -A22,
          A12 * A12 - dx(A12),
          A11 * A32 + A12 * A22 - dy(A12),
          A32 * (A21 - A12) + A22 * A22 + dx(A32) - dy(A22)]
    return [e1, e2, e3]


def echelon_basis(A):
    """Kernel of p_(d-3) with low-order jets free; first vector spans the symbol line."""
    d = len(A) + 1
    M, layout = prolongation_matrix(A, d - 3)
    order = sorted(range(layout.size),
                   key=lambda i: (-sum(layout.mis[i % layout.block]), i))
    free, vecs = nullspace(M, order)
    if len(vecs) != pi_d(d):
        raise ProlongationError(
            f"prolonged system has a kernel of dimension {len(vecs)}, expected {pi_d(d)}")
    jet_order = [sum(layout.mis[f % layout.block]) for f in free]
    top = [k for k, o in enumerate(jet_order) if o == d - 3]
    if len(top) != 1:
        raise AdaptedBasisError(f"expected one free jet of order {d - 3}, found {len(top)}")
    rest = sorted((k for k in range(len(free)) if k != top[0]),
                  key=lambda k: (jet_order[k], free[k]))
    perm = [top[0]] + rest
    return [vecs[k] for k in perm], [free[k] for k in perm], layout


def spencer(e, layout: JetLayout, var: str, ops=RATIONAL):
    """Component of D e along d var, as jets of order layout.order - 1."""
    low = JetLayout(layout.n, layout.order - 1)
    out = []
    for c, mi in low.coords():
        out.append(ops.diff(e[layout.index(c, mi)], var) - e[layout.index(c, _shift(mi, var))])
    return out


def project(e, layout: JetLayout):
    low = JetLayout(layout.n, layout.order - 1)
    return [e[layout.index(c, mi)] for c, mi in low.coords()]


def connection_components(basis, layout: JetLayout, ops=RATIONAL):
    """dx- and dy-coefficient matrices of gamma, with nabla e_j = sum_i gamma_ij e_i."""
    r = len(basis)
    proj = [project(e, layout) for e in basis]
    Pi = [[proj[i][k] for i in range(r)] for k in range(len(proj[0]))]
    rhs_cols = [spencer(e, layout, "x", ops) for e in basis] + [spencer(e, layout, "y", ops) for e in basis]
    B = [[col[k] for col in rhs_cols] for k in range(len(proj[0]))]
    X = solve_columns(Pi, B, ops)
    gx = [[X[i][j] for j in range(r)] for i in range(r)]
    gy = [[X[i][r + j] for j in range(r)] for i in range(r)]
    return gx, gy


def curvature_components(gx, gy, ops=RATIONAL):
    """dx^dy coefficients of d(gamma) + gamma ^ gamma."""
    r = len(gx)
    K = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = ops.diff(gy[i][j], "x") - ops.diff(gx[i][j], "y")
            for k in range(r):
                if not (ops.is_zero(gx[i][k]) or ops.is_zero(gy[k][j])):
                    acc = acc + gx[i][k] * gy[k][j]
                if not (ops.is_zero(gy[i][k]) or ops.is_zero(gx[k][j])):
                    acc = acc - gy[i][k] * gx[k][j]
            row.append(acc)
        K.append(row)
    return K


def trace_components(A, ops=RATIONAL):
    """dx and dy coefficients of a representative of tr(gamma).

    Staircase sum over k = 0..d-3 and q = k+1..d-2 of
    A[d-q-1][q] dx + A[d-q+k][q-k] dy (1-based entries).
    """
    d = len(A) + 1
    a = lambda i, j: A[i - 1][j - 1]  # noqa: E731
    tx, ty = ops.zero(), ops.zero()
    for k in range(d - 2):
        for q in range(k + 1, d - 1):
            tx = tx + a(d - q - 1, q)
            ty = ty + a(d - q + k, q - k)
    return tx, ty


# -- web level API -------------------------------------------------------------

@dataclass(frozen=True)
class SystemMatrix:
    A: tuple  # (d-1) rows of (d-2) RatFunc

    def __getitem__(self, ij):
        i, j = ij
        return self.A[i - 1][j - 1]

    def rows(self):
        return [list(r) for r in self.A]


@dataclass(frozen=True)
class ConnectionData:
    basis: tuple
    free_coordinates: tuple
    gamma: FormMatrix
    K: FormMatrix
    k_row: tuple

    @property
    def k1(self) -> RatFunc:
        return self.k_row[0]


def _check_degree(d: int, experimental: bool):
    if d > MAX_SUPPORTED_DEGREE and not experimental:
        raise UnsupportedDegreeError(
            f"degree {d} exceeds {MAX_SUPPORTED_DEGREE}; pass experimental=True to try anyway")


def _closed_form_4(web):
    al = fundamental_form(web)
    v = [None] + [-e for e in linearization_polynomial(web).P]
    return [[-v[4], al.A1], [al.A1 - v[3], al.A2], [al.A2 - v[2], v[1]]]


def _closed_form_5(web):
    al = fundamental_form(web)
    v = [None] + [-e for e in linearization_polynomial(web).P]
    a = web.coeffs
    r = [None] + [a[i] / a[0] for i in range(1, 6)]
    A1, A2 = al.A1, al.A2
    return [
        [r[5] * v[1], -v[5], A1],
        [-2 * v[5] + r[4] * v[1], A1 - v[4], A2],
        [A1 - 2 * v[4] + r[3] * v[1], A2 - v[3], 2 * v[2] - r[1] * v[1]],
        [A2 - 2 * v[3] + r[2] * v[1], v[2] - r[1] * v[1], v[1]],
    ]


@lru_cache(maxsize=256)
def system_matrix(web: WebEquation) -> SystemMatrix:
    """Coefficients A_ij of the system, from r(d_xF + p d_yF) = U_r F + V_r F_p."""
    d = web.d
    pairs = all_associated_polynomials(web)
    A = []
    for m in range(1, d):
        row = []
        for jp in range(1, d - 1):
            pair = pairs[d - jp - 2]
            row.append(-(ppoly.coeff(pair.U_poly, m - 1) + ppoly.coeff(ppoly.dp(pair.V_poly), m - 1)))
        A.append(tuple(row))
    closed = {4: _closed_form_4, 5: _closed_form_5}.get(d)
    if closed is not None and closed(web) != [list(r) for r in A]:
        raise ConstructionError(f"system matrix disagrees with the closed form for d = {d}")
    return SystemMatrix(tuple(A))


@lru_cache(maxsize=128)
def adapted_basis(web: WebEquation, experimental: bool = False):
    """(basis, free coordinates, layout) of E in jets of order d-2."""
    _check_degree(web.d, experimental)
    A = system_matrix(web).rows()
    if web.d == 4:
        basis = classical_basis_4web(A)
        M, layout = prolongation_matrix(A, 1)
        for e in basis:
            for row in M:
                acc = RatFunc()
                for a, b in zip(row, e):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                if not acc.is_zero():
                    raise ProlongationError("classical 4-web basis is not in the prolonged kernel")
        return tuple(tuple(e) for e in basis), (), layout
    basis, free, layout = echelon_basis(A)
    return tuple(tuple(e) for e in basis), tuple(free), layout


@lru_cache(maxsize=128)
def connection_matrix(web: WebEquation, experimental: bool = False) -> FormMatrix:
    basis, _, layout = adapted_basis(web, experimental)
    gx, gy = connection_components([list(e) for e in basis], layout)
    return FormMatrix.from_components(gx, gy)


@lru_cache(maxsize=128)
def curvature(web: WebEquation, experimental: bool = False) -> ConnectionData:
    basis, free, _ = adapted_basis(web, experimental)
    gamma = connection_matrix(web, experimental)
    K = curvature_components(gamma.x_part(), gamma.y_part())
    for i in range(1, len(K)):
        if any(not e.is_zero() for e in K[i]):
            raise AdaptedBasisError(f"curvature row {i + 1} is not zero in the adapted basis")
    Km = FormMatrix([[Form2(e) for e in r] for r in K])
    return ConnectionData(basis, free, gamma, Km, tuple(K[0]))


def trace_curvature(web: WebEquation) -> RatFunc:
    """k_1 = d(tr gamma), from the system matrix alone."""
    tx, ty = trace_components(system_matrix(web).rows())
    return ty.diff("x") - tx.diff("y")


def trace_form(web: WebEquation) -> Form1:
    return Form1(*trace_components(system_matrix(web).rows()))


def normal_basis_curvature_4web(web: WebEquation):
    """First curvature row after the normalizing change of basis (d = 4 only)."""
    if web.d != 4:
        raise UnsupportedDegreeError(f"normal basis is defined for 4-webs only, got d = {web.d}")
    k1, k2, k3 = curvature(web).k_row
    v = [None] + [-e for e in linearization_polynomial(web).P]
    lin = linearization_polynomial(web)
    n2 = 3 * k2 - v[3] * k1
    n3 = 3 * k3 + v[2] * k1
    if n2 != k1.diff("x") + lin.L1 or n3 != k1.diff("y") + lin.L2:
        raise ConstructionError("normalized curvature disagrees with the linearizability obstructions")
    return (k1, n2, n3)
