"""Shared fixtures and sympy oracles for the test suite."""
from __future__ import annotations

import random

import sympy as sp

from webconn import conn, webdef
from webconn.errors import NonReducedWebError
from webconn.kernel import P as PP, RatFunc, X, Y

sx, sy, sp_p = sp.symbols("x y p")
x = RatFunc(X)
y = RatFunc(Y)
ONE = RatFunc(1)


def const(c) -> RatFunc:
    return RatFunc(c)


def to_sympy(f) -> sp.Expr:
    """Any object whose str() uses ^ for powers, as a sympy expression."""
    return sp.sympify(str(f).replace("^", "**"), locals={"x": sx, "y": sy, "p": sp_p})


def sym_equal(a, b) -> bool:
    return sp.simplify(sp.together(a - b)) == 0


def section8():
    """The quartic p^4 + y^2 p^2 - y p, base point (0, 1)."""
    return webdef.from_polynomial(PP ** 4 + Y ** 2 * PP ** 2 - Y * PP, (0, 1))


# -- independent oracles -----------------------------------------------------

FIELD = sp.QQ.frac_field(sx, sy)


def _ppoly(e):
    return sp.Poly(e, sp_p, domain=FIELD)


def oracle_uv(slopes):
    """(U, V) of order 0 for prod(p - p_i), as sympy Polys in p over QQ(x, y).

    V is the Lagrange interpolant of degree < d with
    V(p_i) = -(d_x p_i + p_i d_y p_i); U is then the exact quotient
    (F_x + p F_y - V F_p) / F.
    """
    s = [to_sympy(e) for e in slopes]
    F = _ppoly(sp.prod([sp_p - e for e in s]))
    V = _ppoly(0)
    for i, si in enumerate(s):
        term = _ppoly(-(sp.diff(si, sx) + si * sp.diff(si, sy)))
        for j, sj in enumerate(s):
            if j != i:
                term = term * _ppoly(sp_p - sj) * _ppoly(1 / (si - sj))
        V = V + term
    Fe = F.as_expr()
    lhs = _ppoly(sp.diff(Fe, sx) + sp_p * sp.diff(Fe, sy))
    U, rem = (lhs - V * F.diff(sp_p)).div(F)
    assert rem.is_zero
    return U, V, F


def p_coeff(poly, k):
    return sp.cancel(poly.as_expr().coeff(sp_p, k)) if k > 0 else sp.cancel(poly.as_expr().subs(sp_p, 0))


def oracle_alpha(slopes):
    """(A_1, A_2) from the oracle U, V; U = u_2 p^(d-2) + ... + u_d, V = v_1 p^(d-1) + ... + v_d."""
    d = len(slopes)
    U, V, _ = oracle_uv(slopes)
    u = lambda j: p_coeff(U, d - j)  # noqa: E731
    v = lambda j: p_coeff(V, d - j)  # noqa: E731
    return sp.cancel(-(u(d) + v(d - 1))), sp.cancel(-(u(d - 1) + 2 * v(d - 2)))


def oracle_dalpha(slopes):
    A1, A2 = oracle_alpha(slopes)
    return sp.cancel(sp.diff(A2, sx) - sp.diff(A1, sy))


class SymOps(conn.Ops):
    """Engine hooks over sympy expressions in x, y."""

    def zero(self):
        return sp.Integer(0)

    def one(self):
        return sp.Integer(1)

    def diff(self, e, var):
        return sp.diff(e, sx if var == "x" else sy)

    def is_zero(self, e) -> bool:
        return sp.expand(e) == 0

    def size(self, e) -> int:
        return sp.count_ops(e)


# -- random webs -----------------------------------------------------------------

def random_poly(rng, xy=True):
    f = const(rng.randint(-3, 3)) + rng.randint(-2, 2) * x + rng.randint(-2, 2) * y
    if xy:
        f = f + rng.choice([0, 0, 1, -1]) * x * y
    return f


def random_slope_web(rng, d, xy=True, base=(1, 2)):
    while True:
        slopes = [random_poly(rng, xy) for _ in range(d)]
        if len(set(slopes)) == d:
            return webdef.from_slopes(slopes, base)


def random_coefficient_web(rng, d, base=(1, 1)):
    while True:
        co = [ONE + rng.randint(0, 2) * x] + [random_poly(rng) for _ in range(d)]
        try:
            return webdef.from_coefficients(d, co, base)
        except NonReducedWebError:
            continue


def random_rescale(rng, base):
    """A polynomial g with g(base) != 0."""
    while True:
        g = const(rng.randint(1, 3)) + rng.randint(-2, 2) * x + rng.randint(-2, 2) * y * y
        if g.evaluate(*base) != 0:
            return g


def seeded(seed):
    return random.Random(seed)


# -- flat fixtures -----------------------------------------------------------------

def parallel(d, base=(0, 0)):
    return webdef.from_slopes([const(c) for c in range(d)], base)


def shear(d):
    """Image of a parallel web under (x, y) -> (x, y + x^2): slopes c - 2x."""
    return webdef.from_slopes([const(c) - 2 * x for c in range(d)], (1, 1))


def bend(d):
    """Image of a parallel web under (x, y) -> (x + y^2, y): slopes c / (1 - 2cy)."""
    return webdef.from_slopes([const(c) / (1 - 2 * c * y) for c in range(d)], (0, 0))


def pencils(d):
    """Lines through d - 2 finite points together with two parallel families."""
    centres = [(0, 0), (2, 1), (-3, -1), (1, 4)][: d - 2]
    slopes = [const(0), const(1)] + [(y - b) / (x - a) for a, b in centres]
    return webdef.from_slopes(slopes, (5, 7))


def swirl(d):
    """Image of a parallel web under (x, y) -> (x + y^2, y + x^2)."""
    out = []
    for c in range(d):
        # level sets of (y + x^2) - c (x + y^2)
        ux = 2 * x - c
        uy = 1 - 2 * c * y
        out.append(-ux / uy)
    return webdef.from_slopes(out, (0, 0))


def flat_fixtures(d):
    fams = {"parallel": parallel(d), "shear": shear(d), "bend": bend(d), "pencils": pencils(d)}
    if d == 4:
        fams["swirl"] = swirl(d)
    return fams


# -- generic four-web identities -------------------------------------------------------

def generic_four_web_checks() -> dict:
    """Connection, curvature and derived-row identities for a 4-web with generic coefficients.

    Each entry maps a name to whether the identity holds as a polynomial
    identity in unknown functions A1, A2, v1..v4 of (x, y).
    """
    from webconn import assoc, rank

    S = SymOps()
    A1, A2, v1, v2, v3, v4 = (sp.Function(n)(sx, sy) for n in ("A1", "A2", "v1", "v2", "v3", "v4"))
    D = sp.diff

    def zero(e):
        return sp.expand(e) == 0

    A = [[-v4, A1], [A1 - v3, A2], [A2 - v2, v1]]
    basis = conn.classical_basis_4web(A, S)
    gx, gy = conn.connection_components(basis, conn.JetLayout(2, 2), S)
    K = conn.curvature_components(gx, gy, S)
    k1, k2, k3 = K[0]
    xi1 = (D(v4, sy) + v4 * v2, v1 * v4 + D(A2 - v2, sx) - D(A1 - v3, sy))
    xi2 = (v4 * v1 - (D(A2, sx) - D(A1, sy)), v1 * v3 - D(v1, sx))
    gamma = [
        [(A1, A2 - v2), xi1, xi2],
        [(-1, 0), (A1 - v3, A2 - v2), (0, -v1)],
        [(0, -1), (v4, 0), (A1, A2)],
    ]
    M, _ = conn.prolongation_matrix(A, 1, S)
    tx, ty = conn.trace_components(A, S)
    L1, L2 = assoc._liouville(v4, v3, v2, v1)
    rows = rank.derived_rows(K[0], gx, gy, 1, S)
    kx, ky = rows[1], rows[2]
    kap1 = D(A2 - v2, sx) - D(A1 - v3, sy)
    kap2 = D(A2, sx) - D(A1, sy)
    return {
        "basis in kernel": all(zero(sum(a * b for a, b in zip(r, e))) for e in basis for r in M),
        "gamma": all(zero(gx[i][j] - gamma[i][j][0]) and zero(gy[i][j] - gamma[i][j][1])
                     for i in range(3) for j in range(3)),
        "lower rows of K": all(zero(e) for r in K[1:] for e in r),
        "k1 = d(trace)": zero(k1 - (D(ty, sx) - D(tx, sy))),
        "k2": zero(3 * k2 - (D(k1, sx) + v3 * k1 + L1)),
        "k3": zero(3 * k3 - (D(k1, sy) - v2 * k1 + L2)),
        "k21": zero(kx[0] - (D(k1, sx) - A1 * k1 + k2)),
        "k22": zero(kx[1] - (D(k2, sx) - xi1[0] * k1 - (A1 - v3) * k2 - v4 * k3)),
        "k23": zero(kx[2] - (D(k3, sx) - (v1 * v4 - kap2) * k1 - A1 * k3)),
        "k31": zero(ky[0] - (D(k1, sy) - (A2 - v2) * k1 + k3)),
        "k32": zero(ky[1] - (D(k2, sy) - (v1 * v4 + kap1) * k1 - (A2 - v2) * k2)),
        "k33": zero(ky[2] - (D(k3, sy) - (v1 * v3 - D(v1, sx)) * k1 + v1 * k2 - A2 * k3)),
    }
