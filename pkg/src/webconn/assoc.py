"""Associated polynomials and the invariants built from them.

For a presentation F of degree d and 0 <= i <= d-3 the associated pair
(U_i, V_i), deg U_i <= d-2 and deg V_i <= d-1, is the unique solution of

    p^i (F_x + p F_y) = U_i F + V_i F_p .

Coefficients follow the usual indexing: U = u_2 p^(d-2) + ... + u_d and
V = v_1 p^(d-1) + ... + v_d.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConstructionError, NonReducedWebError, SingularSystemError, DegreeError
from .kernel import Form1, RatFunc, as_ratfunc, exterior_derivative, solve_linear_multi
from .kernel import ppoly
from .webdef import WebEquation, rescale


@dataclass(frozen=True)
class AssociatedPair:
    order: int
    d: int
    U: tuple  # u_2 .. u_d
    V: tuple  # v_1 .. v_d

    def u(self, j: int) -> RatFunc:
        return self.U[j - 2] if 2 <= j <= self.d else RatFunc()

    def v(self, j: int) -> RatFunc:
        return self.V[j - 1] if 1 <= j <= self.d else RatFunc()

    @property
    def U_poly(self):
        """U as a ppoly (lowest power first)."""
        return ppoly.trim([self.u(self.d - k) for k in range(self.d - 1)])

    @property
    def V_poly(self):
        return ppoly.trim([self.v(self.d - k) for k in range(self.d)])


@dataclass(frozen=True)
class FundamentalForm:
    alpha: Form1

    @property
    def A1(self) -> RatFunc:
        return self.alpha.cx

    @property
    def A2(self) -> RatFunc:
        return self.alpha.cy


@dataclass(frozen=True)
class LinearizationData:
    """P = l_1 p^(d-1) + ... + l_d with P = -V."""

    P: tuple  # l_1 .. l_d
    effective_degree: int  # -1 for P = 0
    L1: RatFunc | None
    L2: RatFunc | None

    def l(self, j: int) -> RatFunc:
        return self.P[j - 1] if 1 <= j <= len(self.P) else RatFunc()

    @property
    def P_poly(self):
        d = len(self.P)
        return ppoly.trim([self.l(d - k) for k in range(d)])


def _vector_field_image(web: WebEquation, i: int):
    """p^i (F_x + p F_y) as a ppoly."""
    F = web.p_coeffs
    return ppoly.shift(ppoly.add(ppoly.dvar(F, "x"), ppoly.shift(ppoly.dvar(F, "y"), 1)), i)


def defining_residual(web: WebEquation, pair: AssociatedPair):
    """p^i (F_x + p F_y) - U_i F - V_i F_p, which must vanish."""
    F = web.p_coeffs
    lhs = _vector_field_image(web, pair.order)
    rhs = ppoly.add(ppoly.mul(pair.U_poly, F), ppoly.mul(pair.V_poly, ppoly.dp(F)))
    return ppoly.sub(lhs, rhs)


@lru_cache(maxsize=256)
def all_associated_polynomials(web: WebEquation) -> tuple:
    """Associated pairs of every order 0..d-3, from one Sylvester solve."""
    d = web.d
    F = web.p_coeffs
    Fp = ppoly.dp(F)
    size = 2 * d - 1
    # column j of the Sylvester system is the coefficient vector of
    # p^(d-j) F (for u_j) or p^(d-j) F_p (for v_j); rows are powers of p
    cols = []
    for j in range(2, d + 1):
        cols.append(ppoly.shift(F, d - j))
    for j in range(1, d + 1):
        cols.append(ppoly.shift(Fp, d - j))
    M = [[ppoly.coeff(c, k) for c in cols] for k in range(size)]
    rhs = [_vector_field_image(web, i) for i in range(d - 2)]
    B = [[ppoly.coeff(r, k) for r in rhs] for k in range(size)]
    try:
        X = solve_linear_multi(M, B)
    except SingularSystemError as exc:
        raise NonReducedWebError("Sylvester system is singular; F has a repeated factor") from exc
    pairs = []
    for i in range(d - 2):
        sol = [X[k][i] for k in range(size)]
        pair = AssociatedPair(i, d, tuple(sol[: d - 1]), tuple(sol[d - 1:]))
        if not ppoly.is_zero(defining_residual(web, pair)):
            raise ConstructionError(f"associated pair of order {i} fails its defining identity")
        pairs.append(pair)
    return tuple(pairs)


def associated_polynomials(web: WebEquation, i: int) -> AssociatedPair:
    if not 0 <= i <= web.d - 3:
        raise DegreeError(f"order must lie in [0, {web.d - 3}], got {i}")
    return all_associated_polynomials(web)[i]


def _liouville(l_d, l_d1, l_d2, l_d3):
    """The two linearizability obstructions in terms of four coefficients."""
    def dx(f):
        return f.diff("x")

    def dy(f):
        return f.diff("y")

    t1 = dx(l_d2) - 2 * dy(l_d1)
    L1 = (-dx(t1) - l_d1 * t1 - 3 * dy(dy(l_d)) - 3 * dy(l_d2 * l_d)
          + 3 * dx(l_d * l_d3) + 3 * l_d * dx(l_d3))
    t2 = 2 * dx(l_d2) - dy(l_d1)
    L2 = (dy(t2) - l_d2 * t2 - 3 * dx(dx(l_d3)) + 3 * dx(l_d1 * l_d3)
          - 3 * dy(l_d * l_d3) - 3 * l_d3 * dy(l_d))
    return L1, L2


@lru_cache(maxsize=256)
def linearization_polynomial(web: WebEquation) -> LinearizationData:
    d = web.d
    V = associated_polynomials(web, 0)
    P = tuple(-V.v(j) for j in range(1, d + 1))
    eff = -1
    for j in range(1, d + 1):
        if not P[j - 1].is_zero():
            eff = d - j
            break
    L1 = L2 = None
    if d >= 4:
        # the obstructions take the coefficients of V = -P, matching the
        # curvature relation k_2 = (d_x k_1 + v_3 k_1 + L_1) / 3
        L1, L2 = _liouville(*(-P[d - j] for j in range(1, 5)))
    return LinearizationData(P, eff, L1, L2)


def power_sums(web: WebEquation, upto: int):
    """s_m = sum_k p_k^m for m = 0..upto, from Newton's identities."""
    d = web.d
    a0 = web.coeffs[0]
    c = [RatFunc(1)] + [a / a0 for a in web.coeffs[1:]]
    s = [RatFunc(d)]
    for m in range(1, upto + 1):
        acc = RatFunc()
        if m <= d:
            for k in range(1, m):
                acc = acc + c[k] * s[m - k]
            acc = acc + m * c[m]
        else:
            for k in range(1, d + 1):
                acc = acc + c[k] * s[m - k]
        s.append(-acc)
    return s


@lru_cache(maxsize=256)
def fundamental_form(web: WebEquation) -> FundamentalForm:
    d = web.d
    pair = associated_polynomials(web, 0)
    # the dx and dy coefficients of b_d in the first two rows of the system
    A1 = -(pair.u(d) + pair.v(d - 1))
    A2 = -(pair.u(d - 1) + 2 * pair.v(d - 2))
    # independent route: u_d and u_(d-1) read off the polynomial part of
    # V F_p / F = V * sum_m s_m p^(-m-1), s_m the power sums of the slopes
    a0, a1 = web.coeffs[0], web.coeffs[1]
    s = power_sums(web, d - 2)
    B1 = -a0.diff("x") / a0 - (a1 / a0).diff("y")
    for i in range(1, d):
        B1 = B1 + pair.v(i) * s[d - 1 - i]
    B1 = B1 - pair.v(d - 1)
    B2 = -a0.diff("y") / a0
    for i in range(1, d - 1):
        B2 = B2 + pair.v(i) * s[d - 2 - i]
    B2 = B2 - 2 * pair.v(d - 2)
    if A1 != B1 or A2 != B2:
        raise ConstructionError("fundamental form disagrees with its power-sum expression")
    return FundamentalForm(Form1(A1, A2))


def algebraic_obstruction(web: WebEquation) -> RatFunc:
    """d^2/dy^2 (a_1 / a_0); vanishes exactly for algebraic webs among linear ones."""
    r = web.coeffs[1] / web.coeffs[0]
    return r.diff("y").diff("y")


def classify(web: WebEquation) -> dict:
    """Linear / algebraic predicates and the linearizability candidate flag.

    ``linearizable_candidate`` is None for d = 3, where the obstructions
    L1, L2 are not defined.
    """
    lin = linearization_polynomial(web)
    is_linear = lin.effective_degree < 0
    is_algebraic = is_linear and algebraic_obstruction(web).is_zero()
    cand = None
    if web.d >= 4:
        cand = lin.effective_degree <= 3 and lin.L1.is_zero() and lin.L2.is_zero()
    return {"is_linear": is_linear, "is_algebraic": is_algebraic, "linearizable_candidate": cand}


def invariance_check(web: WebEquation, g) -> dict:
    """Residuals of the rescaling relations for (U_i, V_i) and d(alpha); all should be 0."""
    g = as_ratfunc(g)
    gw = rescale(web, g)
    d = web.d
    out = {"V": [], "U": [], "dalpha": None}
    shift_x = g.diff("x") / g
    shift_y = g.diff("y") / g
    for i in range(d - 2):
        a = associated_polynomials(web, i)
        b = associated_polynomials(gw, i)
        out["V"].append(ppoly.sub(b.V_poly, a.V_poly))
        expected_shift = ppoly.shift([shift_x, shift_y], i)
        out["U"].append(ppoly.sub(ppoly.sub(b.U_poly, a.U_poly), expected_shift))
    da = exterior_derivative(fundamental_form(web).alpha)
    db = exterior_derivative(fundamental_form(gw).alpha)
    out["dalpha"] = (db - da).c
    return out


def invariance_residuals_vanish(res: dict) -> bool:
    return (all(ppoly.is_zero(r) for r in res["V"]) and all(ppoly.is_zero(r) for r in res["U"])
            and res["dalpha"].is_zero())
