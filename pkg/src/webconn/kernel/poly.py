"""Exact polynomials in (p, x, y) and rational functions in (x, y).

Both types are immutable.  Arithmetic is delegated to FLINT's sparse
multivariate polynomials over QQ, which provide the multivariate gcd needed
to keep rational functions in lowest terms.  Everything else (normal form,
serialization, evaluation, derivatives) is handled here.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

import flint

from ..errors import InvalidVariableError

VARIABLES = ("p", "x", "y")
_VAR_INDEX = {v: i for i, v in enumerate(VARIABLES)}

# deglex on (p, x, y): graded, ties broken by p, then x, then y
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
_ZERO = _CTX.from_dict({})
_ONE = _CTX.constant(1)


def _to_fmpq(c):
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, _RationalABC):
        return flint.fmpq(int(c.numerator), int(c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


def _to_fraction(q) -> Fraction:
    q = flint.fmpq(q)
    return Fraction(int(q.p), int(q.q))


def _raw(obj):
    """Coerce an int/Fraction/MPoly into a raw FLINT polynomial."""
    if isinstance(obj, MPoly):
        return obj._f
    if isinstance(obj, flint.fmpq_mpoly):
        return obj
    return _CTX.constant(_to_fmpq(obj))


def _monomial_str(exps) -> str:
    parts = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_str(f) -> str:
    if f.is_zero():
        return "0"
    out = []
    for exps, c in f.terms():
        c = _to_fraction(c)
        mono = _monomial_str(exps)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _poly_key(f):
    return tuple((tuple(e), (int(c.p), int(c.q))) for e, c in f.terms())


class MPoly:
    """Polynomial in p, x, y with exact rational coefficients."""

    __slots__ = ("_f",)

    def __init__(self, value=0):
        object.__setattr__(self, "_f", _raw(value))

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def from_terms(cls, terms: dict) -> "MPoly":
        """Build from ``{(deg_x, deg_y, deg_p): coefficient}``."""
        d = {}
        for (ex, ey, ep), c in terms.items():
            d[(ep, ex, ey)] = _to_fmpq(c)
        return cls(_CTX.from_dict(d))

    @classmethod
    def from_p_coeffs(cls, coeffs) -> "MPoly":
        """``coeffs[k]`` is the (p-free) coefficient of p**k."""
        f = _ZERO
        pk = _ONE
        p = _CTX.gens()[0]
        for c in coeffs:
            c = c.as_mpoly()._f if isinstance(c, RatFunc) else _raw(c)
            f = f + c * pk
            pk = pk * p
        return cls(f)

    def terms(self) -> dict:
        """Coefficient map keyed by ``(deg_x, deg_y, deg_p)``."""
        return {(e[1], e[2], e[0]): _to_fraction(c) for e, c in self._f.terms()}

    # arithmetic
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return MPoly(self._f + _raw(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return MPoly(self._f - _raw(other))

    def __rsub__(self, other):
        return MPoly(_raw(other) - self._f)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return MPoly(self._f * _raw(other))

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(-self._f)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("MPoly powers must be non-negative integers")
        return MPoly(self._f ** n)

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(other) / RatFunc(self)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        try:
            return self._f == _raw(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(_poly_key(self._f))

    def __bool__(self):
        return not self._f.is_zero()

    def is_zero(self) -> bool:
        return self._f.is_zero()

    def is_constant(self) -> bool:
        return self._f.is_constant()

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if self._f.is_zero():
            return -1
        return self._f.degrees()[_VAR_INDEX[var]]

    def total_degree(self) -> int:
        return -1 if self._f.is_zero() else self._f.total_degree()

    def leading_coefficient(self) -> Fraction:
        return _to_fraction(self._f.leading_coefficient())

    def coeff_p(self, k: int) -> "RatFunc":
        """Coefficient of p**k as a polynomial in x, y."""
        d = {}
        for e, c in self._f.terms():
            if e[0] == k:
                d[(0, e[1], e[2])] = c
        return RatFunc(MPoly(_CTX.from_dict(d)))

    def p_coeffs(self) -> list:
        n = self.degree("p")
        return [self.coeff_p(k) for k in range(n + 1)]

    def diff(self, var: str) -> "MPoly":
        if var not in _VAR_INDEX:
            raise InvalidVariableError(f"unknown variable {var!r}")
        return MPoly(self._f.derivative(var))

    def __call__(self, x=0, y=0, p=0) -> Fraction:
        return _to_fraction(self._f(_to_fmpq(p), _to_fmpq(x), _to_fmpq(y)))

    def gcd(self, other: "MPoly") -> "MPoly":
        return MPoly(self._f.gcd(_raw(other)))

    def exact_div(self, other) -> "MPoly":
        return MPoly(self._f / _raw(other))

    def __str__(self):
        return _poly_str(self._f)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


class RatFunc:
    """Element of QQ(x, y) kept in lowest terms with a monic denominator.

    Monic means the leading coefficient of the denominator in graded-lex
    order (x > y) is 1; together with the gcd reduction this makes the
    representation canonical, so equality is structural.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1, _normalized=False):
        if isinstance(num, RatFunc) and den == 1:
            object.__setattr__(self, "_n", num._n)
            object.__setattr__(self, "_d", num._d)
            return
        n = _raw(num)
        d = _raw(den)
        if not _normalized:
            if d.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if n.degrees()[0] > 0 or d.degrees()[0] > 0:
                raise InvalidVariableError("rational functions may not depend on p")
            n, d = _normalize(n, d)
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def num(self) -> MPoly:
        return MPoly(self._n)

    @property
    def den(self) -> MPoly:
        return MPoly(self._d)

    def as_mpoly(self) -> MPoly:
        if not self._d.is_one():
            raise ValueError(f"{self} is not a polynomial")
        return MPoly(self._n)

    def is_polynomial(self) -> bool:
        return self._d.is_one()

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_constant(self) -> bool:
        return self._n.is_constant() and self._d.is_constant()

    def __bool__(self):
        return not self._n.is_zero()

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d.is_one() and o._d.is_one():
            return RatFunc(self._n + o._n, _ONE, _normalized=True)
        if self._d == o._d:
            return RatFunc(self._n + o._n, self._d)
        # Henrici: only the gcd of the denominators can cancel
        g = self._d.gcd(o._d)
        if g.is_one():
            n = self._n * o._d + o._n * self._d
            return RatFunc(n, self._d * o._d, _normalized=True) if not n.is_zero() else RatFunc()
        d1, d2 = self._d / g, o._d / g
        t = self._n * d2 + o._n * d1
        if t.is_zero():
            return RatFunc()
        g2 = t.gcd(g)
        n, d = t / g2, d1 * (g / g2) * d2
        lc = d.leading_coefficient()
        return RatFunc(n / lc, d / lc, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self._n, self._d, _normalized=True)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._n.is_zero() or o._n.is_zero():
            return RatFunc()
        if self._d.is_one() and o._d.is_one():
            return RatFunc(self._n * o._n, _ONE, _normalized=True)
        # cross-cancel before multiplying keeps the gcds small
        g1 = self._n.gcd(o._d)
        g2 = o._n.gcd(self._d)
        n = (self._n / g1) * (o._n / g2)
        d = (self._d / g2) * (o._d / g1)
        lc = d.leading_coefficient()
        return RatFunc(n / lc, d / lc, _normalized=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def inv(self) -> "RatFunc":
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        lc = self._n.leading_coefficient()
        return RatFunc(self._d / lc, self._n / lc, _normalized=True)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer exponents only")
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self._n ** n, self._d ** n, _normalized=True)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((_poly_key(self._n), _poly_key(self._d)))

    def diff(self, var: str) -> "RatFunc":
        if var == "p":
            raise InvalidVariableError("rational functions are p-free; d/dp is not defined")
        if var not in _VAR_INDEX:
            raise InvalidVariableError(f"unknown variable {var!r}")
        dn = self._n.derivative(var)
        if self._d.is_one():
            return RatFunc(dn, _ONE, _normalized=True)
        dd = self._d.derivative(var)
        if dd.is_zero():
            return RatFunc(dn, self._d)
        # with h = gcd(d, d'), the quotient t / (d * d/h) can only lose
        # factors of h, so the final gcd runs against h alone
        h = self._d.gcd(dd)
        r = self._d / h
        t = dn * r - self._n * (dd / h)
        if t.is_zero():
            return RatFunc()
        g = t.gcd(h)
        den = self._d * r
        if not g.is_one():
            t = t / g
            den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            t = t / lc
            den = den / lc
        return RatFunc(t, den, _normalized=True)

    def __call__(self, x=0, y=0) -> Fraction:
        return self.evaluate(x, y)

    def evaluate(self, x, y) -> Fraction:
        qx, qy = _to_fmpq(x), _to_fmpq(y)
        den = self._d(flint.fmpq(0), qx, qy)
        if den == 0:
            raise ZeroDivisionError(f"{self} has a pole at ({x}, {y})")
        return _to_fraction(self._n(flint.fmpq(0), qx, qy) / den)

    def total_degree(self) -> int:
        return max(self._n.total_degree(), self._d.total_degree())

    def __str__(self):
        if self._d.is_one():
            return _poly_str(self._n)
        return f"({_poly_str(self._n)})/({_poly_str(self._d)})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _normalize(n, d):
    if n.is_zero():
        return _ZERO, _ONE
    g = n.gcd(d)
    if not g.is_one():
        n = n / g
        d = d / g
    lc = d.leading_coefficient()
    if lc != 1:
        n = n / lc
        d = d / lc
    return n, d


def _coerce(obj):
    if isinstance(obj, RatFunc):
        return obj
    if isinstance(obj, MPoly):
        return RatFunc(obj)
    if isinstance(obj, (int, _RationalABC, flint.fmpq)):
        return RatFunc(_CTX.constant(_to_fmpq(obj)), _ONE, _normalized=True)
    return None


def as_ratfunc(obj) -> RatFunc:
    r = _coerce(obj)
    if r is None:
        raise TypeError(f"cannot interpret {obj!r} as a rational function")
    return r


def partial_derivative(f, var: str):
    """Formal partial derivative of an MPoly or RatFunc."""
    if isinstance(f, (MPoly, RatFunc)):
        return f.diff(var)
    raise TypeError(f"cannot differentiate {type(f).__name__}")


P, X, Y = (MPoly(g) for g in _CTX.gens())
ZERO = RatFunc()
ONE = RatFunc(1)
x = RatFunc(X)
y = RatFunc(Y)
