"""Web presentations F(x, y, p) = a_0 p^d + ... + a_d = 0."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    DegreeError,
    DuplicateSlopeError,
    LeadingCoefficientError,
    NonInvertibleRescaleError,
    NonReducedWebError,
)
from .kernel import MPoly, RatFunc, as_ratfunc, resultant_coeffs
from .kernel import ppoly


def pi_d(d: int) -> int:
    """Upper bound (d-1)(d-2)/2 on the rank of a d-web."""
    return (d - 1) * (d - 2) // 2


def _point(bp):
    x0, y0 = bp
    return (Fraction(x0), Fraction(y0))


def _value_at(f: RatFunc, point):
    """Value of f at the point, or None when f has a pole there."""
    try:
        return f.evaluate(*point)
    except ZeroDivisionError:
        return None


@dataclass(frozen=True, eq=True)
class WebEquation:
    """A degree-d presentation with coefficients a_0..a_d (leading first)."""

    d: int
    coeffs: tuple
    base_point: tuple = (Fraction(0), Fraction(0))
    warnings: tuple = field(default=(), compare=False)

    @property
    def pi(self) -> int:
        return pi_d(self.d)

    @property
    def p_coeffs(self) -> list:
        """Coefficients lowest power first, as used by ppoly."""
        return list(reversed(self.coeffs))

    @cached_property
    def resultant(self) -> RatFunc:
        f = list(self.coeffs)
        g = ppoly.dp(self.p_coeffs)[::-1]
        return resultant_coeffs(f, g)

    def polynomial(self) -> MPoly:
        """F as an MPoly; only for polynomial coefficients."""
        return MPoly.from_p_coeffs([c.as_mpoly() for c in self.p_coeffs])

    def __str__(self):
        return ppoly.to_string(self.p_coeffs)


@dataclass(frozen=True)
class SlopeWeb:
    """A web together with explicit rational slopes p_1..p_d."""

    web: WebEquation
    slopes: tuple

    @property
    def d(self) -> int:
        return self.web.d


def from_coefficients(d: int, coeffs, base_point=(0, 0)) -> WebEquation:
    coeffs = tuple(as_ratfunc(c) for c in coeffs)
    if d < 3:
        raise DegreeError(f"webs need degree at least 3, got {d}")
    if len(coeffs) != d + 1:
        raise DegreeError(f"expected {d + 1} coefficients, got {len(coeffs)}")
    if coeffs[0].is_zero():
        raise LeadingCoefficientError("leading coefficient a_0 vanishes identically")
    web = WebEquation(d, coeffs, _point(base_point))
    if web.resultant.is_zero():
        raise NonReducedWebError("resultant of F and dF/dp vanishes identically (repeated factor)")
    warnings = []
    r0 = _value_at(web.resultant, web.base_point)
    if r0 is None or r0 == 0:
        warnings.append(f"base point {tuple(str(c) for c in web.base_point)} lies on the discriminant locus")
    elif any(_value_at(c, web.base_point) is None for c in coeffs):
        warnings.append("a coefficient has a pole at the base point")
    if warnings:
        # warnings are excluded from equality, so this is still the same web
        object.__setattr__(web, "warnings", tuple(warnings))
    return web


def from_polynomial(F, base_point=(0, 0), d=None) -> WebEquation:
    """Presentation from an MPoly in p, x, y (or a list of p-coefficients)."""
    if isinstance(F, MPoly):
        c = F.p_coeffs()
    else:
        c = ppoly.trim(F)
    deg = len(c) - 1
    if d is None:
        d = deg
    if deg < d:
        raise LeadingCoefficientError(f"F has degree {deg} in p, expected {d}")
    if deg > d:
        raise DegreeError(f"F has degree {deg} in p, expected {d}")
    return from_coefficients(d, list(reversed(c)), base_point)


def from_slopes(slopes, base_point=(0, 0)) -> SlopeWeb:
    """Presentation prod(p - p_i), rescaled to polynomial coefficients."""
    slopes = tuple(as_ratfunc(s) for s in slopes)
    if len(slopes) < 3:
        raise DegreeError(f"webs need at least 3 slopes, got {len(slopes)}")
    for i in range(len(slopes)):
        for j in range(i):
            if slopes[i] == slopes[j]:
                raise DuplicateSlopeError(f"slopes {j + 1} and {i + 1} coincide: {slopes[i]}")
    c = ppoly.from_roots(slopes)
    L = MPoly(1)
    for e in c:
        den = e.den
        L = L.exact_div(L.gcd(den)) * den
    c = [e * L for e in c]
    web = from_coefficients(len(slopes), list(reversed(c)), base_point)
    return SlopeWeb(web, slopes)


def monic(web: WebEquation) -> WebEquation:
    """The presentation divided by a_0 (no invertibility check)."""
    a0 = web.coeffs[0]
    coeffs = tuple(c / a0 for c in web.coeffs)
    return WebEquation(web.d, coeffs, web.base_point, web.warnings)


def rescale(web: WebEquation, g) -> WebEquation:
    """The presentation g*F of the same web; g must be invertible at the base point."""
    g = as_ratfunc(g)
    if g.is_zero():
        raise NonInvertibleRescaleError("rescale factor vanishes identically")
    v = _value_at(g, web.base_point)
    if v is None or v == 0:
        raise NonInvertibleRescaleError(f"rescale factor {g} is not invertible at the base point")
    return from_coefficients(web.d, [c * g for c in web.coeffs], web.base_point)


def discriminant(web: WebEquation) -> RatFunc:
    """Resultant in p of F and dF/dp, reported without renormalization."""
    return web.resultant
