"""Differential forms on the (x, y) plane with rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass

from .poly import RatFunc, as_ratfunc
from ..errors import DimensionError


def _wrap(c: RatFunc) -> str:
    s = str(c)
    if c.is_polynomial() and len(c.num._f) > 1:
        return f"({s})"
    return s


@dataclass(frozen=True)
class Form1:
    """cx dx + cy dy"""

    cx: RatFunc = RatFunc()
    cy: RatFunc = RatFunc()

    def __post_init__(self):
        object.__setattr__(self, "cx", as_ratfunc(self.cx))
        object.__setattr__(self, "cy", as_ratfunc(self.cy))

    def __add__(self, other: "Form1") -> "Form1":
        return Form1(self.cx + other.cx, self.cy + other.cy)

    def __sub__(self, other: "Form1") -> "Form1":
        return Form1(self.cx - other.cx, self.cy - other.cy)

    def __neg__(self) -> "Form1":
        return Form1(-self.cx, -self.cy)

    def scale(self, f) -> "Form1":
        f = as_ratfunc(f)
        return Form1(self.cx * f, self.cy * f)

    def wedge(self, other: "Form1") -> "Form2":
        return Form2(self.cx * other.cy - self.cy * other.cx)

    def is_zero(self) -> bool:
        return self.cx.is_zero() and self.cy.is_zero()

    def __str__(self):
        parts = []
        if not self.cx.is_zero():
            parts.append(f"{_wrap(self.cx)} dx")
        if not self.cy.is_zero():
            parts.append(f"{_wrap(self.cy)} dy")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Form2:
    """c dx^dy"""

    c: RatFunc = RatFunc()

    def __post_init__(self):
        object.__setattr__(self, "c", as_ratfunc(self.c))

    def __add__(self, other: "Form2") -> "Form2":
        return Form2(self.c + other.c)

    def __sub__(self, other: "Form2") -> "Form2":
        return Form2(self.c - other.c)

    def __neg__(self) -> "Form2":
        return Form2(-self.c)

    def is_zero(self) -> bool:
        return self.c.is_zero()

    def __str__(self):
        return "0" if self.c.is_zero() else f"{_wrap(self.c)} dx^dy"


def exact_form(f) -> Form1:
    """df for a function f."""
    f = as_ratfunc(f)
    return Form1(f.diff("x"), f.diff("y"))


def exterior_derivative(w: Form1) -> Form2:
    return Form2(w.cy.diff("x") - w.cx.diff("y"))


class FormMatrix:
    """Rectangular matrix whose entries are all Form1 or all Form2."""

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise DimensionError("empty form matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged form matrix")
        self._rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_components(cls, mx, my) -> "FormMatrix":
        """Build from the dx- and dy-coefficient matrices."""
        return cls([[Form1(a, b) for a, b in zip(rx, ry)] for rx, ry in zip(mx, my)])

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        return isinstance(other, FormMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def x_part(self):
        return [[e.cx for e in r] for r in self._rows]

    def y_part(self):
        return [[e.cy for e in r] for r in self._rows]

    def coefficients(self):
        """Matrix of dx^dy coefficients (2-form matrices only)."""
        return [[e.c for e in r] for r in self._rows]

    def trace(self):
        if self.rows != self.cols:
            raise DimensionError("trace of a non-square matrix")
        acc = self._rows[0][0]
        for i in range(1, self.rows):
            acc = acc + self._rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self._rows for e in r)

    def to_strings(self):
        return [[str(e) for e in r] for r in self._rows]

    def __repr__(self):
        return f"FormMatrix({self.to_strings()!r})"


def matrix_curvature(gamma: FormMatrix) -> FormMatrix:
    """d(gamma) + gamma ^ gamma for a square matrix of 1-forms."""
    if gamma.rows != gamma.cols:
        raise DimensionError("curvature needs a square connection matrix")
    n = gamma.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = exterior_derivative(gamma[i, j]).c
            for k in range(n):
                a, b = gamma[i, k], gamma[k, j]
                if (a.cx.is_zero() or b.cy.is_zero()) and (a.cy.is_zero() or b.cx.is_zero()):
                    continue
                acc = acc + a.cx * b.cy - a.cy * b.cx
            row.append(Form2(acc))
        out.append(row)
    return FormMatrix(out)
