"""Polynomials in p with coefficients in QQ(x, y).

Represented as plain lists with ``c[k]`` the coefficient of p**k (lowest
degree first).  Trailing zeros are stripped by ``trim``.
"""
from __future__ import annotations

from .poly import RatFunc, as_ratfunc


def trim(c):
    c = [as_ratfunc(e) for e in c]
    while c and c[-1].is_zero():
        c.pop()
    return c


def degree(c) -> int:
    return len(trim(c)) - 1


def add(a, b):
    n = max(len(a), len(b))
    z = RatFunc()
    return trim([(a[k] if k < len(a) else z) + (b[k] if k < len(b) else z) for k in range(n)])


def sub(a, b):
    return add(a, [-e for e in b])


def scale(a, f):
    f = as_ratfunc(f)
    return trim([e * f for e in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [RatFunc()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return trim(out)


def shift(a, k: int):
    """Multiply by p**k."""
    return trim([RatFunc()] * k + list(a)) if a else []


def dp(a):
    return trim([a[k] * k for k in range(1, len(a))])


def dvar(a, var: str):
    return trim([e.diff(var) for e in a])


def evaluate(a, value):
    """Horner evaluation at a rational function value of p."""
    value = as_ratfunc(value)
    acc = RatFunc()
    for e in reversed(a):
        acc = acc * value + e
    return acc


def coeff(a, k: int) -> RatFunc:
    return a[k] if 0 <= k < len(a) else RatFunc()


def is_zero(a) -> bool:
    return all(e.is_zero() for e in a)


def from_roots(roots):
    """Expand prod(p - r)."""
    out = [RatFunc(1)]
    for r in roots:
        out = mul(out, [-as_ratfunc(r), RatFunc(1)])
    return out


def to_string(a) -> str:
    """Canonical text: descending powers of p, each coefficient parenthesized."""
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c.is_zero():
            continue
        cs = str(c)
        mono = "" if k == 0 else ("p" if k == 1 else f"p^{k}")
        if not mono:
            terms.append(f"({cs})")
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"({cs})*{mono}")
    return " + ".join(terms) if terms else "0"
