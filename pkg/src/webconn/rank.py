"""Web rank as the corank of the derived curvature matrix.

Horizontal sections f of the connection satisfy df + gamma f = 0, and the
curvature forces k . f = 0 for the first curvature row k.  Differentiating
that constraint along x and y (and substituting df = -gamma f) gives one
row per derivative multi-index of order at most d-3, pi_d rows in total.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .conn import RATIONAL, curvature, multi_indices
from .errors import UnsupportedDegreeError
from .assoc import linearization_polynomial
from .kernel import matrix_rank
from .webdef import WebEquation, pi_d


@dataclass(frozen=True)
class RankReport:
    kml: tuple
    generic_rank: int
    web_rank: int
    det_is_zero: bool

    @property
    def pi(self) -> int:
        return len(self.kml)


def derived_rows(k_row, gx, gy, order: int, ops=RATIONAL):
    """Rows indexed by multi-indices of order <= ``order`` in graded x-first order."""
    r = len(k_row)

    def step(row, g, var):
        out = []
        for j in range(r):
            acc = ops.diff(row[j], var)
            for i in range(r):
                if not (ops.is_zero(row[i]) or ops.is_zero(g[i][j])):
                    acc = acc - row[i] * g[i][j]
            out.append(acc)
        return out

    rows = {(0, 0): list(k_row)}
    for mi in multi_indices(order):
        if mi in rows:
            continue
        if mi[1] > 0:
            rows[mi] = step(rows[(mi[0], mi[1] - 1)], gy, "y")
        else:
            rows[mi] = step(rows[(mi[0] - 1, 0)], gx, "x")
    return [rows[mi] for mi in multi_indices(order)]


def rank_matrix(web: WebEquation, experimental: bool = False):
    cd = curvature(web, experimental)
    rows = derived_rows(cd.k_row, cd.gamma.x_part(), cd.gamma.y_part(), web.d - 3)
    return tuple(tuple(r) for r in rows)


def web_rank(web: WebEquation, experimental: bool = False) -> RankReport:
    kml = rank_matrix(web, experimental)
    rk = matrix_rank([list(r) for r in kml])
    n = pi_d(web.d)
    return RankReport(kml, rk, n - rk, rk < n)


def _numeric_rank(M) -> int:
    """Rank of a matrix of Fractions."""
    M = [list(r) for r in M]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def sampled_rank(kml, web: WebEquation, draws: int = 5, seed: int = 0) -> int:
    """Maximum rank of (k_ml) over random rational points off the poles.

    Only a cross-check: it can undercount but never overcount.
    """
    rng = random.Random(seed)
    best = 0
    attempts = 0
    done = 0
    while done < draws and attempts < 50 * draws:
        attempts += 1
        pt = (Fraction(rng.randint(-50, 50), rng.randint(1, 7)),
              Fraction(rng.randint(-50, 50), rng.randint(1, 7)))
        try:
            if web.resultant.evaluate(*pt) == 0:
                continue
            M = [[e.evaluate(*pt) for e in r] for r in kml]
        except ZeroDivisionError:
            continue
        best = max(best, _numeric_rank(M))
        done += 1
    return best


def exceptional_5web_logic(first_row_zero: bool, v1_nonzero: bool) -> bool:
    """A flat 5-web is exceptional exactly when its P has degree four."""
    return first_row_zero and v1_nonzero


def is_exceptional_5web(web: WebEquation) -> bool:
    if web.d != 5:
        raise UnsupportedDegreeError(f"exceptional 5-web test needs d = 5, got d = {web.d}")
    cd = curvature(web)
    v1 = -linearization_polynomial(web).l(1)
    return exceptional_5web_logic(all(k.is_zero() for k in cd.k_row), not v1.is_zero())


__all__ = ["RankReport", "derived_rows", "rank_matrix", "web_rank", "sampled_rank",
           "is_exceptional_5web", "exceptional_5web_logic"]
