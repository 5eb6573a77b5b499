from itertools import permutations

import pytest
import sympy as sp

from webconn import conn, extract, rank, webdef
from webconn.errors import DegreeError, SlopeRequiredError
from webconn.kernel import Form2, RatFunc

from helpers import (
    ONE,
    const,
    flat_fixtures,
    oracle_dalpha,
    random_coefficient_web,
    random_rescale,
    random_slope_web,
    section8,
    seeded,
    to_sympy,
    x,
    y,
)


def four(*slopes, base=(1, 2)):
    return webdef.from_slopes(list(slopes), base)


def test_extract_subweb():
    sw = four(const(0), ONE, const(2), const(3))
    sub = extract.extract_subweb(sw, {1, 2, 3})
    assert sub.slopes == (ONE, const(2), const(3))
    assert sub.web.base_point == sw.web.base_point


def test_extract_subweb_errors():
    sw = four(const(0), ONE, const(2), const(3))
    with pytest.raises(DegreeError):
        extract.extract_subweb(sw, {0, 1})
    with pytest.raises(DegreeError):
        extract.extract_subweb(sw, {0, 1, 4})
    with pytest.raises(SlopeRequiredError):
        extract.extract_subweb(sw.web, {0, 1, 2})


def test_blaschke_parallel_is_zero():
    assert extract.blaschke_curvature(webdef.from_slopes([const(0), ONE, const(2)])).is_zero()


def test_blaschke_oracle():
    sw = webdef.from_slopes([y, ONE, -ONE])
    k = extract.blaschke_curvature(sw)
    # frozen from the interpolation oracle
    assert sp.simplify(to_sympy(k.c) - sp.sympify("-2*y/(y**2 - 1)**2")) == 0
    assert sp.simplify(to_sympy(k.c) - oracle_dalpha(sw.slopes)) == 0


@pytest.mark.parametrize("triple,expected", [
    ((0, 1, 2), "0"),
    ((0, 1, 3), "2*(2*x + 2*y - 1)/((x + y)**2*(x + y - 1)**2)"),
    ((0, 2, 3), "6*(x + y - 1)/((x + y)**2*(x + y - 2)**2)"),
    ((1, 2, 3), "6*(2*x + 2*y - 3)/(x**2 + 2*x*y - 3*x + y**2 - 3*y + 2)**2"),
])
def test_blaschke_of_subwebs(triple, expected):
    sw = four(const(0), ONE, const(2), x + y)
    sub = extract.extract_subweb(sw, triple)
    k = extract.blaschke_curvature(sub)
    assert sp.simplify(to_sympy(k.c) - sp.sympify(expected)) == 0
    assert sp.simplify(to_sympy(k.c) - oracle_dalpha(sub.slopes)) == 0


def test_blaschke_needs_three_web():
    with pytest.raises(DegreeError):
        extract.blaschke_curvature(section8())


@pytest.mark.parametrize("slopes", [
    (const(0), ONE, const(2), x + y),
    (y, ONE, -ONE, x),
    (y, ONE, -ONE, x, x + y),
])
def test_trace_formula(slopes):
    rep = extract.trace_formula_check(webdef.from_slopes(list(slopes), (1, 2)))
    assert rep.holds
    assert len(rep.triples) == len(rep.blaschke)
    assert rep.k1_form == rep.sum


@pytest.mark.parametrize("d,seed", [(4, 1), (5, 2), (6, 3)])
def test_trace_formula_random(d, seed):
    assert extract.trace_formula_check(random_slope_web(seeded(seed), d)).holds


def test_trace_formula_needs_slopes():
    with pytest.raises(SlopeRequiredError):
        extract.trace_formula_check(random_coefficient_web(seeded(1), 4))


def test_blaschke_sum_ignores_slope_order():
    slopes = [y, ONE, -ONE, x]
    sums = set()
    for perm in permutations(slopes):
        sums.add(extract.trace_formula_check(webdef.from_slopes(list(perm), (1, 2))).sum)
    assert len(sums) == 1


def test_blaschke_is_rescale_invariant():
    sw = webdef.from_slopes([y, ONE, -ONE], (1, 2))
    g = random_rescale(seeded(4), sw.web.base_point)
    assert extract.blaschke_curvature(webdef.rescale(sw.web, g)) == extract.blaschke_curvature(sw)


@pytest.mark.parametrize("slopes", [
    (const(0), ONE, const(2), const(3)),
    (const(0), ONE, const(2), x + y),
    (y, ONE, -ONE, x),
])
def test_extracted_relations(slopes):
    sw = four(*slopes)
    for k in range(4):
        res = extract.extracted_relations_4web(sw, k)
        assert all(v.is_zero() for v in res.values()), (k, res)


def test_extracted_relations_random():
    sw = random_slope_web(seeded(8), 4)
    for k in range(4):
        assert all(v.is_zero() for v in extract.extracted_relations_4web(sw, k).values())


def test_extracted_relations_need_four_web():
    with pytest.raises(DegreeError):
        extract.extracted_relations_4web(random_slope_web(seeded(1), 5), 0)


def test_hexagonal_classification():
    assert extract.is_hexagonal(four(const(0), ONE, const(2), const(3)))
    assert not extract.is_hexagonal(four(const(0), ONE, const(2), x + y))


def test_bol_chain():
    fixtures = list(flat_fixtures(4).values()) + [four(const(0), ONE, const(2), x + y)]
    for sw in fixtures:
        if extract.is_hexagonal(sw):
            assert conn.trace_curvature(sw.web).is_zero()
            assert rank.web_rank(sw.web).web_rank == 3


def test_residual_is_a_two_form():
    rep = extract.trace_formula_check(four(y, ONE, -ONE, x))
    assert isinstance(rep.residual, Form2)
    assert rep.residual == Form2(RatFunc())
