import pytest

from webconn import assoc, conn, webdef
from webconn.errors import UnsupportedDegreeError
from webconn.kernel import Form1, Form2, RatFunc, exterior_derivative, matrix_curvature, matrix_rank

from helpers import (
    ONE,
    const,
    flat_fixtures,
    parallel,
    random_rescale,
    random_slope_web,
    section8,
    seeded,
    x,
    y,
)

Q = 27 + 4 * y ** 4
ZERO = RatFunc()


def v_coeffs(web):
    return [None] + [-e for e in assoc.linearization_polynomial(web).P]


# -- system matrix ------------------------------------------------------------

def test_gold_system_matrix():
    w = section8()
    A = conn.system_matrix(w)
    al = assoc.fundamental_form(w)
    v = v_coeffs(w)
    assert A.rows() == [[-v[4], al.A1], [al.A1 - v[3], al.A2], [al.A2 - v[2], v[1]]]
    assert A[1, 1] == 0 and A[3, 2] == 12 / Q


def test_parallel_three_web_system_matrix():
    A = conn.system_matrix(parallel(3).web)
    assert A.rows() == [[ZERO], [ZERO]]


@pytest.mark.parametrize("seed", [1, 2])
def test_five_web_matrix_matches_closed_form(seed):
    # the closed form is asserted inside system_matrix
    w = random_slope_web(seeded(seed), 5).web
    assert len(conn.system_matrix(w).rows()) == 4


# -- adapted basis and connection ---------------------------------------------------

def test_three_web_connection_is_alpha():
    sw = webdef.from_slopes([y, ONE, -ONE])
    gamma = conn.connection_matrix(sw.web)
    assert gamma.rows == 1
    assert gamma[0, 0] == assoc.fundamental_form(sw.web).alpha


def test_four_web_uses_classical_basis():
    w = section8()
    basis, _, _ = conn.adapted_basis(w)
    assert [list(e) for e in basis] == conn.classical_basis_4web(conn.system_matrix(w).rows())


def test_four_web_echelon_basis_spans_the_same_bundle():
    w = random_slope_web(seeded(5), 4).web
    A = conn.system_matrix(w).rows()
    ech, free, _ = conn.echelon_basis(A)
    classical = conn.classical_basis_4web(A)
    assert len(ech) == 3
    assert matrix_rank(list(ech) + classical) == 3


@pytest.mark.parametrize("d,dim", [(3, 1), (4, 3), (5, 6)])
def test_kernel_dimension(d, dim):
    sw = webdef.from_slopes([const(c) for c in range(d - 1)] + [x + y])
    basis, _, _ = conn.adapted_basis(sw.web)
    assert len(basis) == dim


def test_gold_connection_matrix():
    g = conn.connection_matrix(section8())
    s = (9 + 4 * y ** 4) / (y * Q)
    expected = [
        [Form1(ZERO, -s), Form1(ZERO, -16 * y * (4 * y ** 4 - 27) / Q ** 2), Form1(ZERO, 96 * y ** 2 / Q ** 2)],
        [Form1(-1, ZERO), Form1(-8 * y ** 2 / Q, -s), Form1(ZERO, -12 / Q)],
        [Form1(ZERO, -1), Form1(), Form1(ZERO, -2 * s)],
    ]
    for i in range(3):
        for j in range(3):
            assert g[i, j] == expected[i][j], (i, j)


def test_parallel_four_web_connection():
    g = conn.connection_matrix(parallel(4).web)
    for i in range(3):
        for j in range(3):
            if (i, j) == (1, 0):
                assert g[i, j] == Form1(-1, ZERO)
            elif (i, j) == (2, 0):
                assert g[i, j] == Form1(ZERO, -1)
            else:
                assert g[i, j].is_zero()


# -- curvature -----------------------------------------------------------------------

def test_gold_curvature():
    cd = conn.curvature(section8())
    assert cd.k_row == (
        -16 * y * (4 * y ** 4 - 27) / Q ** 2,
        -128 * y ** 3 * (4 * y ** 4 - 27) / Q ** 3,
        ZERO,
    )
    assert cd.K == matrix_curvature(cd.gamma)
    for i in (1, 2):
        assert all(cd.K[i, j].is_zero() for j in range(3))


@pytest.mark.parametrize("d", [3, 4, 5])
def test_lower_rows_vanish(d):
    for sw in [random_slope_web(seeded(40 + d), d, xy=False),
               webdef.from_slopes([const(c) for c in range(d - 1)] + [x + y])]:
        cd = conn.curvature(sw.web)
        assert cd.K == matrix_curvature(cd.gamma)
        for i in range(1, cd.K.rows):
            assert all(cd.K[i, j].is_zero() for j in range(cd.K.cols))


def test_lower_rows_vanish_six_web():
    sw = webdef.from_slopes([const(c) for c in range(5)] + [x + y])
    cd = conn.curvature(sw.web)
    assert len(cd.k_row) == 10
    assert cd.k1 == conn.trace_curvature(sw.web)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_linear_algebraic_webs_are_flat(d):
    for name, sw in flat_fixtures(d).items():
        assert conn.curvature(sw.web).K.is_zero(), name


def test_k1_is_rescale_invariant():
    rng = seeded(9)
    sw = random_slope_web(rng, 4)
    g = random_rescale(rng, sw.web.base_point)
    a = conn.curvature(sw.web)
    b = conn.curvature(webdef.rescale(sw.web, g))
    assert a.k1 == b.k1
    assert [k.is_zero() for k in a.k_row] == [k.is_zero() for k in b.k_row]


def test_three_web_curvature_is_blaschke():
    sw = webdef.from_slopes([y, ONE, -ONE])
    cd = conn.curvature(sw.web)
    assert Form2(cd.k1) == exterior_derivative(assoc.fundamental_form(sw.web).alpha)


# -- trace -------------------------------------------------------------------------------

def test_gold_trace_matches_curvature():
    assert conn.trace_curvature(section8()) == conn.curvature(section8()).k1


def test_parallel_trace_is_zero():
    for d in (3, 4, 5, 6):
        assert conn.trace_curvature(parallel(d).web).is_zero()


def test_trace_form_is_gamma_trace_up_to_closed_forms():
    w = random_slope_web(seeded(3), 4).web
    tr = conn.connection_matrix(w).trace()
    assert exterior_derivative(tr) == exterior_derivative(conn.trace_form(w))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_five_web_trace_closed_form(seed):
    w = random_slope_web(seeded(seed), 5).web
    al = assoc.fundamental_form(w)
    v = v_coeffs(w)
    a = w.coeffs
    dx = lambda f: f.diff("x")  # noqa: E731
    dy = lambda f: f.diff("y")  # noqa: E731
    expected = (6 * (dx(al.A2) - dy(al.A1)) + 4 * dy(v[4]) - 8 * dx(v[3])
                + 3 * dx(v[1] * a[2] / a[0]) - dy(v[1] * a[3] / a[0]))
    assert conn.trace_curvature(w) == expected


@pytest.mark.parametrize("d", [3, 4, 5])
def test_trace_agrees_with_full_construction(d):
    sw = random_slope_web(seeded(70 + d), d, xy=False)
    assert conn.trace_curvature(sw.web) == conn.curvature(sw.web).k1


# -- normal basis --------------------------------------------------------------------------

def test_normal_basis_flat():
    assert all(k.is_zero() for k in conn.normal_basis_curvature_4web(parallel(4).web))


def test_normal_basis_gold():
    w = section8()
    k1, n2, n3 = conn.normal_basis_curvature_4web(w)
    lin = assoc.linearization_polynomial(w)
    assert n2 == k1.diff("x") + lin.L1
    assert n3 == k1.diff("y") + lin.L2
    assert k1 == -16 * y * (4 * y ** 4 - 27) / Q ** 2


@pytest.mark.parametrize("seed", [4, 5])
def test_normal_basis_random(seed):
    w = random_slope_web(seeded(seed), 4).web
    k1, n2, n3 = conn.normal_basis_curvature_4web(w)
    assert k1 == conn.trace_curvature(w)


def test_normal_basis_needs_four_web():
    with pytest.raises(UnsupportedDegreeError):
        conn.normal_basis_curvature_4web(parallel(5).web)


def test_unsupported_degree():
    w = parallel(7).web
    with pytest.raises(UnsupportedDegreeError):
        conn.curvature(w)
    assert conn.trace_curvature(w).is_zero()


def test_experimental_degree_seven_parallel():
    cd = conn.curvature(parallel(7).web, experimental=True)
    assert len(cd.k_row) == 15 and cd.K.is_zero()
