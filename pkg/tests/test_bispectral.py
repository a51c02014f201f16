from fractions import Fraction as F

import pytest

from hahnbispec.bases import build_U_series, on_grid, series_coefficients
from hahnbispec.bispectral import (
    calY_matrix,
    closed_phi_matrix,
    closed_U_matrix,
    lam,
    matrix_in_phi_basis,
    matrix_in_U_basis,
    mu_coeffs,
    nu_coeffs,
    verify_adjoint_identity,
    verify_difference_equation,
    verify_factorization,
    verify_matrix_realizations,
    verify_recurrence_relation,
    verify_shift_relations,
)
from hahnbispec.errors import DegenerateDenominator
from hahnbispec.matrix import ExactMatrix
from hahnbispec.operators import apply_grid, make_X, make_Y, y_coefficients
from hahnbispec.params import Params

from conftest import draws


def test_lambda_values():
    p = Params(F(1, 3), F(1, 2), 5)
    assert lam(0, p) == 0
    assert lam(2, p) == 5
    assert [lam(n, p) for n in range(6)] == [0, F(7, 2), 5, F(9, 2), 2, F(-5, 2)]


@pytest.mark.parametrize("p", draws([4, 6], 2))
def test_lambda_distinct(p):
    values = [lam(n, p) for n in range(p.N + 1)]
    assert len(set(values)) == len(values)


def test_low_index_coefficients(generic):
    assert nu_coeffs(0, generic)[1] == 0
    mu = mu_coeffs(0, generic)
    assert mu[0] == 0 and mu[2] == 0 and mu[1] == -generic.alpha


def test_nu3_at_one():
    p = Params(F(1, 2), F(1, 3), 3)
    assert nu_coeffs(1, p)[2] == 3 * p.alpha == F(3, 2)


def test_mu7_mu8_at_zero():
    p = Params(F(1, 2), F(1), 3, force=True)
    mu = mu_coeffs(0, p)
    assert mu[6] == -2 and mu[7] == 2


def test_mu_degenerate_denominator():
    p = Params(F(1, 2), F(1), 3, force=True)
    with pytest.raises(DegenerateDenominator):
        mu_coeffs(1, p)


@pytest.mark.parametrize("p", draws([3, 5], 2))
def test_mu_structure(p):
    for n in range(p.N + 1):
        mu = mu_coeffs(n, p)
        for i in range(3):
            assert mu[3 + i] == lam(n, p) * mu[i]
    top = mu_coeffs(p.N, p)
    assert top[0] == top[3] == top[6] == 0


def test_z_phi_matrix(generic):
    M = matrix_in_phi_basis("Z", generic)
    n = generic.N + 1
    for i in range(n):
        for j in range(n):
            expected = -1 if i == j else (1 if i == j + 1 else 0)
            assert M[i, j] == expected


def test_x_phi_matrix(generic):
    M = matrix_in_phi_basis("X", generic)
    N, a = generic.N, generic.alpha
    for k in range(N + 1):
        assert M[k, k] == k - a
        if k < N:
            assert M[k + 1, k] == -k
    assert M == closed_phi_matrix("X", generic)
    assert M.column(N) == (0,) * N + (N - a,)


def test_x_u_matrix_n2():
    p = Params(F(2, 7), F(3, 5), 2)
    assert matrix_in_U_basis("X", p) == closed_U_matrix("X", p)


def test_calY(generic):
    Y1 = calY_matrix(generic)
    N = generic.N
    assert Y1[0, 0] == 0
    for n in range(N + 1):
        assert Y1[n, n] == lam(n, generic)
        if n:
            assert Y1[n - 1, n] == n * (n - N - 1)
    assert matrix_in_phi_basis("Y", generic) == matrix_in_phi_basis("X", generic) @ Y1


def test_gevp_in_phi_basis(generic):
    MX, MY = matrix_in_phi_basis("X", generic), matrix_in_phi_basis("Y", generic)
    for n in range(generic.N + 1):
        c = series_coefficients(n, generic)
        assert MY.apply(c) == tuple(lam(n, generic) * v for v in MX.apply(c))


@pytest.mark.parametrize("p", draws(range(1, 7), 2, seed=21))
def test_factorization_and_realizations(p):
    assert verify_factorization(p).passed
    r = verify_matrix_realizations(p)
    assert r.passed, r.counterexample


def test_shift_relations_low_index(generic):
    N = generic.N
    one = (F(1),) * (N + 1)
    assert apply_grid(make_X(generic), one, generic) == (-generic.alpha,) * (N + 1)
    assert apply_grid(make_Y(generic), one, generic) == (0,) * (N + 1)


@pytest.mark.parametrize("p", draws(range(1, 6), 2, seed=8))
def test_shift_relations(p):
    r = verify_shift_relations(p)
    assert r.passed, r.counterexample


def test_difference_equation_pointwise():
    p = Params(F(1, 2), F(1, 3), 3)
    A1, A2, A0 = y_coefficients(p)
    u = on_grid(build_U_series(1, p).fun, 3)
    for x in range(4):
        left = A0(x) * u[x] + (A1(x) * u[x + 1] if x < 3 else 0) + (A2(x) * u[x - 1] if x else 0)
        right = lam(1, p) * ((x - p.alpha) * u[x] - (x * u[x - 1] if x else 0))
        assert left == right
    assert verify_difference_equation(p).passed


def test_column_proportionality(generic):
    MX, MY = matrix_in_U_basis("X", generic), matrix_in_U_basis("Y", generic)
    L = ExactMatrix.diag([lam(n, generic) for n in range(generic.N + 1)])
    assert MY == MX @ L


@pytest.mark.parametrize("p", draws(range(1, 6), 2, seed=17))
def test_recurrence_relation(p):
    r = verify_recurrence_relation(p)
    assert r.passed, r.counterexample
    assert verify_difference_equation(p).passed


def test_recurrence_at_zero(generic):
    a = generic.alpha
    mu = mu_coeffs(0, generic)
    u0 = build_U_series(0, generic).fun
    u1 = build_U_series(1, generic).fun
    from hahnbispec.kernel import Poly, RatFun
    lhs = u0 * mu[1]
    rhs = RatFun(a - Poly.x()) * (u1 * mu[6] + u0 * mu[7])
    assert lhs == rhs
    assert (u0 - u1) * mu[7] == RatFun(Poly.const(a), Poly.x() - a)


def test_adjoint_identity_transported():
    p = Params(F(1, 2), F(1, 3), 2)
    r = verify_adjoint_identity(p)
    assert r.passed, r.counterexample


@pytest.mark.parametrize("p", draws([1, 2, 3], 2, seed=3))
def test_adjoint_identity_sweep(p):
    assert verify_adjoint_identity(p).passed


def test_same_weight_reading_is_reported_not_asserted(generic):
    d = verify_adjoint_identity(generic).details
    assert d["same_weight_offdiagonal_holds"]["X"] is True
    ratio = (generic.alpha - 1) / (generic.beta + 1 - generic.alpha)
    assert d["same_weight_diagonal_ratio"]["X[0]"] == ratio
