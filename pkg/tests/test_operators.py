import random
from fractions import Fraction as F

import pytest

from hahnbispec.errors import InvalidParams
from hahnbispec.kernel import Poly, RatFun, partial_fractions
from hahnbispec.matrix import ExactMatrix
from hahnbispec.operators import (
    apply_grid,
    apply_ratfun,
    delta,
    kappa_residues,
    make_operator,
    make_tilde,
    make_X,
    make_Y,
    make_Z,
    matrix_in_e_basis,
    verify_heun_raising,
    verify_kappa_cubic,
    y_coefficients,
    y_monomial_constant,
)
from hahnbispec.params import Params

from conftest import draws

x = Poly.x()
HALF = Params(F(1, 2), F(1, 3), 1)


def test_x_coefficient_at_origin(generic):
    assert make_X(generic).a_zero(0) == -generic.alpha


def test_y_upper_coefficient_vanishes_at_N(generic):
    assert make_Y(generic).a_plus(generic.N) == 0


def test_z_lower_coefficient():
    assert make_Z(HALF).a_minus(1) == 2


def test_y_coefficients_share_factor(generic):
    for c in y_coefficients(generic):
        assert c(generic.alpha) == 0


def test_x_equals_alpha_minus_x_times_z(generic):
    X, Z = make_X(generic), make_Z(generic)
    factor = RatFun(generic.alpha - x)
    assert X.a_zero == factor * Z.a_zero
    assert X.a_minus == factor * Z.a_minus


def test_delta_matrices_small():
    assert matrix_in_e_basis(make_X(HALF), HALF) == ExactMatrix([[F(-1, 2), 0], [-1, F(1, 2)]])
    assert matrix_in_e_basis(make_Z(HALF), HALF) == ExactMatrix([[-1, 0], [2, -1]])


def test_y_delta_entries(generic):
    A1, A2, A0 = y_coefficients(generic)
    M = matrix_in_e_basis(make_Y(generic), generic)
    assert M[0, 1] == A1(0) and M[1, 0] == A2(1) and M[0, 0] == A0(0)
    assert M.bandwidth() == (1, 1)


@pytest.mark.parametrize("p", draws([1, 3, 5], 2))
def test_band_structure_and_boundaries(p):
    MX = matrix_in_e_basis(make_X(p), p)
    MZ = matrix_in_e_basis(make_Z(p), p)
    assert MX.bandwidth() == (1, 0) and MZ.bandwidth() == (1, 0)
    D = ExactMatrix.diag([p.alpha - k for k in range(p.N + 1)])
    assert MX == D @ MZ


def test_tilde_x_coefficient(generic):
    t = make_tilde(make_X(generic), generic)
    N, a, b = generic.N, generic.alpha, generic.beta
    assert t.a_zero == RatFun((N - x) - (b + 2 - a))


@pytest.mark.parametrize("family", ["X", "Y", "Z"])
def test_tilde_involution(generic, family):
    op = make_operator(family, generic)
    back = make_tilde(make_tilde(op, generic), generic)
    assert back.same_coefficients(op)


def test_tilde_z_boundary(generic):
    t = make_tilde(make_Z(generic), generic)
    assert t.a_minus(0) == 0
    t.check_boundary(generic.N)


def test_apply_grid_constant(generic):
    ones = [F(1)] * (generic.N + 1)
    assert apply_grid(make_X(generic), ones, generic) == tuple([-generic.alpha] * (generic.N + 1))


def test_apply_grid_z_on_delta():
    p = Params(F(1, 2), F(1, 3), 3)
    out = apply_grid(make_Z(p), delta(0, 3), p)
    assert out == (-1, 1 / (1 - p.alpha), 0, 0)


def test_apply_grid_y_on_delta(generic):
    A1, A2, A0 = y_coefficients(generic)
    out = apply_grid(make_Y(generic), delta(0, generic.N), generic)
    assert out[0] == A0(0) and out[1] == A2(1) and not any(out[2:])


@pytest.mark.parametrize("p", draws([2, 4], 2, seed=11))
def test_apply_grid_matches_matrix(p):
    rng = random.Random(5)
    for family in "XYZ":
        op = make_operator(family, p)
        M = matrix_in_e_basis(op, p)
        for _ in range(20):
            f = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(p.N + 1)]
            assert apply_grid(op, f, p) == M.apply(f)


def test_apply_ratfun_agrees_with_grid(generic):
    f = RatFun(x + 2, x - F(7, 3))
    values = [f(k) for k in range(generic.N + 1)]
    for family in "XYZ":
        op = make_operator(family, generic)
        image = apply_ratfun(op, f)
        assert tuple(image(k) for k in range(generic.N + 1)) == apply_grid(op, values, generic)


def test_x_on_pole_monomial():
    p = Params(F(1, 2), F(1, 3), 3)
    image = apply_ratfun(make_X(p), RatFun.simple_pole(F(3, 2)))
    assert image == RatFun.simple_pole(F(3, 2)) - RatFun.simple_pole(F(5, 2)) * F(5, 2)


def _z_monomial_image(a, n):
    return (RatFun.simple_pole(a) * (-a / (1 + n)) - RatFun.simple_pole(a + n)
            + RatFun.simple_pole(a + n + 1) * ((1 + a + n) / (1 + n)))


def test_z_on_first_pole():
    a = F(1, 2)
    p = Params(a, F(1, 3), 3)
    image = apply_ratfun(make_Z(p), RatFun.simple_pole(a))
    assert image == _z_monomial_image(a, 0)
    # at n = 0 the two terms at alpha merge
    assert image == RatFun.simple_pole(a) * (-a - 1) + RatFun.simple_pole(a + 1) * (1 + a)


def test_z_on_pole_ladder():
    p = Params(F(1, 3), F(1, 2), 5)
    for n in range(6):
        image = apply_ratfun(make_Z(p), RatFun.simple_pole(p.alpha + n))
        assert image == _z_monomial_image(p.alpha, n)


def test_y_annihilates_constants(generic):
    assert apply_ratfun(make_Y(generic), RatFun.const(1)).is_zero()
    A1, A2, A0 = y_coefficients(generic)
    assert (A0 + A1 + A2).is_zero()


def test_heun_x_n0_single_pole(generic):
    r = verify_heun_raising(make_X(generic), generic.alpha, 0)
    assert r.passed
    exp = r.details["expansions"][0]
    assert exp["constant"] == 0
    assert exp["residues"] == [[generic.alpha + 1, -(1 + generic.alpha)]]


def test_heun_z_residue_at_alpha():
    p = Params(F(1, 3), F(1, 2), 5)
    r = verify_heun_raising(make_Z(p), p.alpha, 5)
    assert r.passed
    for n, exp in r.details["expansions"].items():
        residues = dict((a, c) for a, c in exp["residues"])
        extra = -1 if n == 0 else 0
        assert residues[p.alpha] == -p.alpha / (1 + n) + extra


def test_heun_y_constant(generic):
    r = verify_heun_raising(make_Y(generic), generic.alpha, 5)
    assert r.passed
    for n in range(6):
        assert r.details["expansions"][n]["constant"] == generic.beta + 1
        assert y_monomial_constant(generic, n) == generic.beta + 1


def test_heun_detects_foreign_operator(generic):
    # multiplying by 1/(x - 100) leaves the prescribed span
    op = make_X(generic)
    bad = type(op)(op.a_plus, op.a_minus, op.a_zero * RatFun.simple_pole(100), "X", generic)
    r = verify_heun_raising(bad, generic.alpha, 2)
    assert not r.passed and r.counterexample["n"] == 0


@pytest.mark.parametrize("p", draws([4], 3, seed=2))
def test_kappa_cubic(p):
    assert verify_kappa_cubic(p).passed


def test_kappa_round_trip(generic):
    a = generic.alpha
    for n in range(1, 5):
        k1, k2, k3 = kappa_residues(generic, n)
        rebuilt = (RatFun.const(generic.beta + 1) + RatFun.simple_pole(a + n - 1) * k1
                   + RatFun.simple_pole(a + n) * k2 + RatFun.simple_pole(a + n + 1) * k3)
        assert rebuilt == apply_ratfun(make_Y(generic), RatFun.simple_pole(a + n))


def test_kappa_n0_raw_decomposition(generic):
    a = generic.alpha
    k1, k2, k3 = kappa_residues(generic, 0)
    assert k1 == 0
    pf = partial_fractions(apply_ratfun(make_Y(generic), RatFun.simple_pole(a)), [a - 1, a, a + 1])
    assert pf.residue_at(a) == k2 and pf.residue_at(a + 1) == k3


def test_genericity_enforced():
    with pytest.raises(InvalidParams):
        Params(F(1), F(1, 3), 2)
    with pytest.raises(InvalidParams):
        Params(F(1, 3), F(4, 3), 2)
    assert not Params(F(1), F(1, 3), 2, force=True).is_generic
