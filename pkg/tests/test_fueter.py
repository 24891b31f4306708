from fractions import Fraction
from math import factorial

import pytest
import sympy

from symfueter.catalog import make_Ds, make_Xs, make_Z
from symfueter.config import CapExceeded, Caps
from symfueter.exactnum import GaussianRational, I, gr_pow
from symfueter.fueter import (
    AbstractMonogenicWord, _peel_scalar, bessel_coefficient, bessel_polynomial, build_M,
    build_M_by_iteration, check_deformed_kernel, fischer_decompose, fischer_reconstruct,
    fueter_map, gamma_coefficient, is_monogenic, materialize, odd_double_factorial,
    random_monogenic, random_spinor,
)
from symfueter.operalg import op_apply, op_apply_power
from symfueter.polyspinor import SpinorFunction, SymplecticPolynomial


def test_small_coefficients():
    assert [odd_double_factorial(j) for j in range(5)] == [1, 1, 3, 15, 105]
    assert gamma_coefficient(0, 0) == 1
    assert [gamma_coefficient(1, j) for j in range(2)] == [-I, -I]
    assert gamma_coefficient(2, 1) == -6
    assert bessel_polynomial(2).coefficients == (1, 3, 3)
    with pytest.raises(ValueError):
        gamma_coefficient(2, 3)


@pytest.mark.parametrize("p", range(11))
def test_gamma_is_a_scaled_bessel_coefficient(p):
    for j in range(p + 1):
        assert gamma_coefficient(p, j) == gr_pow(-I, p) * factorial(p) * bessel_coefficient(p, j)


@pytest.mark.parametrize("p", range(7))
def test_bessel_polynomial_solves_its_ode(p):
    # x^2 y'' + (2x + 2) y' - p(p+1) y = 0 for the reverse-free Bessel polynomial
    x = sympy.symbols("x")
    y = sum(sympy.Rational(c.numerator, c.denominator) * x ** j
            for j, c in enumerate(bessel_polynomial(p).coefficients))
    assert sympy.expand(x ** 2 * y.diff(x, 2) + (2 * x + 2) * y.diff(x) - p * (p + 1) * y) == 0
    assert bessel_polynomial(p)(Fraction(0)) == 1


def test_first_iterate_by_hand():
    # -i(y + X_s q) psi with X_s q psi = (y(1 - q^2) + i x q^2) psi
    x, y, q = (SymplecticPolynomial.variable(1, v, 1) for v in "xyq")
    expected = (y.scale(-2 * I) + (y * q * q).scale(I) + x * q * q)
    assert build_M_by_iteration(1) == SpinorFunction(expected)
    assert build_M_by_iteration(0) == SpinorFunction.gaussian(1)


@pytest.mark.parametrize("ell", range(7))
def test_closed_form_matches_iteration(ell):
    assert materialize(build_M(ell), 1) == build_M_by_iteration(ell)


def test_word_shape_checked():
    with pytest.raises(ValueError):
        AbstractMonogenicWord(2, (GaussianRational(1),))


@pytest.mark.parametrize("n", [2, 3])
def test_fueter_map_outputs(n):
    nonzero = 0
    for ell in range(7):
        f = fueter_map(ell, n)
        assert is_monogenic(f)
        if ell < 2 * n - 2:
            assert f.is_zero()
        else:
            assert not f.is_zero()
            assert f.xy_degrees() == [ell - (2 * n - 2)]
            nonzero += 1
    assert nonzero >= 1


def test_fueter_map_in_dimension_one_is_the_word():
    assert fueter_map(3, 1) == build_M_by_iteration(3)


def test_caps():
    with pytest.raises(CapExceeded):
        fueter_map(5, 2, Caps(max_ell=4))
    with pytest.raises(CapExceeded):
        fueter_map(2, 5)


def test_caps_from_environment(monkeypatch):
    monkeypatch.setenv("SYMFUETER_MAX_N", "2")
    assert Caps.from_env().max_n == 2
    monkeypatch.setenv("SYMFUETER_MAX_N", "two")
    with pytest.raises(ValueError):
        Caps.from_env()


@pytest.mark.parametrize("n,ell", [(1, 3), (2, 2), (3, 1)])
def test_random_monogenic(n, ell):
    f = random_monogenic(n, ell, seed=4)
    assert is_monogenic(f) and f.xy_degrees() == [ell]
    assert random_monogenic(n, ell, seed=4) == f


@pytest.mark.parametrize("n", [1, 2])
def test_deformed_kernel(n):
    for k in range(3):
        report = check_deformed_kernel(1, n, k, trials=3, seed=1)
        assert report.all_pass, report.to_json()


def test_undeformed_raiser_fails_for_a_deformed_kernel():
    # X_s^2 psi lies in ker D_s^3; Z^[2,0] need not keep it there, Z^[2,1] must
    n = 1
    F = op_apply_power(make_Xs(n), 2, SpinorFunction.gaussian(n))
    Ds = make_Ds(n)
    assert op_apply_power(Ds, 3, op_apply(make_Z(1, n, 1), F)).is_zero()
    assert not op_apply_power(Ds, 3, op_apply(make_Z(1, n, 0), F)).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_peeling_scalar_closed_form(n):
    # D_s^r X_s^r G = prod_{t=1}^r (-i) t (ell + n + (t-1)/2) G, from the sl(2) relations
    for ell in range(3):
        G = random_monogenic(n, ell, seed=2)
        for r in range(1, 4):
            expected = GaussianRational(1)
            for t in range(1, r + 1):
                expected = expected * (-I) * t * (ell + n + Fraction(t - 1, 2))
            assert _peel_scalar(G, r, make_Ds(n), make_Xs(n)) == expected


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("n", [1, 2])
def test_fischer_round_trip(n, seed):
    F = random_spinor(n, 5, seed)
    parts = fischer_decompose(F)
    assert all(is_monogenic(g) for _, g in parts)
    assert fischer_reconstruct(parts, n) == F


def test_fischer_of_a_monogenic_is_itself():
    f = random_monogenic(2, 2, seed=0)
    assert fischer_decompose(f) == [(0, f)]
    g = op_apply_power(make_Xs(2), 2, f)
    (j, part), = fischer_decompose(g)
    assert j == 2 and part == f
