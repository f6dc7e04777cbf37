import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from unicyclic_energy.charpoly import charpoly_cycle, charpoly_p6, charpoly_path
from unicyclic_energy.exact import (
    ImagAxisLog,
    InvariantViolation,
    NotBipartiteForm,
    Poly,
    SurdElem,
    SurdFrac,
    bipartite_b_coeffs,
    eval_log_magnitude_imag_axis,
    is_bipartite_form,
    log_ratio_imag_axis,
)

X = Poly.x()
S = SurdElem.s()
HALF = Fraction(1, 2)
Z1 = SurdElem.of(X * HALF, HALF)
Z2 = SurdElem.of(X * HALF, -HALF)

small_poly = st.lists(st.integers(-5, 5), max_size=4).map(Poly)
rat_poly = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), max_size=3).map(Poly)
surd = st.builds(SurdElem, rat_poly, rat_poly)


def to_sympy(p: Poly):
    x = sp.Symbol("x")
    return sp.Poly(list(reversed([sp.Rational(c) for c in p.coeffs])) or [0], x)


def test_poly_examples():
    assert (X * X - 1) * (X * X - 1) == Poly((1, 0, -2, 0, 1))
    assert (X * 0).is_zero() and (X * 0).degree == -1
    assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly((Fraction(4, 2),)).coeffs == (2,) and isinstance(Poly((Fraction(4, 2),)).coeffs[0], int)
    assert (X * X - 1).compose_x2() == Poly((-1, 0, 0, 0, 1))
    assert Poly((1, 2, 3)).reflect() == Poly((1, -2, 3))


@given(small_poly, small_poly, small_poly)
def test_poly_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not (a.is_zero() or b.is_zero()):
        assert (a * b).degree == a.degree + b.degree


@given(small_poly, small_poly)
def test_poly_multiplication_matches_sympy(a, b):
    assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)


@given(rat_poly)
def test_serialize_round_trip(p):
    assert Poly.parse(p.serialize()) == p


def test_serialize_format():
    assert Poly((4, 0, -16)).serialize() == "4,0,-16"


@given(surd, surd, surd)
def test_surd_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * a.conj()).is_rational()
    assert (a * b).norm() == a.norm() * b.norm()


@given(surd, surd)
def test_surd_fraction_division(a, b):
    if b.norm().is_zero():
        return
    q = SurdFrac.quotient(a, b)
    assert (q * b).equals(a)


def test_z_relations():
    assert (Z1 + Z2) == SurdElem.of(X)
    assert (Z1 * Z2) == SurdElem.of(-1)
    sq = Z1 * Z1
    assert sq == SurdElem.of(X * X * HALF + 1, X * HALF)


@given(st.integers(0, 40))
def test_power_sums_rational(n):
    assert (Z1 ** n + Z2 ** n).is_rational()


def test_clear_denominators():
    # Z1^3 = (x^3 + 3x)/2 + (x^2 + 1)/2 * s
    e, d = (Z1 ** 3).clear_denominators()
    assert d == 2 and e == SurdElem.of(X ** 3 + 3 * X, X * X + 1)
    assert e * Fraction(1, d) == Z1 ** 3


def test_surd_numeric_matches_sympy():
    x = sp.Symbol("x")
    z1 = (x + sp.sqrt(x ** 2 + 4)) / 2
    e = Z1 ** 7 + Z1 * 3 - X
    ref = sp.lambdify(x, sp.expand(z1 ** 7 + 3 * z1 - x))
    for v in (0.0, 0.7, 2.5, -1.3):
        assert math.isclose(e(v), ref(v), rel_tol=1e-12, abs_tol=1e-12)


def test_bipartite_b_coeffs_examples():
    assert bipartite_b_coeffs(charpoly_p6(8)) == [1, 8, 19, 16, 4]
    assert bipartite_b_coeffs(charpoly_path(2)) == [1, 1]
    assert bipartite_b_coeffs(charpoly_cycle(8)) == [1, 8, 20, 16, 0]
    with pytest.raises(NotBipartiteForm):
        bipartite_b_coeffs(charpoly_cycle(3))
    with pytest.raises(InvariantViolation):
        bipartite_b_coeffs(Poly((1, 0, 1)))
    assert is_bipartite_form(charpoly_cycle(10)) and not is_bipartite_form(charpoly_cycle(9))


def test_log_magnitude_examples():
    assert math.isclose(eval_log_magnitude_imag_axis(charpoly_path(2), 1.0), math.log(2))
    assert eval_log_magnitude_imag_axis(charpoly_cycle(4), 0.0) == -math.inf
    assert math.isclose(eval_log_magnitude_imag_axis(charpoly_p6(8), 1.0), math.log(48))


@pytest.mark.parametrize("p", [charpoly_cycle(3), charpoly_cycle(9), charpoly_p6(9), charpoly_p6(12), charpoly_cycle(20)])
def test_log_magnitude_against_complex_evaluation(p):
    xs = np.array([-3.0, -0.4, 0.05, 0.9, 1.0, 1.7, 4.0])
    ref = np.log(np.abs(np.polyval(np.array(p.float_coeffs()[::-1], dtype=complex), 1j * xs)))
    assert np.allclose(eval_log_magnitude_imag_axis(p, xs), ref, rtol=1e-12, atol=1e-12)


def test_log_magnitude_high_degree_against_mpmath():
    import mpmath as mp

    mp.mp.dps = 50
    p = charpoly_p6(400)
    for x in (0.3, 3.0, 25.0):
        val = mp.polyval([mp.mpf(c) for c in reversed(p.coeffs)], mp.mpc(0, x))
        assert math.isclose(eval_log_magnitude_imag_axis(p, x), float(mp.log(abs(val))), rel_tol=1e-12)


@given(st.floats(-50, 50, allow_nan=False))
def test_log_magnitude_even_for_bipartite(x):
    p = charpoly_p6(23)
    assert eval_log_magnitude_imag_axis(p, x) == eval_log_magnitude_imag_axis(p, -x)


@given(st.integers(3, 60), st.floats(2, 1e3))
def test_b0_dominates_from_below(n, x):
    p = charpoly_cycle(n) if n % 2 == 0 else charpoly_path(n)
    assert eval_log_magnitude_imag_axis(p, x) >= n * math.log(x) - 1e-12


def test_reduced_log_and_ratio():
    pa, pb = charpoly_cycle(18), charpoly_p6(18)
    ea, eb = ImagAxisLog(pa), ImagAxisLog(pb)
    xs = np.array([0.2, 1.0, 7.0, 1e6, 1e200])
    direct = np.array([ea.log_abs(v) - eb.log_abs(v) for v in xs[:3]])
    assert np.allclose(log_ratio_imag_axis(ea, eb, xs[:3]), direct, atol=1e-13)
    assert np.all(np.isfinite(log_ratio_imag_axis(ea, eb, xs)))
    assert abs(log_ratio_imag_axis(ea, eb, 1e200)) < 1e-300 + 1e-200
