from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import P4, R4, XY, poly
from czcriterion.errors import DegreeMismatch, DimensionMismatch, ZeroDivisor
from czcriterion.poly import (
    HPoly,
    apply_diff,
    coeff_norm,
    evaluate_exact,
    from_json,
    laplacian,
    poly_arith,
    poly_mul,
    poly_scale,
    sphere_integral,
    to_json,
    try_divide,
)
from czcriterion.scalar import PiScalar

PI = PiScalar.pi_power(1)


def to_sympy(p, syms):
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, a in zip(syms, e):
            term *= s ** a
        out += term
    return sympy.expand(out)


def test_arith_examples():
    assert poly_arith(XY, -XY, "add").is_zero()
    assert poly_arith(XY, -XY, "add").degree == 2
    assert poly_mul(XY, HPoly.radial(2, 1)) == poly(2, {(3, 1): 1, (1, 3): 1})
    assert poly_scale(XY, -PI).coeff((1, 1)) == -PI


def test_shape_errors():
    with pytest.raises(DegreeMismatch):
        XY + R4
    with pytest.raises(DimensionMismatch):
        XY + poly(3, {(1, 1, 0): 1})
    with pytest.raises(DegreeMismatch):
        HPoly(2, 2, {(1, 0): 1})


def test_laplacian_examples():
    assert laplacian(XY).is_zero()
    assert laplacian(HPoly.radial(2, 1)) == HPoly.constant(2, 4)
    assert laplacian(P4).is_zero()


def test_apply_diff_examples():
    assert apply_diff(XY, HPoly.radial(2, 2)) == XY.scale(8)
    assert apply_diff(XY, HPoly.radial(2, 1)).is_zero()
    x2y2 = poly(2, {(2, 2): 1})
    diff = poly(2, {(2, 0): 1, (0, 2): -1})
    assert apply_diff(diff, x2y2) == poly(2, {(0, 2): 2, (2, 0): -2})


def test_try_divide_examples():
    assert try_divide(R4, XY) == poly(2, {(2, 0): 1, (0, 2): -1})
    assert try_divide(P4, XY) is None
    assert try_divide(P4, P4) == HPoly.constant(2, 1)
    with pytest.raises(ZeroDivisor):
        try_divide(P4, HPoly.zero(2, 2))


def test_try_divide_orders_agree():
    f = poly(3, {(2, 1, 1): 1, (0, 3, 1): -2, (1, 1, 2): 5})
    g = poly(3, {(1, 0, 1): 1, (0, 1, 1): 3})
    h = f * g
    assert try_divide(h, g, "grlex") == f
    assert try_divide(h, g, "grevlex") == f


def test_sphere_integral_examples():
    assert sphere_integral(poly(2, {(2, 0): 1})) == Fraction(1, 2)
    assert sphere_integral(poly(2, {(4, 0): 1})) == Fraction(3, 8)
    assert sphere_integral(poly(3, {(2, 2, 0): 1})) == Fraction(1, 15)
    assert sphere_integral(XY) == 0


def test_sphere_integral_against_angle_quadrature():
    t = sympy.symbols("t")
    p = poly(2, {(6, 0): 1, (2, 4): 3})
    exact = sympy.integrate(sympy.cos(t) ** 6 + 3 * sympy.cos(t) ** 2 * sympy.sin(t) ** 4, (t, 0, 2 * sympy.pi)) / (2 * sympy.pi)
    assert sympy.Rational(sphere_integral(p).numerator, sphere_integral(p).denominator) == sympy.simplify(exact)


def test_evaluation_examples():
    assert evaluate_exact(XY, (Fraction(1, 2), Fraction(1, 3))) == Fraction(1, 6)
    assert evaluate_exact(P4, (1, 0)) == 1
    assert coeff_norm(P4) == 8
    with pytest.raises(DimensionMismatch):
        XY.evaluate((1, 2, 3))


def test_json_round_trip():
    p = poly(3, {(2, 1, 1): Fraction(-7, 3), (0, 0, 4): 2})
    assert from_json(to_json(p)) == p
    with pytest.raises(DegreeMismatch):
        from_json('{"n_vars": 2, "terms": [{"exp": [1, 0], "coeff": "1"}, {"exp": [1, 1], "coeff": "1"}]}')
    with pytest.raises(ValueError):
        from_json('{"n_vars": 2, "terms": [{"exp": [1, 1], "coeff": "1/x"}]}')


coeffs = st.integers(-5, 5).map(Fraction)


@st.composite
def hpolys(draw, n=None, degree=None):
    n = draw(st.integers(2, 3)) if n is None else n
    d = draw(st.integers(0, 5)) if degree is None else degree
    from czcriterion.poly import monomials
    mons = monomials(n, d)
    picks = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=4, unique=True))
    return HPoly(n, d, {e: draw(coeffs) for e in picks})


@given(hpolys())
def test_laplacian_matches_sympy(p):
    syms = sympy.symbols(f"x0:{p.n_vars}")
    e = to_sympy(p, syms)
    lap = sum(sympy.diff(e, s, 2) for s in syms)
    assert sympy.expand(lap - to_sympy(p.laplacian(), syms)) == 0


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(hpolys(n=n), hpolys(n=n))))
def test_apply_diff_matches_sympy(pq):
    p, q = pq
    syms = sympy.symbols(f"x0:{p.n_vars}")
    e = to_sympy(q, syms)
    total = sympy.Integer(0)
    for exp, c in p.terms.items():
        d = e
        for s, a in zip(syms, exp):
            if a:
                d = sympy.diff(d, s, a)
        total += sympy.Rational(c.numerator, c.denominator) * d
    assert sympy.expand(total - to_sympy(apply_diff(p, q), syms)) == 0
