from fractions import Fraction

import pytest
import sympy

from conftest import P4, R4, XY, poly
from czcriterion.errors import CancellationViolation, OddComponent
from czcriterion.harmonic import (
    HarmonicExpansion,
    decompose,
    decompose_linear_solve,
    xy_family_coefficients,
    xy_family_generate,
    xy_family_printed_recurrence,
    expansion_from_numerator,
    harmonic_projection,
)
from czcriterion.poly import HPoly


def test_decompose_examples():
    assert decompose(XY) == [(XY, 0)]
    assert decompose(P4) == [(P4, 0)]
    layers = decompose(poly(2, {(2, 2): 1}))
    assert layers == [(P4.scale(Fraction(-1, 8)), 0), (HPoly.constant(2, Fraction(1, 8)), 2)]


@pytest.mark.parametrize("p", [
    poly(2, {(2, 2): 1}),
    poly(3, {(4, 0, 0): 1, (1, 1, 2): -3}),
    poly(3, {(2, 2, 2): 1}),
    poly(4, {(2, 1, 0, 1): 5, (0, 0, 0, 4): 1}),
])
def test_projection_agrees_with_linear_solve(p):
    assert decompose(p) == decompose_linear_solve(p)


def test_expansion_from_numerator_examples():
    num = XY * HPoly.radial(2, 1) + P4
    exp = expansion_from_numerator(num)
    assert exp.components == ((2, XY), (4, P4))
    assert expansion_from_numerator(R4).components == ((4, R4),)
    with pytest.raises(CancellationViolation):
        expansion_from_numerator(HPoly.radial(2, 2))
    with pytest.raises(OddComponent):
        expansion_from_numerator(poly(2, {(3, 0): 1}))


def test_expansion_validation_and_json():
    with pytest.raises(ValueError):
        HarmonicExpansion(2, ((2, poly(2, {(2, 0): 1})),))
    exp = HarmonicExpansion.from_polys(XY, R4)
    assert HarmonicExpansion.from_json_obj(exp.to_json_obj()) == exp
    assert exp.numerator() == poly(2, {(3, 1): 2})


def test_xy_family_small_cases():
    x, y, z = sympy.symbols("x y z")
    assert xy_family_generate(0) == poly(3, {(1, 1, 0): 1})
    assert xy_family_generate(1) == poly(3, {(1, 1, 2): 1, (1, 3, 0): Fraction(-1, 3)})
    # Independent check of j = 2 with sympy: solve for c1, c2 directly.
    c1, c2 = sympy.symbols("c1 c2")
    expr = x * y * (z ** 4 + c1 * y ** 2 * z ** 2 + c2 * y ** 4)
    lap = sympy.expand(sum(sympy.diff(expr, s, 2) for s in (x, y, z)))
    sol = sympy.solve(sympy.Poly(lap, x, y, z).coeffs(), [c1, c2])
    c = xy_family_coefficients(2)
    assert (sympy.Rational(c[1].numerator, c[1].denominator), sympy.Rational(c[2].numerator, c[2].denominator)) == (
        sol[c1], sol[c2])


def test_printed_recurrence_differs():
    assert xy_family_printed_recurrence(1)[1] == -3
    assert xy_family_coefficients(1)[1] == Fraction(-1, 3)


def test_projection_is_harmonic_sympy():
    p = poly(3, {(3, 1, 2): 2, (0, 6, 0): -1, (2, 2, 2): 1})
    h = harmonic_projection(p)
    x = sympy.symbols("x0:3")
    e = sum(sympy.Rational(c.numerator, c.denominator) * x[0] ** a * x[1] ** b * x[2] ** cc
            for (a, b, cc), c in h.terms.items())
    assert sympy.expand(sum(sympy.diff(e, s, 2) for s in x)) == 0
