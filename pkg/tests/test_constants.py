import math
from fractions import Fraction

import pytest
import sympy

from conftest import XY, R4, xy_triple_specs
from czcriterion.constants import (
    C2j,
    C2j_closed,
    a2p_functional,
    a_coefficient_closed,
    a_coefficients,
    a_coefficients_solve,
    b_polynomial,
    bessel_series_coeff,
    bessel_series_coeff_float,
    c_ljk,
    c_ljk_from_A,
    c_ljk_symbolic,
    fundamental_constants,
    fundamental_derivatives_at_one,
    decay_ratios,
    mu_closed,
    s_from_components,
    s_polynomial,
    series_coefficient,
)
from czcriterion.criterion import OperatorSpec
from czcriterion.errors import IndexOutOfRange
from czcriterion.poly import HPoly, laplacian
from czcriterion.scalar import PiScalar

PI = PiScalar.pi_power(1)
INV_PI = PiScalar.pi_power(-1)


def sym(x):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return sympy.Rational(x.numerator, x.denominator)
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.pi ** sympy.Rational(e.numerator, e.denominator)
                for e, c in x.terms), sympy.Integer(0))


def test_fundamental_constant_examples():
    assert fundamental_constants(3, 1).beta == 0
    fc = fundamental_constants(2, 1)
    assert fc.alpha == 0 and fc.beta == INV_PI / 4
    assert fundamental_constants(2, 2).beta == INV_PI / 16
    assert fundamental_constants(6, 2).beta == 0
    assert fundamental_constants(6, 2).case_tag == "even-small-N"


@pytest.mark.parametrize("n,N", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (5, 3), (6, 3), (6, 4)])
def test_fundamental_solution_recursion_sympy(n, N):
    """Lap E_N = E_{N-1} up to polynomial terms, away from the origin."""
    r = sympy.symbols("r", positive=True)

    def E(k):
        fc = fundamental_constants(n, k)
        return r ** (2 * k - n) * (sym(fc.alpha) + sym(fc.beta) * sympy.log(r ** 2))

    lap = sympy.diff(E(N), r, 2) + (n - 1) / r * sympy.diff(E(N), r)
    diff = sympy.expand(sympy.simplify(lap - E(N - 1)))
    # What remains must be a polynomial in r^2 (killed by Lap^{N-1}).
    assert not diff.has(sympy.log)
    poly_part = sympy.Poly(sympy.expand(diff), r) if diff != 0 else None
    if poly_part is not None:
        assert all(m[0] % 2 == 0 and m[0] // 2 < N - 1 for m in poly_part.monoms())


def test_fundamental_solution_base_case():
    r = sympy.symbols("r", positive=True)
    for n in (2, 3, 4, 5):
        fc = fundamental_constants(n, 1)
        E = r ** (2 - n) * (sym(fc.alpha) + sym(fc.beta) * sympy.log(r ** 2))
        # Flux of grad E through the sphere of radius r is 1.
        flux = sympy.simplify(sympy.diff(E, r) * sym(PiScalar.pi_power(Fraction(n, 2))) * 2 / sympy.gamma(
            sympy.Rational(n, 2)) * r ** (n - 1))
        assert flux == 1


def test_a_coefficient_examples():
    A = a_coefficients(2, 1).coefficients
    assert A == (-INV_PI / 4, INV_PI / 4)
    assert a_coefficients(2, 2).coefficients[3] == -INV_PI / 96
    assert a_coefficient_closed(2, 2, 3) == -INV_PI / 96
    with pytest.raises(IndexOutOfRange):
        a_coefficient_closed(2, 1, 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_a_taylor_match_sympy(n, N):
    """The glued polynomial matches 2N derivatives of E_N(t) at t = 1."""
    t = sympy.symbols("t", positive=True)
    fc = fundamental_constants(n, N)
    E = t ** (N - sympy.Rational(n, 2)) * (sym(fc.alpha) + sym(fc.beta) * sympy.log(t))
    P = sum(sym(c) * t ** L for L, c in enumerate(a_coefficients_solve(n, N).coefficients))
    for k in range(2 * N):
        assert sympy.simplify(sympy.diff(E - P, t, k).subs(t, 1)) == 0


def test_derivatives_at_one_log_formula():
    # For i >= N+1 (n even, N >= n/2), the log part is (N-m)! (-1)^(i-N+m-1) (i-N+m-1)!.
    n, N = 4, 3
    m = 2
    beta = fundamental_constants(n, N).beta
    ders = fundamental_derivatives_at_one(n, N, 2 * N - 1)
    for i in range(N + 1, 2 * N):
        expected = beta * math.factorial(N - m) * (-1) ** (i - N + m - 1) * math.factorial(i - N + m - 1)
        alpha_part = fundamental_constants(n, N).alpha * Fraction(math.prod(N - m - q for q in range(i)))
        assert ders[i] == expected + alpha_part


def test_b_polynomial_examples():
    assert b_polynomial(2, 1).coefficients == (INV_PI,)
    for n in (2, 3, 4):
        for N in range(1, 6):
            assert len(b_polynomial(n, N).coefficients) <= N


@pytest.mark.parametrize("n,N", [(2, 2), (3, 2), (2, 3)])
def test_b_polynomial_by_direct_laplacian(n, N):
    A = a_coefficients(n, N).coefficients
    total = HPoly.zero(n, 0)
    parts = {}
    for L, c in enumerate(A):
        if L >= N:
            term = laplacian(HPoly.radial(n, L).scale(c), N)
            parts[term.degree] = parts.get(term.degree, HPoly.zero(n, term.degree)) + term
    for k, c in enumerate(b_polynomial(n, N).coefficients):
        assert parts[2 * k] == HPoly.radial(n, k).scale(c)


def test_s_polynomial_examples():
    assert s_polynomial(OperatorSpec.from_components(XY)) == {}
    _, ok, _ = xy_triple_specs()
    S = s_polynomial(ok)
    assert S and S == s_from_components(ok)
    S2 = s_polynomial(ok.scaled(2))
    assert S2 == {d: p.scale(2) for d, p in S.items()}


def test_c_ljk_paths_n2_N3():
    n, N = 2, 3
    for l in range(N + 1, 2 * N):
        for j in range(1, l - N + 1):
            for k in range(0, l - N - j + 1):
                v = c_ljk(n, N, l, j, k)
                assert v == c_ljk_from_A(n, N, l, j, k) == c_ljk_symbolic(n, N, l, j, k)
    with pytest.raises(IndexOutOfRange):
        c_ljk(2, 3, 3, 1, 0)


def test_c_ljk_sign_alternates_in_k():
    v0, v1 = c_ljk(2, 4, 7, 1, 0), c_ljk(2, 4, 7, 1, 1)
    assert (v0 > 0) != (v1 > 0)


def test_bessel_series_examples():
    assert bessel_series_coeff(1, 0) == Fraction(1, 2)
    assert bessel_series_coeff(2, 0) == Fraction(1, 8)
    with pytest.raises(ValueError):
        bessel_series_coeff(Fraction(1, 2), 1)
    assert math.isclose(bessel_series_coeff_float(0.5, 1), -1 / (math.gamma(2.5) * 2 ** 2.5))


def test_C2j_examples():
    assert C2j(2, 3, 1) == (Fraction(1, 16), Fraction(1, 16), 0)
    assert C2j(2, 5, 1).closed_form == Fraction(1, 16)
    with pytest.raises(IndexOutOfRange):
        C2j(2, 3, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_C2j_sign_and_nonvanishing(n):
    for j in range(1, 8):
        c = float(C2j_closed(n, j))
        assert c != 0 and (c > 0) == (j % 2 == 1)


def test_a2p_examples():
    for n in (2, 3, 4):
        for j0 in (1, 2, 3):
            f = a2p_functional(n, j0 + 2, j0)
            assert f.coefficients[j0] == C2j_closed(n, j0)
    for p in range(1, 5):
        ref = a2p_functional(2, p + 1, p)
        for N in range(p + 1, 8):
            assert a2p_functional(2, N, p) == ref


def test_pure_riesz_series_is_zero():
    spec = OperatorSpec.from_components(R4)
    comps = {d // 2: p for d, p in spec.expansion.components}
    for p in range(1, 8):
        assert series_coefficient(spec, p).evaluate_exact(comps, (Fraction(3, 5), Fraction(4, 5))) == 0


def test_decay_ratios_bounded():
    _, ok, _ = xy_triple_specs()
    ratios = decay_ratios(ok, 12)
    assert all(math.isfinite(r) for r in ratios)
    assert max(ratios) < 10 * max(ratios[:3])


def test_mu_closed_has_no_N():
    assert mu_closed(2, 3) == tuple(sorted(a2p_functional(2, 9, 3).coefficients.items()))
