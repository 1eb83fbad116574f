from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from czcriterion.identities import (
    DEFAULT_RANGES,
    SweepRanges,
    d_sum,
    factorial_sum_admissible,
    fact,
    iter_reports,
    run_suite,
    verify_d_recursion,
    verify_d_step,
    verify_falling_binomial_sum,
    verify_factorial_binomial_sum,
    verify_first_sum_vanishes,
    verify_leading_sum,
    verify_double_sum,
    verify_triple_binomial,
)
from czcriterion.scalar import binom


def test_examples():
    r = verify_falling_binomial_sum(2, 1, 0)
    assert r.equal and r.lhs == 1
    assert verify_leading_sum(2, 2, 1).equal
    assert verify_triple_binomial(1, 1, 2, 3).equal
    assert verify_triple_binomial(1, 1, 2, 3).rhs == 6


def test_half_integer_factorials():
    assert fact(Fraction(1, 2)).terms == ((Fraction(1, 2), Fraction(1, 2)),)
    with pytest.raises(ValueError):
        fact(-1)


def test_factorial_sum_skips_outside_range():
    assert not factorial_sum_admissible(2, 3, 0)
    rep = verify_factorial_binomial_sum(2, 3, 0)
    assert rep.skipped and not rep.equal
    assert verify_factorial_binomial_sum(4, 3, 2).equal


def test_single_point_and_empty_ranges():
    single = run_suite(reports=[verify_falling_binomial_sum(3, 2, 1)])
    assert single.count == 1 and not single.failures
    empty = run_suite(SweepRanges(dims=(), n_max=0, triple_max=-1))
    assert empty.count == 0 and empty.skipped == 0


def test_failures_are_reported():
    from czcriterion.identities import IdentityReport

    bad = IdentityReport("x", (1,), Fraction(1), Fraction(2), False)
    res = run_suite(reports=[bad])
    assert res.failures == [bad] and res.to_json_obj()["failures"] == 1


def test_d_family_small():
    for n in (2, 3):
        for N in range(2, 6):
            for j in range(N):
                for mm in range(N - j):
                    assert verify_d_recursion(n, N, j, mm).equal
                    if mm:
                        assert verify_d_step(n, N, j, mm).equal
                        assert verify_first_sum_vanishes(n, N, j, mm).equal
    assert d_sum(2, 3, 2, 0) == verify_d_recursion(2, 3, 2, 0).rhs


def test_range_checks():
    with pytest.raises(ValueError):
        verify_double_sum(2, 3, 1, 2, 0)
    with pytest.raises(ValueError):
        verify_leading_sum(2, 3, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4),
       st.fractions(min_value=-6, max_value=6, max_denominator=6),
       st.fractions(min_value=-6, max_value=6, max_denominator=6))
def test_triple_binomial_random_real_arguments(m, nn, r, s):
    assert verify_triple_binomial(m, nn, r, s).equal


def test_default_sweep_has_no_failures():
    res = run_suite(DEFAULT_RANGES)
    assert res.failures == [] and res.count > 5000
    names = {r.name for r in iter_reports(SweepRanges(dims=(2,), n_max=3, triple_max=1))}
    assert names == {"falling_binomial_sum", "factorial_binomial_sum", "leading_sum", "double_sum", "d_recursion", "d_step",
                     "first_sum_vanishes", "triple_binomial"}


def test_generalized_binomial():
    assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom(-2, 3) == -4
