"""Exact finite-range verification of the binomial identities behind the constants.

Both sides of every identity are computed independently with exact
arithmetic.  Factorials of half-integers are read as ``Gamma(x + 1)``, so the
odd-dimensional cases stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional

from .scalar import binom, canonical, falling, format_scalar, gamma_halfint


@dataclass(frozen=True)
class IdentityReport:
    name: str
    params: tuple
    lhs: object
    rhs: object
    equal: bool
    skipped: bool = False

    def to_json_obj(self) -> dict:
        return {
            "identity": self.name,
            "params": [str(p) for p in self.params],
            "lhs": format_scalar(self.lhs) if self.lhs is not None else None,
            "rhs": format_scalar(self.rhs) if self.rhs is not None else None,
            "equal": self.equal,
            "skipped": self.skipped,
        }


def _report(name, params, lhs, rhs) -> IdentityReport:
    lhs, rhs = canonical(lhs), canonical(rhs)
    return IdentityReport(name, tuple(params), lhs, rhs, lhs == rhs)


def _skip(name, params) -> IdentityReport:
    return IdentityReport(name, tuple(params), None, None, False, skipped=True)


def fact(x):
    """``x!`` as ``Gamma(x + 1)`` for integer or half-integer ``x >= 0``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"factorial of negative argument {x}")
    if x.denominator == 1:
        return Fraction(factorial(int(x)))
    return gamma_halfint(x + 1)


def _sum(terms: Iterable):
    total = Fraction(0)
    for t in terms:
        total = total + t
    return canonical(total)


def verify_falling_binomial_sum(n: int, N: int, L: int) -> IdentityReport:
    """``sum_{i=L}^{2N-1} (N-m)_i (-1)^i / i! binom(i, L) = (-1)^L binom(N-m, L) binom(m+N-1, 2N-1-L)``."""
    m = Fraction(n, 2)
    a = N - m
    lhs = _sum(falling(a, i) * Fraction((-1) ** i, factorial(i)) * binom(i, L) for i in range(L, 2 * N))
    rhs = (-1) ** L * binom(a, L) * binom(m + N - 1, 2 * N - 1 - L)
    return _report("falling_binomial_sum", (n, N, L), lhs, rhs)


def factorial_sum_admissible(n: int, N: int, L: int) -> bool:
    """Every factorial argument ``i - N + m - 1`` (``i >= L``) and ``L - N + m - 1`` is non-negative."""
    m = Fraction(n, 2)
    return 0 <= L <= 2 * N - 1 and L - N + m - 1 >= 0


def verify_factorial_binomial_sum(n: int, N: int, L: int) -> IdentityReport:
    """``sum_{i=L}^{2N-1} (i-N+m-1)! / i! binom(i, L) = (L-N+m-1)!/L! binom(N+m-1, 2N-1-L)``."""
    if not factorial_sum_admissible(n, N, L):
        return _skip("factorial_binomial_sum", (n, N, L))
    m = Fraction(n, 2)
    lhs = _sum(fact(i - N + m - 1) * binom(i, L) / factorial(i) for i in range(L, 2 * N))
    rhs = fact(L - N + m - 1) / factorial(L) * binom(N + m - 1, 2 * N - 1 - L)
    return _report("factorial_binomial_sum", (n, N, L), lhs, rhs)


def verify_leading_sum(n: int, N: int, j: int) -> IdentityReport:
    if not 1 <= j <= N - 1:
        raise ValueError("need 1 <= j <= N-1")
    m = Fraction(n, 2)
    terms = []
    for i in range(0, N - j):
        prod = Fraction(1)
        for k in range(i + 1):
            prod *= m + 2 * j + i - k
        num = (-1) ** i * binom(i + N + j - 1 + m, N - j) * binom(m + 2 * j + i - 1, i)
        terms.append(num / ((i + j + m) * factorial(N - i - j - 1) * prod))
    lhs = _sum(terms)
    rhs = binom(N - 1, j - 1) * gamma_halfint(j + m) / (j * gamma_halfint(N + m))
    return _report("leading_sum", (n, N, j), lhs, rhs)


def verify_double_sum(n: int, N: int, L: int, j: int, k: int) -> IdentityReport:
    if not N - 1 >= L >= j >= k >= 0:
        raise ValueError("need N-1 >= L >= j >= k >= 0")
    m = Fraction(n, 2)
    lhs = _sum(
        (-1) ** s * binom(m + N + s - 1, N - k) * binom(m + k + s - 1, s - j)
        / ((s + m) * factorial(N - s - 1) * gamma_halfint(m + s + L + 1))
        for s in range(j, N)
    )
    rhs = (
        (-1) ** j * Fraction(factorial(N - L - 1), factorial(N - k)) * binom(N - 1, L)
        / (factorial(k) * gamma_halfint(m + N) * binom(m + k + j - 1, k))
    )
    return _report("double_sum", (n, N, L, j, k), lhs, rhs)


def verify_triple_binomial(m: int, nn: int, r, s) -> IdentityReport:
    """``sum_k binom(m-r+s, k) binom(nn+r-s, nn-k) binom(r+k, m+nn) = binom(r, m) binom(s, nn)``."""
    r, s = Fraction(r), Fraction(s)
    lhs = _sum(binom(m - r + s, k) * binom(nn + r - s, nn - k) * binom(r + k, m + nn) for k in range(nn + 1))
    rhs = binom(r, m) * binom(s, nn)
    return _report("triple_binomial", (m, nn, r, s), lhs, rhs)


def d_sum(n: int, N: int, j: int, mm: int):
    """``D(j, mm) = sum_i (-1)^i binom(n/2+N+i+j-1, N-j-mm-1) / (i! (N-i-j-1)! (n/2+i+j))``."""
    h = Fraction(n, 2)
    return _sum(
        (-1) ** i * binom(h + N + i + j - 1, N - j - mm - 1)
        / (factorial(i) * factorial(N - i - j - 1) * (h + i + j))
        for i in range(0, N - j)
    )


def verify_d_recursion(n: int, N: int, j: int, mm: int) -> IdentityReport:
    """``D(j, mm) = D(j+mm, 0) / ((n/2+j) ... (n/2+j+mm-1))`` with ``D(L, 0)`` in closed form."""
    h = Fraction(n, 2)
    L = j + mm
    if not (0 <= j and 0 <= mm and L <= N - 1):
        raise ValueError("need j, mm >= 0 and j + mm <= N-1")
    lhs = d_sum(n, N, j, mm)
    prod = Fraction(1)
    for t in range(mm):
        prod *= h + j + t
    d_l0 = gamma_halfint(h + L) / gamma_halfint(h + N) * binom(N - 1, L)
    return _report("d_recursion", (n, N, j, mm), lhs, d_l0 / prod)


def verify_d_step(n: int, N: int, j: int, mm: int) -> IdentityReport:
    """One step ``D(j, mm) = D(j+1, mm-1) / (n/2 + j)`` between two direct sums."""
    h = Fraction(n, 2)
    lhs = d_sum(n, N, j, mm)
    rhs = d_sum(n, N, j + 1, mm - 1) / (h + j)
    return _report("d_step", (n, N, j, mm), lhs, rhs)


def verify_first_sum_vanishes(n: int, N: int, j: int, mm: int) -> IdentityReport:
    """For ``mm >= 1`` the first inner sum of the ``D`` splitting is zero."""
    h = Fraction(n, 2)
    lhs = _sum(
        (-1) ** i * binom(h + i + j + N - 1, N - j - mm - 1) / ((h + j) * factorial(i) * factorial(N - i - j - 1))
        for i in range(0, N - j)
    )
    return _report("first_sum_vanishes", (n, N, j, mm), lhs, Fraction(0))


@dataclass(frozen=True)
class SweepRanges:
    dims: tuple = (2, 3, 4, 5)
    n_max: int = 8
    triple_max: int = 4
    triple_values: tuple = (
        Fraction(0), Fraction(1), Fraction(3), Fraction(5), Fraction(-2),
        Fraction(1, 2), Fraction(3, 2), Fraction(7, 2), Fraction(-5, 2), Fraction(2, 3),
    )


DEFAULT_RANGES = SweepRanges()


def iter_reports(ranges: SweepRanges = DEFAULT_RANGES):
    for n in ranges.dims:
        for N in range(1, ranges.n_max + 1):
            for L in range(0, 2 * N):
                yield verify_falling_binomial_sum(n, N, L)
                yield verify_factorial_binomial_sum(n, N, L)
            for j in range(1, N):
                yield verify_leading_sum(n, N, j)
            for L in range(0, N):
                for j in range(0, L + 1):
                    for k in range(0, j + 1):
                        yield verify_double_sum(n, N, L, j, k)
            for j in range(0, N):
                for mm in range(0, N - j):
                    yield verify_d_recursion(n, N, j, mm)
                    if mm >= 1:
                        yield verify_d_step(n, N, j, mm)
                        yield verify_first_sum_vanishes(n, N, j, mm)
    vals = ranges.triple_values
    for m in range(ranges.triple_max + 1):
        for nn in range(ranges.triple_max + 1):
            for r in vals:
                for s in vals:
                    yield verify_triple_binomial(m, nn, r, s)


@dataclass
class SuiteResult:
    count: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "count": self.count,
            "skipped": self.skipped,
            "failures": len(self.failures),
            "failed": [f.to_json_obj() for f in self.failures],
        }


def run_suite(ranges: Optional[SweepRanges] = DEFAULT_RANGES, reports: Optional[Iterable] = None) -> SuiteResult:
    """Run every identity over ``ranges`` (or over an explicit report iterable)."""
    out = SuiteResult()
    source = reports if reports is not None else iter_reports(ranges)
    for rep in source:
        if rep.skipped:
            out.skipped += 1
            continue
        out.count += 1
        if not rep.equal:
            out.failures.append(rep)
    return out
