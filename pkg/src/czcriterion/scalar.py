"""Exact scalars: rationals extended by formal half-integer powers of pi.

Every closed-form constant the toolkit manipulates (ball volumes, sphere
areas, Riesz multiplier constants, fundamental-solution constants) is a
finite rational combination of ``pi**(k/2)``.  :class:`PiScalar` stores
such a combination exactly; plain :class:`fractions.Fraction` values are
used whenever no power of pi is present.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import DivisionByZero

Rational = Fraction
Scalar = Union[int, Fraction, "PiScalar"]

HALF = Fraction(1, 2)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _check_exponent(e: Fraction) -> Fraction:
    if (2 * e).denominator != 1:
        raise ValueError(f"pi exponent must be a half-integer, got {e}")
    return e


class PiScalar:
    """Finite sum ``sum_k c_k * pi**e_k`` with rational ``c_k`` and half-integer ``e_k``.

    Instances are immutable and hashable.  Zero is the empty sum.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[dict, Iterable, None] = None):
        acc: dict[Fraction, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = _check_exponent(_as_fraction(e))
                c = _as_fraction(c)
                acc[e] = acc.get(e, Fraction(0)) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, c) -> "PiScalar":
        return cls({Fraction(0): c})

    @classmethod
    def pi_power(cls, e, coeff=1) -> "PiScalar":
        return cls({_as_fraction(e): coeff})

    @classmethod
    def coerce(cls, x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        return cls.rational(_as_fraction(x))

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> tuple:
        """Sorted ``(exponent, coefficient)`` pairs."""
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def monomial_parts(self) -> tuple[Fraction, Fraction]:
        """Return ``(coefficient, exponent)`` of a single-term value."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a single pi-power term")
        e, c = self._terms[0]
        return c, e

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        return float(sum(float(c) * math.pi ** float(e) for e, c in self._terms))

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (PiScalar, int, Fraction)):
            return NotImplemented
        other = PiScalar.coerce(other)
        return PiScalar(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return PiScalar([(e, -c) for e, c in self._terms])

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (PiScalar, int, Fraction)):
            return NotImplemented
        return self + (-PiScalar.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (PiScalar, int, Fraction)):
            return NotImplemented
        return PiScalar.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PiScalar()
            return PiScalar([(e, c * other) for e, c in self._terms])
        if not isinstance(other, PiScalar):
            return NotImplemented
        out = []
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out.append((e1 + e2, c1 * c2))
        return PiScalar(out)

    __rmul__ = __mul__

    def try_invert(self) -> Optional["PiScalar"]:
        """Reciprocal of a single-term value; ``None`` for sums of several powers."""
        if not self._terms:
            raise DivisionByZero("cannot invert zero")
        if len(self._terms) != 1:
            return None
        e, c = self._terms[0]
        return PiScalar([(-e, 1 / c)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return PiScalar([(e, c / other) for e, c in self._terms])
        if not isinstance(other, PiScalar):
            return NotImplemented
        inv = other.try_invert()
        if inv is None:
            raise ValueError(f"{other} is not invertible in the pi-tower")
        return self * inv

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        inv = self.try_invert()
        if inv is None:
            raise ValueError(f"{self} is not invertible in the pi-tower")
        return inv * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            inv = self.try_invert()
            if inv is None:
                raise ValueError(f"{self} is not invertible in the pi-tower")
            return inv ** (-k)
        out = PiScalar.rational(1)
        for _ in range(k):
            out = out * self
        return out

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiScalar.rational(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash(self._terms)
        return self._hash

    def __repr__(self):
        return f"PiScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def canonical(x):
    """Collapse to :class:`Fraction` when no power of pi survives."""
    if isinstance(x, PiScalar):
        return x.to_fraction() if x.is_rational() else x
    return _as_fraction(x)


def is_zero(x) -> bool:
    return not x


# -- textual form ------------------------------------------------------

def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_exp(e: Fraction) -> str:
    return f"{2 * e.numerator // e.denominator}/2" if e.denominator == 1 else f"{e.numerator}/2"


def format_scalar(x) -> str:
    """Text form: ``"p/q"`` for rationals, ``"a*pi^(k/2) + ..."`` otherwise."""
    if isinstance(x, (int, Fraction)):
        return _fmt_rat(Fraction(x))
    if x.is_rational():
        return _fmt_rat(x.to_fraction())
    parts = []
    for e, c in x.terms:
        body = _fmt_rat(abs(c)) if e == 0 else f"({_fmt_rat(abs(c))})*pi^({_fmt_exp(e)})"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:\(?\s*(?P<coef>\d+(?:/\d+)?)\s*\)?)?
        \s*(?:\*?\s*pi(?:\s*\^\s*\(?\s*(?P<exp>-?\d+(?:/2)?)\s*\)?)?)?\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`; also accepts ``pi``, ``2*pi``, ``-1/3``."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"bad scalar text {text!r}")
        coef, exp = m.group("coef"), m.group("exp")
        has_pi = "pi" in m.group(0)
        if coef is None and not has_pi:
            raise ValueError(f"bad scalar text {text!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        if has_pi:
            e = Fraction(1) if exp is None else Fraction(exp)
        else:
            e = Fraction(0)
        terms.append((e, c))
        pos = m.end()
    return canonical(PiScalar(terms))


# -- combinatorial helpers --------------------------------------------

def falling(a, k: int) -> Fraction:
    """Falling factorial ``a (a-1) ... (a-k+1)``; empty product is 1."""
    a = _as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a - i
    return out


def rising(a, k: int) -> Fraction:
    a = _as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def binom(a, k: int) -> Fraction:
    """Generalized binomial ``a(a-1)...(a-k+1)/k!``; zero for negative ``k``."""
    if k < 0:
        return Fraction(0)
    return falling(a, k) / math.factorial(k)


@lru_cache(maxsize=None)
def _gamma_halfint_cached(num: int, den: int) -> PiScalar:
    x = Fraction(num, den)
    if x.denominator == 1:
        if x <= 0:
            raise ValueError(f"Gamma has a pole at {x}")
        return PiScalar.rational(math.factorial(int(x) - 1))
    # x = k + 1/2; shift to 1/2 by the recurrence Gamma(x+1) = x Gamma(x).
    k = x - HALF
    if k >= 0:
        c = rising(HALF, int(k))
    else:
        c = 1 / rising(x, int(-k))
    return PiScalar.pi_power(HALF, c)


def gamma_halfint(x) -> PiScalar:
    """Gamma at an integer or half-integer argument (poles rejected)."""
    x = _as_fraction(x)
    if (2 * x).denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return _gamma_halfint_cached(x.numerator, x.denominator)


def gamma_half(m: int) -> PiScalar:
    """``Gamma(m/2)`` for a positive integer ``m``."""
    if m < 1:
        raise ValueError("gamma_half needs m >= 1")
    return gamma_halfint(Fraction(m, 2))


def gamma_quotient(a, b) -> Fraction:
    """``Gamma(a)/Gamma(b)`` when ``a - b`` is an integer (always rational)."""
    a, b = _as_fraction(a), _as_fraction(b)
    d = a - b
    if d.denominator != 1:
        raise ValueError("gamma_quotient needs an integer difference")
    if d >= 0:
        return rising(b, int(d))
    return 1 / rising(a, int(-d))


def gamma_j(n: int, j: int) -> PiScalar:
    """Riesz multiplier constant ``i**-j pi**(n/2) Gamma(j/2) / Gamma((n+j)/2)``, even ``j``."""
    if j < 2 or j % 2:
        raise ValueError(f"gamma_j is only defined here for even j >= 2, got {j}")
    if n < 2:
        raise ValueError("dimension must be >= 2")
    sign = -1 if (j // 2) % 2 else 1
    return sign * PiScalar.pi_power(Fraction(n, 2)) * gamma_half(j) / gamma_half(n + j)


def ball_volume(n: int) -> PiScalar:
    """Volume of the unit ball, ``pi**(n/2) / Gamma(n/2 + 1)``."""
    return PiScalar.pi_power(Fraction(n, 2)) / gamma_half(n + 2)


def sphere_area(n: int) -> PiScalar:
    """Surface measure of ``S^{n-1}``, ``n`` times the ball volume."""
    return n * ball_volume(n)


def scalar_arith(a, b, op: str):
    if op == "add":
        return canonical(PiScalar.coerce(a) + b)
    if op == "sub":
        return canonical(PiScalar.coerce(a) - b)
    if op == "mul":
        return canonical(PiScalar.coerce(a) * b)
    raise ValueError(f"unknown op {op!r}")


def try_invert(a) -> Optional[PiScalar]:
    return PiScalar.coerce(a).try_invert()
