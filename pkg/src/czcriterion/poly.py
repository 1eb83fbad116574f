"""Sparse exact homogeneous polynomials.

Coefficients are :class:`fractions.Fraction` or :class:`~czcriterion.scalar.PiScalar`;
every stored monomial has the declared total degree, and zero coefficients
are never stored.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import DegreeMismatch, DimensionMismatch, ZeroDivisor
from .scalar import PiScalar, canonical, format_scalar, parse_scalar

Exponent = tuple


def _key_grlex(e: Exponent):
    return (sum(e), e)


def _key_grevlex(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


MONOMIAL_ORDERS: dict[str, Callable] = {"grlex": _key_grlex, "grevlex": _key_grevlex}


class HPoly:
    """Homogeneous polynomial in ``n_vars`` variables of total degree ``degree``."""

    __slots__ = ("n_vars", "degree", "_terms")

    def __init__(self, n_vars: int, degree: int, terms: Optional[Mapping] = None):
        if n_vars < 1:
            raise DimensionMismatch("need at least one variable")
        if degree < 0:
            raise DegreeMismatch("negative degree")
        self.n_vars = n_vars
        self.degree = degree
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(a) for a in exp)
            if len(exp) != n_vars:
                raise DimensionMismatch(f"monomial {exp} has wrong length for n={n_vars}")
            if sum(exp) != degree or min(exp) < 0:
                raise DegreeMismatch(f"monomial {exp} is not of degree {degree}")
            c = canonical(c)
            if c:
                clean[exp] = c
        self._terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, n_vars: int, degree: int) -> "HPoly":
        return cls(n_vars, degree)

    @classmethod
    def constant(cls, n_vars: int, c=1) -> "HPoly":
        return cls(n_vars, 0, {(0,) * n_vars: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "HPoly":
        return cls(len(exp), sum(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> "HPoly":
        e = [0] * n_vars
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def radial(cls, n_vars: int, k: int) -> "HPoly":
        """``|x|**(2k)`` as a polynomial."""
        r2 = cls(n_vars, 2, {tuple(2 if i == j else 0 for i in range(n_vars)): 1 for j in range(n_vars)})
        out = cls.constant(n_vars)
        for _ in range(k):
            out = out * r2
        return out

    @classmethod
    def _raw(cls, n_vars, degree, terms):
        p = object.__new__(cls)
        p.n_vars, p.degree, p._terms = n_vars, degree, terms
        return p

    # -- inspection ------------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def leading(self, order: str = "grlex"):
        key = MONOMIAL_ORDERS[order]
        exp = max(self._terms, key=key)
        return exp, self._terms[exp]

    # -- arithmetic -------------------------------------------------------
    def _check_same_space(self, other: "HPoly", same_degree: bool):
        if not isinstance(other, HPoly):
            raise TypeError(f"expected HPoly, got {type(other).__name__}")
        if other.n_vars != self.n_vars:
            raise DimensionMismatch(f"{self.n_vars} vs {other.n_vars} variables")
        if same_degree and other.degree != self.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other: "HPoly") -> "HPoly":
        self._check_same_space(other, True)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = canonical(out[e] + c) if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return HPoly._raw(self.n_vars, self.degree, out)

    def __neg__(self) -> "HPoly":
        return HPoly._raw(self.n_vars, self.degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HPoly):
            self._check_same_space(other, False)
            out: dict = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out[e] + c1 * c2 if e in out else c1 * c2
            return HPoly(self.n_vars, self.degree + other.degree, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s) -> "HPoly":
        s = canonical(s)
        if not s:
            return HPoly.zero(self.n_vars, self.degree)
        return HPoly._raw(self.n_vars, self.degree,
                          {e: canonical(c * s) for e, c in self._terms.items()})

    def __pow__(self, k: int) -> "HPoly":
        out = HPoly.constant(self.n_vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return (self.n_vars, self.degree, self._terms) == (other.n_vars, other.degree, other._terms)

    def __hash__(self):
        return hash((self.n_vars, self.degree, frozenset(self._terms.items())))

    # -- calculus ----------------------------------------------------------
    def derivative(self, i: int, times: int = 1) -> "HPoly":
        if times > self.degree:
            return HPoly.zero(self.n_vars, 0)
        out = {}
        for e, c in self._terms.items():
            if e[i] >= times:
                f = math.perm(e[i], times)
                ne = e[:i] + (e[i] - times,) + e[i + 1:]
                out[ne] = c * f
        return HPoly._raw(self.n_vars, self.degree - times, out)

    def laplacian(self) -> "HPoly":
        if self.degree < 2:
            return HPoly.zero(self.n_vars, 0)
        out: dict = {}
        for e, c in self._terms.items():
            for i, a in enumerate(e):
                if a >= 2:
                    ne = e[:i] + (a - 2,) + e[i + 1:]
                    v = c * (a * (a - 1))
                    out[ne] = out[ne] + v if ne in out else v
        return HPoly(self.n_vars, self.degree - 2, out)

    def is_harmonic(self) -> bool:
        return self.laplacian().is_zero()

    # -- evaluation --------------------------------------------------------
    def evaluate(self, point: Sequence):
        if len(point) != self.n_vars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, need {self.n_vars}")
        pt = [Fraction(x) if isinstance(x, (int, str)) else x for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            m = Fraction(1)
            for x, a in zip(pt, e):
                if a:
                    m *= x ** a
            total = total + c * m
        return canonical(total)

    def evaluate_float(self, point) -> float:
        if len(point) != self.n_vars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, need {self.n_vars}")
        total = 0.0
        for e, c in self._terms.items():
            m = float(c)
            for x, a in zip(point, e):
                if a:
                    m *= float(x) ** a
            total += m
        return total

    def coeff_norm(self) -> Fraction:
        """Sum of absolute coefficients: an upper bound for ``sup |p|`` on the unit sphere."""
        if not self.is_rational():
            raise ValueError("coeff_norm needs rational coefficients")
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def substitute_affine_dehomogenize(self, index: int):
        """Coefficient list (ascending in t) of ``p`` with ``x_index = 1`` for ``n_vars == 2``."""
        if self.n_vars != 2:
            raise DimensionMismatch("dehomogenization helper needs n_vars == 2")
        coeffs = [Fraction(0)] * (self.degree + 1)
        other = 1 - index
        for e, c in self._terms.items():
            coeffs[e[other]] += c
        return coeffs

    def __repr__(self):
        return f"HPoly({self.n_vars}, {self.degree}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)


# -- free functions mirroring the operation list --------------------------

def poly_arith(a: HPoly, b: HPoly, op: str) -> HPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown op {op!r}")


def poly_mul(a: HPoly, b: HPoly) -> HPoly:
    return a * b


def poly_scale(a: HPoly, s) -> HPoly:
    return a.scale(s)


def laplacian(p: HPoly, times: int = 1) -> HPoly:
    for _ in range(times):
        p = p.laplacian()
    return p


def apply_diff(p: HPoly, q: HPoly) -> HPoly:
    """``p(d/dx)`` applied to ``q``."""
    if p.n_vars != q.n_vars:
        raise DimensionMismatch(f"{p.n_vars} vs {q.n_vars} variables")
    n = p.n_vars
    if p.degree > q.degree:
        return HPoly.zero(n, 0)
    out: dict = {}
    for pe, pc in p._terms.items():
        for qe, qc in q._terms.items():
            if all(b >= a for a, b in zip(pe, qe)):
                f = 1
                for a, b in zip(pe, qe):
                    if a:
                        f *= math.perm(b, a)
                ne = tuple(b - a for a, b in zip(pe, qe))
                v = pc * qc * f
                out[ne] = out[ne] + v if ne in out else v
    return HPoly(n, q.degree - p.degree, out)


def try_divide(f: HPoly, g: HPoly, order: str = "grlex") -> Optional[HPoly]:
    """Exact quotient ``f / g`` or ``None`` when ``g`` does not divide ``f``.

    Multivariate long division by the single divisor ``g``; for one divisor a
    zero remainder is equivalent to divisibility under any monomial order.
    """
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if f.n_vars != g.n_vars:
        raise DimensionMismatch(f"{f.n_vars} vs {g.n_vars} variables")
    if f.is_zero():
        return HPoly.zero(f.n_vars, max(f.degree - g.degree, 0)) if f.degree >= g.degree else None
    if f.degree < g.degree:
        return None
    key = MONOMIAL_ORDERS[order]
    g_exp, g_lc = g.leading(order)
    g_inv = g_lc.try_invert() if isinstance(g_lc, PiScalar) else 1 / g_lc
    if g_inv is None:
        raise ValueError("leading coefficient of the divisor is not invertible")
    g_items = list(g._terms.items())
    rem = dict(f._terms)
    quot: dict = {}
    qdeg = f.degree - g.degree
    while rem:
        r_exp = max(rem, key=key)
        shift = tuple(a - b for a, b in zip(r_exp, g_exp))
        if min(shift) < 0:
            # Under a monomial order the leading term of the remainder stays
            # leading; an indivisible leading term means a nonzero remainder.
            return None
        t = canonical(rem[r_exp] * g_inv)
        quot[shift] = t
        for e, c in g_items:
            ne = tuple(a + b for a, b in zip(e, shift))
            v = canonical(rem.get(ne, 0) - t * c)
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return HPoly(f.n_vars, qdeg, quot)


def double_factorial_odd(k: int) -> int:
    """``(2k-1)!!`` with ``(-1)!! = 1``."""
    out = 1
    for i in range(1, 2 * k, 2):
        out *= i
    return out


def sphere_monomial_integral(exp: Sequence[int]) -> Fraction:
    """Mean of ``x**exp`` over ``S^{n-1}`` under the normalized surface measure."""
    if any(a % 2 for a in exp):
        return Fraction(0)
    n = len(exp)
    half = [a // 2 for a in exp]
    num = 1
    for h in half:
        num *= double_factorial_odd(h)
    den = 1
    for k in range(sum(half)):
        den *= n + 2 * k
    return Fraction(num, den)


def sphere_integral(p: HPoly):
    total = Fraction(0)
    for e, c in p._terms.items():
        w = sphere_monomial_integral(e)
        if w:
            total = total + c * w
    return canonical(total)


def evaluate_exact(p: HPoly, point: Sequence):
    return p.evaluate(point)


def evaluate_float(p: HPoly, point) -> float:
    return p.evaluate_float(point)


def coeff_norm(p: HPoly) -> Fraction:
    return p.coeff_norm()


def monomials(n_vars: int, degree: int) -> list:
    """All exponent tuples of the given total degree, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(n_vars), degree):
        e = [0] * n_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


# -- text and JSON ---------------------------------------------------------

def to_text(p: HPoly) -> str:
    if p.is_zero():
        return "0"
    names = [f"x{i + 1}" for i in range(p.n_vars)] if p.n_vars > 3 else ["x", "y", "z"][: p.n_vars]
    parts = []
    for e in sorted(p._terms, key=_key_grlex, reverse=True):
        c = p._terms[e]
        mono = "*".join(f"{v}^{a}" if a > 1 else v for v, a in zip(names, e) if a)
        coef = format_scalar(c)
        if not isinstance(c, PiScalar) or c.is_rational():
            coef = coef if coef not in ("1", "-1") or not mono else coef[:-1]
        else:
            coef = f"({coef})"
        if mono:
            parts.append(f"{coef}*{mono}" if coef not in ("", "-") else f"{coef}{mono}")
        else:
            parts.append(coef)
    return " + ".join(parts).replace("+ -", "- ")


def to_json_obj(p: HPoly) -> dict:
    terms = [
        {"exp": list(e), "coeff": format_scalar(p._terms[e])}
        for e in sorted(p._terms, key=_key_grlex, reverse=True)
    ]
    return {"n_vars": p.n_vars, "degree": p.degree, "terms": terms}


def from_json_obj(obj: Mapping) -> HPoly:
    try:
        n = int(obj["n_vars"])
        terms = obj.get("terms", [])
        declared = obj.get("degree")
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed polynomial object: {exc}") from exc
    parsed: dict = {}
    for t in terms:
        exp = tuple(int(a) for a in t["exp"])
        c = t["coeff"]
        c = parse_scalar(c) if isinstance(c, str) else Fraction(c)
        parsed[exp] = parsed[exp] + c if exp in parsed else c
    degrees = {sum(e) for e in parsed}
    if declared is None:
        if len(degrees) != 1:
            raise DegreeMismatch("cannot infer degree of a non-homogeneous or empty term list")
        declared = degrees.pop()
    return HPoly(n, int(declared), parsed)


def to_json(p: HPoly) -> str:
    return json.dumps(to_json_obj(p), sort_keys=True)


def from_json(text: str) -> HPoly:
    return from_json_obj(json.loads(text))


def from_dict(n_vars: int, terms: Mapping[Iterable[int], object]) -> HPoly:
    """Build from ``{exponent: coeff}``; the degree is read off the terms."""
    items = {tuple(e): c for e, c in terms.items()}
    degrees = {sum(e) for e in items}
    if len(degrees) > 1:
        raise DegreeMismatch(f"terms of several degrees {sorted(degrees)}")
    return HPoly(n_vars, degrees.pop() if degrees else 0, items)
