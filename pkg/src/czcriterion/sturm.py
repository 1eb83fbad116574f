"""Univariate rational polynomials: Sturm sequences and certified root isolation.

Polynomials are lists of :class:`Fraction` coefficients in ascending order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ZeroPolynomial

UPoly = list


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> UPoly:
    return trim([i * c for i, c in enumerate(p)][1:])


def divmod_poly(a: Sequence, b: Sequence) -> tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroPolynomial("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        t = r[-1] / lb
        q[shift] = t
        for i, c in enumerate(b):
            r[i + shift] -= t * c
        r = trim(r)
    return trim(q), r


def gcd_poly(a: Sequence, b: Sequence) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def squarefree(p: Sequence) -> UPoly:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = gcd_poly(p, derivative(p))
    q, r = divmod_poly(p, g)
    assert not r
    return q


def sturm_sequence(p: Sequence) -> list:
    p = trim(p)
    if not p:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [p]
    d = derivative(p)
    while d:
        seq.append(d)
        r = divmod_poly(seq[-2], seq[-1])[1]
        d = [-c for c in r]
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _changes_at(seq, x: Optional[Fraction], side: int = 0) -> int:
    if x is None:
        # side=+1: +infinity, side=-1: -infinity
        vals = [c[-1] * (side ** (len(c) - 1)) for c in seq]
    else:
        vals = [evaluate(c, x) for c in seq]
    return _sign_changes(vals)


def count_real_roots(p: Sequence, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (``None`` means infinite)."""
    seq = sturm_sequence(p)
    v_lo = _changes_at(seq, lo, -1)
    v_hi = _changes_at(seq, hi, +1)
    return v_lo - v_hi


def cauchy_bound(p: Sequence) -> Fraction:
    p = trim(p)
    lc = abs(p[-1])
    return 1 + max((abs(c) / lc for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Sequence) -> list:
    """Disjoint half-open intervals ``(a, b]``, one per distinct real root, sorted."""
    p = squarefree(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    B = cauchy_bound(p)
    out = []
    stack = [(-B, B, _changes_at(seq, -B), _changes_at(seq, B))]
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        vm = _changes_at(seq, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    return sorted(out)


def refine_root(p: Sequence, interval: tuple, width: Fraction) -> tuple:
    """Bisect an isolating interval of a squarefree ``p`` down to ``width``."""
    p = squarefree(p)
    a, b = interval
    if evaluate(p, b) == 0:
        return (b, b)
    seq = sturm_sequence(p)
    va, vb = _changes_at(seq, a), _changes_at(seq, b)
    while b - a > width:
        m = (a + b) / 2
        vm = _changes_at(seq, m)
        if evaluate(p, m) == 0:
            return (m, m)
        if va - vm >= 1:
            b, vb = m, vm
        else:
            a, va = m, vm
    return (a, b)


def _divisors(n: int, limit: int = 10**12) -> Optional[list]:
    n = abs(n)
    if n > limit:
        return None
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def integer_primitive(p: Sequence) -> list:
    p = trim(p)
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def rational_root_in(p: Sequence, interval: tuple) -> Optional[Fraction]:
    """The root of squarefree ``p`` in an isolating interval, if it is rational."""
    p = squarefree(p)
    a, b = interval
    if evaluate(p, b) == 0:
        return b
    ip = integer_primitive(p)
    dens = _divisors(ip[-1])
    if dens is None:
        return None
    a, b = refine_root(p, (a, b), Fraction(1, 2 * abs(ip[-1])))
    if a == b:
        return a
    for q in dens:
        lo = math.floor(a * q)
        for num in range(lo, lo + 3):
            r = Fraction(num, q)
            if a < r <= b and evaluate(p, r) == 0:
                return r
    return None
