"""Exact constants behind the kernel-reconstruction and multiplier-series arguments.

Quantities computed here, each with a second independent route where one
exists:

* the constants ``alpha, beta`` of the fundamental solution of ``Lap^N``;
* the coefficients ``A_0 .. A_{2N-1}`` of the radial polynomial glued to the
  fundamental solution on the unit sphere (Taylor-matching solve versus the
  closed form for ``L > N``);
* the radial profile ``b_N = Lap^N (sum A_L |x|^{2L})`` on the ball;
* the correction polynomial ``S = -Q(d)(sum A_L |x|^{2L})``;
* the coefficients ``c_{l,j,k}`` of the Fourier transform of ``S chi_B``;
* the leading constants ``C_{2j}`` and the functionals ``mu_j(p)`` of the
  power series ``sum_p a_{2p}(xi0) r^{2p}``.

Bessel-type values ``G_q(0)`` involve ``2**(-q)``; for odd ``n`` the index
``q`` is a half-integer and a factor ``2**(-1/2)`` appears that the pi-tower
cannot hold.  Every such quantity is therefore returned multiplied by
``sqrt(2)**scale`` with ``scale = n % 2``; both routes share the factor, so
comparisons stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import IndexOutOfRange, InternalMismatch
from .linalg import solve_rational
from .poly import HPoly, apply_diff, laplacian
from .scalar import (
    PiScalar,
    ball_volume,
    binom,
    canonical,
    falling,
    gamma_halfint,
    gamma_j,
    sphere_area,
)


def half(n: int) -> Fraction:
    return Fraction(n, 2)


def sqrt2_scale(n: int) -> int:
    return n % 2


# -- fundamental solution ------------------------------------------------------

@dataclass(frozen=True)
class FundamentalConstants:
    """``E_N(x) = |x|^{2N-n} (alpha + beta log|x|^2)``."""

    alpha: object
    beta: object
    case_tag: str


def harmonic_partial(L: int, n: int) -> Fraction:
    """``S_L = sum_{k=1}^{L} 1/(2k) + sum_{k=n/2}^{L+n/2-1} 1/(2k)``, ``S_0 = 0``."""
    if L == 0:
        return Fraction(0)
    m = n // 2
    return sum((Fraction(1, 2 * k) for k in range(1, L + 1)), Fraction(0)) + sum(
        (Fraction(1, 2 * k) for k in range(m, L + m)), Fraction(0)
    )


@lru_cache(maxsize=None)
def fundamental_constants(n: int, N: int) -> FundamentalConstants:
    if n < 2 or N < 1:
        raise ValueError("need n >= 2 and N >= 1")
    m = half(n)
    omega = sphere_area(n)
    f = math.factorial
    if n % 2:
        ratio = gamma_halfint(2 - m) / gamma_halfint(N + 1 - m)
        alpha = canonical(ratio / (4 ** (N - 1) * f(N - 1) * (2 - n)) / omega)
        return FundamentalConstants(alpha, Fraction(0), "odd-n")
    mm = n // 2
    if n == 2:
        beta = canonical(Fraction(1, 2 * 4 ** (N - 1) * f(N - 1) ** 2) / omega)
        alpha = canonical(2 * beta * harmonic_partial(N - 1, n))
        return FundamentalConstants(alpha, beta, "n-equals-2")
    if N <= mm - 1:
        num = (-1) ** (N - 1) * f(mm - N - 1)
        den = 4 ** (N - 1) * f(N - 1) * f(mm - 2) * (2 - n)
        return FundamentalConstants(canonical(Fraction(num, den) / omega), Fraction(0), "even-small-N")
    # Sign fixed by Lap E_m = E_{m-1}: (-1)^m, not (-1)^(m+1).
    den = (-1) ** mm * f(N - mm) * 4 ** (N - 1) * f(N - 1) * f(mm - 2) * (2 - n)
    beta = canonical(Fraction(1, den) / omega)
    alpha = canonical(2 * beta * harmonic_partial(N - mm, n))
    return FundamentalConstants(alpha, beta, "even-large-N")


def fundamental_derivatives_at_one(n: int, N: int, order: int) -> list:
    """``d^k/dt^k [t^a (alpha + beta log t)]`` at ``t = 1`` for ``k = 0..order``, ``a = N - n/2``."""
    fc = fundamental_constants(n, N)
    a = N - half(n)
    out = []
    for k in range(order + 1):
        val = fc.alpha * falling(a, k)
        if fc.beta:
            # Leibniz rule with d^r log t |_{t=1} = (-1)^(r-1) (r-1)!.
            log_part = sum(
                (math.comb(k, r) * falling(a, k - r) * (-1) ** (r - 1) * math.factorial(r - 1)
                 for r in range(1, k + 1)),
                Fraction(0),
            )
            val = val + fc.beta * log_part
        out.append(canonical(val))
    return out


# -- radial polynomials ---------------------------------------------------------

@dataclass(frozen=True)
class RadialPolynomial:
    """``sum_k coefficients[k] |x|^{2k}``."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(canonical(c) for c in coeffs))

    def at_t(self, t: float) -> float:
        """Value at ``|x|^2 = t``."""
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * t + float(c)
        return acc

    def __call__(self, r):
        return self.at_t(r * r)

    def as_hpoly_sum(self, n: int) -> dict:
        return {2 * k: HPoly.radial(n, k).scale(c) for k, c in enumerate(self.coefficients) if c}


@lru_cache(maxsize=None)
def a_coefficients_solve(n: int, N: int) -> RadialPolynomial:
    """``A_0..A_{2N-1}`` from matching ``2N`` derivatives with the fundamental solution at ``t = 1``."""
    size = 2 * N
    rhs = fundamental_derivatives_at_one(n, N, size - 1)
    matrix = [[falling(L, k) for L in range(size)] for k in range(size)]
    sol = solve_rational(matrix, rhs)
    return RadialPolynomial(tuple(sol))


def a_coefficient_closed(n: int, N: int, L: int):
    """Closed form of ``A_L`` valid for ``N+1 <= L <= 2N-1``."""
    if not N + 1 <= L <= 2 * N - 1:
        raise IndexOutOfRange(f"closed form for A_L needs N+1 <= L <= 2N-1, got L={L}, N={N}")
    m = half(n)
    num = (-1) ** (N + L) * binom(N + m - 1, N - 1)
    den = 4 ** N * (L + m - N) * math.factorial(2 * N - L - 1) * math.factorial(L)
    return canonical((num / den) / ball_volume(n))


def a_coefficients(n: int, N: int) -> RadialPolynomial:
    """Solve path, checked against the closed form on ``L = N+1 .. 2N-1``."""
    A = a_coefficients_solve(n, N)
    coeffs = list(A.coefficients) + [Fraction(0)] * (2 * N - len(A.coefficients))
    for L in range(N + 1, 2 * N):
        if coeffs[L] != a_coefficient_closed(n, N, L):
            raise InternalMismatch(f"A_{L} mismatch for n={n}, N={N}")
    return A


def _A(n: int, N: int, L: int):
    coeffs = a_coefficients_solve(n, N).coefficients
    return coeffs[L] if L < len(coeffs) else Fraction(0)


# -- b_N --------------------------------------------------------------------------

def radial_laplacian_power_factor(n: int, j: int, k: int) -> Fraction:
    """``Lap^j |x|^{2k} = factor * |x|^{2(k-j)}`` (zero when ``k < j``)."""
    if k < j:
        return Fraction(0)
    m = half(n)
    return 4 ** j * Fraction(math.factorial(j) * math.factorial(k), math.factorial(k - j)) * binom(m + k - 1, j)


@lru_cache(maxsize=None)
def b_polynomial(n: int, N: int) -> RadialPolynomial:
    A = a_coefficients(n, N).coefficients
    out = [Fraction(0)] * N
    for L, c in enumerate(A):
        if L >= N and c:
            out[L - N] = canonical(out[L - N] + c * radial_laplacian_power_factor(n, N, L))
    return RadialPolynomial(tuple(out))


# -- S(x) -------------------------------------------------------------------------

def s_polynomial(spec) -> dict:
    """``S = -Q(d)(sum_L A_L |x|^{2L})`` as ``{degree: HPoly}`` (zero parts omitted)."""
    from .criterion import assemble_multiplier

    n, N = spec.n_vars, spec.top_index
    Q = assemble_multiplier(spec).numerator
    A = a_coefficients(n, N).coefficients
    parts: dict = {}
    for L, c in enumerate(A):
        if not c or 2 * L < 2 * N:
            continue
        term = apply_diff(Q, HPoly.radial(n, L)).scale(-c)
        deg = term.degree
        parts[deg] = parts[deg] + term if deg in parts else term
    return {d: p for d, p in sorted(parts.items()) if not p.is_zero()}


def c_lj(n: int, N: int, l: int, j: int, A_l=None):
    """Coefficient of ``P_{2j} |x|^{2(l-N-j)}`` in ``S`` (from ``-A_l gamma_{2j} P_{2j}(d) Lap^{N-j} |x|^{2l}``)."""
    if l - N - j < 0:
        return Fraction(0)
    m = half(n)
    if A_l is None:
        A_l = _A(n, N, l)
    f = Fraction(4 ** N * math.factorial(l) * math.factorial(N - j), math.factorial(l - N - j))
    return canonical(-A_l * gamma_j(n, 2 * j) * f * binom(l - 1 + m, N - j))


def s_from_components(spec) -> dict:
    """``S`` rebuilt as ``sum_{l,j} c_{l,j} P_{2j} |x|^{2(l-N-j)}``."""
    n, N = spec.n_vars, spec.top_index
    parts: dict = {}
    for l in range(N + 1, 2 * N):
        for j in range(1, l - N + 1):
            P = spec.component(j)
            if P.is_zero():
                continue
            term = (P * HPoly.radial(n, l - N - j)).scale(c_lj(n, N, l, j))
            d = term.degree
            parts[d] = parts[d] + term if d in parts else term
    return {d: p for d, p in sorted(parts.items()) if not p.is_zero()}


# -- c_{l,j,k} --------------------------------------------------------------------

def _check_ljk(N, l, j, k):
    if not (N + 1 <= l <= 2 * N - 1 and 1 <= j <= l - N and 0 <= k <= l - N - j):
        raise IndexOutOfRange(f"(l, j, k) = ({l}, {j}, {k}) outside the admissible range for N={N}")


@lru_cache(maxsize=None)
def c_ljk(n: int, N: int, l: int, j: int, k: int):
    """Closed form of ``c_{l,j,k}``."""
    _check_ljk(N, l, j, k)
    m = half(n)
    f = math.factorial
    num = (
        binom(N + m - 1, N - 1) * 2 ** k * f(N - j)
        * binom(l - 1 + m, N - j) * binom(m + j + l - N - 1, k)
    )
    den = (l + m - N) * f(2 * N - l - 1) * f(l - N - j - k)
    return canonical(-((-1) ** k) * gamma_j(n, 2 * j) * (num / den) / ball_volume(n))


def c_ljk_from_A(n: int, N: int, l: int, j: int, k: int):
    """``c_{l,j,k}`` traced from the Taylor-solved ``A_l`` and the radial-derivative constants."""
    _check_ljk(N, l, j, k)
    m = half(n)
    a = l - N - j
    lz = Fraction((-1) ** (l - N + k) * 2 ** k * math.factorial(a), math.factorial(a - k)) * binom(m + j + l - N - 1, k)
    return canonical(c_lj(n, N, l, j) * lz)


def _probe_harmonic(n: int, j: int) -> HPoly:
    """``Re (x_1 + i x_2)^{2j}``: a harmonic polynomial of degree ``2j`` in ``n`` variables."""
    d = 2 * j
    terms = {}
    for r in range(0, d + 1, 2):
        e = [0] * n
        e[0], e[1] = d - r, r
        terms[tuple(e)] = math.comb(d, r) * (-1) ** (r // 2)
    return HPoly(n, d, terms)


def _scalar_ratio(f: HPoly, g: HPoly):
    if f.is_zero():
        return Fraction(0)
    e = next(iter(g.terms))
    c = canonical(f.coeff(e) / g.coeff(e))
    if g.scale(c) != f:
        raise InternalMismatch("expected a scalar multiple")
    return c


def c_ljk_symbolic(n: int, N: int, l: int, j: int, k: int):
    """``c_{l,j,k}`` extracted by differentiating a concrete harmonic polynomial.

    ``c_{l,j}`` comes from applying ``P(d) Lap^{N-j}`` to ``|x|^{2l}``; the
    ``k``-th term of the radial-derivative expansion of
    ``P(d) Lap^{l-N-j} G`` is ``(-1)^k / (2^k k!) Lap^k(P |x|^{2(l-N-j)})``,
    and ``S(i d)`` contributes ``(-1)^{l-N}``.
    """
    _check_ljk(N, l, j, k)
    P = _probe_harmonic(n, j)
    a = l - N - j
    applied = apply_diff(P, laplacian(HPoly.radial(n, l), N - j))
    clj = canonical(-_A(n, N, l) * gamma_j(n, 2 * j) * _scalar_ratio(applied, P * HPoly.radial(n, a)))
    lap = laplacian(P * HPoly.radial(n, a), k)
    ratio = _scalar_ratio(lap, P * HPoly.radial(n, a - k))
    return canonical(clj * (-1) ** (l - N) * Fraction((-1) ** k, 2 ** k * math.factorial(k)) * ratio)


# -- Bessel-type series ----------------------------------------------------------

def _bessel_coeff_scaled(q: Fraction, i: int):
    """``(-1)^i / (i! Gamma(q+i+1) 2^{2i+q})`` times ``sqrt(2)`` when ``q`` is a half-integer."""
    q = Fraction(q)
    shift = q - (q.numerator // q.denominator)
    p2 = 2 * i + q - shift
    val = Fraction((-1) ** i, math.factorial(i) * 2 ** int(p2)) / gamma_halfint(q + i + 1)
    return canonical(val)


def bessel_series_coeff(q, i: int):
    """Coefficient of ``r^{2i}`` in ``G_q(r) = J_q(r)/r^q`` (integer ``q`` only)."""
    q = Fraction(q)
    if i < 0 or q < 0:
        raise ValueError("need q >= 0 and i >= 0")
    if q.denominator != 1:
        raise ValueError("half-integer q would need sqrt(2); use bessel_series_coeff_float")
    return _bessel_coeff_scaled(q, i)


def bessel_series_coeff_float(q, i: int) -> float:
    return (-1) ** i / (math.factorial(i) * math.gamma(float(q) + i + 1) * 2.0 ** (2 * i + float(q)))


# -- C_{2j} ------------------------------------------------------------------------

class C2jResult(NamedTuple):
    summed: object
    closed_form: object
    sqrt2_scale: int

    def value_float(self) -> float:
        return float(self.closed_form) / math.sqrt(2) ** self.sqrt2_scale


def C2j_closed(n: int, j: int):
    """Leading constant ``C_{2j}`` (times ``sqrt(2)`` for odd ``n``); no dependence on ``N``."""
    m = half(n)
    s = sqrt2_scale(n)
    two_m = 2 ** int(m - Fraction(s, 2))  # 2^m / sqrt(2)^s
    pref = -PiScalar.pi_power(m) / (ball_volume(n) * two_m * gamma_halfint(m + 1))
    tail = Fraction((-1) ** j, j * 4 ** j) / gamma_halfint(2 * j + m)
    return canonical(pref * tail)


def C2j_summed(n: int, N: int, j: int):
    m = half(n)
    total = Fraction(0)
    for l in range(N + j, 2 * N):
        k = l - N - j
        total = total + c_ljk(n, N, l, j, k) * _bessel_coeff_scaled(m + l - N + j, 0)
    return canonical(total)


def C2j(n: int, N: int, j: int) -> C2jResult:
    if not 1 <= j <= N - 1:
        raise IndexOutOfRange(f"C_2j needs 1 <= j <= N-1, got j={j}, N={N}")
    summed, closed = C2j_summed(n, N, j), C2j_closed(n, j)
    if summed != closed:
        raise InternalMismatch(f"C_{2 * j} mismatch for n={n}, N={N}: {summed} vs {closed}")
    return C2jResult(summed, closed, sqrt2_scale(n))


# -- a_{2p} functionals --------------------------------------------------------------

@dataclass(frozen=True)
class A2pFunctional:
    """``a_{2p}(xi0) = sum_j coefficients[j] P_{2j}(xi0)`` (times ``sqrt(2)**sqrt2_scale``)."""

    p: int
    coefficients: dict
    sqrt2_scale: int = 0

    def evaluate(self, components: dict, xi0) -> float:
        total = 0.0
        for j, c in self.coefficients.items():
            P = components.get(j)
            if P is not None and not P.is_zero():
                total += float(c) * P.evaluate_float(xi0)
        return total / math.sqrt(2) ** self.sqrt2_scale

    def evaluate_exact(self, components: dict, xi0):
        total = Fraction(0)
        for j, c in self.coefficients.items():
            P = components.get(j)
            if P is not None and not P.is_zero():
                total = total + c * P.evaluate(xi0)
        return canonical(total)


@lru_cache(maxsize=None)
def mu_triple_sum(n: int, N: int, p: int) -> tuple:
    """``mu_j(p)`` for the degree-``2N`` setting by expanding every ``G`` in its power series."""
    m = half(n)
    out = {}
    for j in range(1, N):
        total = Fraction(0)
        for s in range(j, N):
            for k in range(0, s - j + 1):
                i = p - s + k
                if i < 0:
                    continue
                total = total + c_ljk(n, N, N + s, j, k) * _bessel_coeff_scaled(m + 2 * s - k, i)
        total = canonical(total)
        if total:
            out[j] = total
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def mu_closed(n: int, p: int) -> tuple:
    """``mu_j(p)``, ``1 <= j <= p``, from the ``N``-free closed form."""
    m = half(n)
    s2 = sqrt2_scale(n)
    f = math.factorial
    two = 2 ** int(m - Fraction(s2, 2) + 2 * p)
    pref = -PiScalar.pi_power(m) / (ball_volume(n) * two * f(p) * gamma_halfint(m + 1))
    out = {}
    for j in range(1, p + 1):
        inner = sum(
            (Fraction((-1) ** i, f(i) * f(p - i - j) * f(j)) / binom(m + p - i + j - 1, j)
             for i in range(0, p - j + 1)),
            Fraction(0),
        )
        g = Fraction((-1) ** j * f(j - 1)) / gamma_halfint(m + j)
        val = canonical(pref * g * inner)
        if val:
            out[j] = val
    return tuple(sorted(out.items()))


def a2p_functional(n: int, N: int, p: int) -> A2pFunctional:
    if p < 1 or N < 2:
        raise ValueError("need p >= 1 and N >= 2")
    triple = mu_triple_sum(n, N, p)
    if p <= N - 1 and triple != mu_closed(n, p):
        raise InternalMismatch(f"mu_j({p}) mismatch for n={n}, N={N}")
    return A2pFunctional(p, dict(triple), sqrt2_scale(n))


def series_coefficient(spec, p: int) -> A2pFunctional:
    """``a_{2p}`` for an operator of top degree ``2N`` (zero functional when ``N = 1``)."""
    N = spec.top_index
    if N < 2:
        return A2pFunctional(p, {}, sqrt2_scale(spec.n_vars))
    return a2p_functional(spec.n_vars, N, p)


def decay_ratios(spec, p_max: int) -> list:
    """``sup_xi0 |a_{2p}| (p-1)! 4^p / sum_{j<=p} ||P_{2j}||`` bounds for ``p = 1..p_max``.

    Uses the stabilized coefficients (the ``N``-free closed form) with
    ``coeff_norm`` as the sup-norm proxy; returns floats.
    """
    comps = {d // 2: P for d, P in spec.expansion.components}
    n = spec.n_vars
    out = []
    for p in range(1, p_max + 1):
        bound = sum(abs(float(c)) * float(comps[j].coeff_norm()) for j, c in mu_closed(n, p) if j in comps)
        norm = sum(float(P.coeff_norm()) for j, P in comps.items() if j <= p)
        if norm == 0:
            out.append(0.0)
            continue
        val = bound * math.factorial(p - 1) * 4.0 ** p / norm
        out.append(val / math.sqrt(2) ** sqrt2_scale(n))
    return out
