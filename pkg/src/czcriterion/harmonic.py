"""Harmonic decomposition of homogeneous polynomials and kernel expansions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import CancellationViolation, InternalMismatch, OddComponent
from .poly import HPoly, from_json_obj, to_json_obj, try_divide


@dataclass(frozen=True)
class HarmonicExpansion:
    """Harmonic components ``P_2, P_4, ..., P_2N`` of an even kernel.

    ``components`` holds ``(degree, poly)`` pairs with strictly increasing even
    degrees ``>= 2``; every ``poly`` is harmonic and nonzero.
    """

    n_vars: int
    components: tuple

    def __post_init__(self):
        last = 0
        for deg, p in self.components:
            if deg % 2 or deg < 2 or deg <= last:
                raise ValueError(f"component degrees must be even, >= 2, increasing; got {deg}")
            if p.n_vars != self.n_vars or p.degree != deg:
                raise ValueError(f"component of degree {deg} has wrong shape")
            if p.is_zero():
                raise ValueError(f"component of degree {deg} is zero")
            if not p.is_harmonic():
                raise ValueError(f"component of degree {deg} is not harmonic")
            last = deg

    @property
    def max_degree(self) -> int:
        return self.components[-1][0] if self.components else 0

    @property
    def top_index(self) -> int:
        """``N`` with top degree ``2N``."""
        return self.max_degree // 2

    def component(self, j: int) -> HPoly:
        """``P_{2j}`` (zero polynomial when absent)."""
        for deg, p in self.components:
            if deg == 2 * j:
                return p
        return HPoly.zero(self.n_vars, 2 * j)

    def numerator(self) -> HPoly:
        """``sum_j P_{2j} |x|^{2N-2j}``, i.e. ``|x|^{2N} Omega(x)``."""
        N = self.top_index
        out = HPoly.zero(self.n_vars, 2 * N)
        for deg, p in self.components:
            out = out + p * HPoly.radial(self.n_vars, N - deg // 2)
        return out

    def scaled(self, s) -> "HarmonicExpansion":
        return HarmonicExpansion(self.n_vars, tuple((d, p.scale(s)) for d, p in self.components))

    def to_json_obj(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "components": [{"degree": d, "poly": to_json_obj(p)} for d, p in self.components],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "HarmonicExpansion":
        comps = []
        for c in obj["components"]:
            p = from_json_obj(c["poly"])
            if int(c["degree"]) != p.degree:
                raise ValueError("component degree does not match its polynomial")
            comps.append((p.degree, p))
        comps.sort(key=lambda t: t[0])
        return cls(int(obj["n_vars"]), tuple(comps))

    @classmethod
    def from_polys(cls, *polys: HPoly) -> "HarmonicExpansion":
        polys = [p for p in polys if not p.is_zero()]
        if not polys:
            raise ValueError("an expansion needs at least one nonzero component")
        return cls(polys[0].n_vars, tuple(sorted(((p.degree, p) for p in polys), key=lambda t: t[0])))


def harmonic_projection(p: HPoly) -> HPoly:
    """Harmonic part ``H_d`` in ``p = H_d + |x|^2 R``.

    Uses ``H = sum_k (-1)^k |x|^{2k} Lap^k p / (2^k k! prod_{i=1..k}(n + 2d - 2 - 2i))``.
    """
    n, d = p.n_vars, p.degree
    out = p
    term = p
    coef = Fraction(1)
    for k in range(1, d // 2 + 1):
        term = term.laplacian()
        if term.is_zero():
            break
        coef *= Fraction(-1, 2 * k * (n + 2 * d - 2 - 2 * k))
        out = out + (term * HPoly.radial(n, k)).scale(coef)
    return out


def decompose(p: HPoly) -> list:
    """``[(H_{d-2k}, k), ...]`` with harmonic ``H`` and ``p = sum H_{d-2k} |x|^{2k}``.

    Zero layers are omitted.  The reconstruction is checked before returning.
    """
    n = p.n_vars
    r2 = HPoly.radial(n, 1)
    layers = []
    rest = p
    k = 0
    while not rest.is_zero():
        h = harmonic_projection(rest)
        if not h.is_zero():
            layers.append((h, k))
        diff = rest - h
        if diff.is_zero():
            break
        q = try_divide(diff, r2)
        if q is None:
            raise InternalMismatch("harmonic remainder is not divisible by |x|^2")
        rest = q
        k += 1
    recon = HPoly.zero(n, p.degree)
    for h, kk in layers:
        recon = recon + h * HPoly.radial(n, kk)
    if recon != p:
        raise InternalMismatch("harmonic decomposition failed to reconstruct its input")
    return layers


def decompose_linear_solve(p: HPoly) -> list:
    """Same decomposition as :func:`decompose`, computed by exact Gaussian elimination.

    Each layer solves ``Lap(|x|^2 R) = Lap(p)`` for the coefficients of ``R``;
    kept as an independent check on the projection formula.
    """
    from .linalg import solve_rational
    from .poly import monomials

    n = p.n_vars
    r2 = HPoly.radial(n, 1)
    layers = []
    rest, k = p, 0
    while not rest.is_zero():
        d = rest.degree
        if d < 2:
            layers.append((rest, k))
            break
        basis = monomials(n, d - 2)
        rows = monomials(n, d - 2)
        images = [(HPoly.monomial(e) * r2).laplacian() for e in basis]
        matrix = [[img.coeff(r) for img in images] for r in rows]
        rhs = [rest.laplacian().coeff(r) for r in rows]
        sol = solve_rational(matrix, rhs)
        R = HPoly(n, d - 2, {e: c for e, c in zip(basis, sol)})
        h = rest - R * r2
        if not h.is_zero():
            layers.append((h, k))
        rest, k = R, k + 1
    return layers


def expansion_from_numerator(num: HPoly) -> HarmonicExpansion:
    """Harmonic expansion of ``Omega = num / |x|^{2N}`` on the sphere."""
    if num.degree % 2:
        raise OddComponent("numerator degree is odd; the kernel is not even")
    if num.is_zero():
        raise ValueError("zero kernel")
    comps = []
    for h, k in decompose(num):
        deg = h.degree
        if deg % 2:
            raise OddComponent(f"odd harmonic component of degree {deg}")
        if deg == 0:
            raise CancellationViolation("kernel has nonzero mean on the sphere")
        comps.append((deg, h))
    comps.sort(key=lambda t: t[0])
    return HarmonicExpansion(num.n_vars, tuple(comps))


def xy_family_coefficients(j: int) -> list:
    """``c_0 .. c_j`` of ``Q_{2j} = sum_k c_k y^{2k} z^{2j-2k}`` with ``c_0 = 1``.

    Chosen so that ``x y Q_{2j}`` is harmonic in three variables.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    c = [Fraction(1)]
    for k in range(j):
        c.append(-c[-1] * Fraction((2 * j - 2 * k) * (2 * j - 2 * k - 1), (2 * k + 2) * (2 * k + 3)))
    return c


def xy_family_generate(j: int) -> HPoly:
    """``x y Q_{2j}(x, y, z)``, a harmonic polynomial of degree ``2j + 2``."""
    c = xy_family_coefficients(j)
    q = HPoly(3, 2 * j, {(0, 2 * k, 2 * j - 2 * k): ck for k, ck in enumerate(c)})
    out = HPoly.monomial((1, 1, 0)) * q
    if not out.is_harmonic():
        raise InternalMismatch(f"example-5 polynomial for j={j} is not harmonic")
    return out


def xy_family_printed_recurrence(j: int) -> list:
    """Coefficients from the recurrence ``c_k = -c_{k-1} 2k(2k+1)/((2j-2k+1)(2j-2k+2))``.

    Kept for comparison only: it does not produce harmonic polynomials.
    """
    c = [Fraction(1)]
    for k in range(1, j + 1):
        c.append(-c[-1] * Fraction(2 * k * (2 * k + 1), (2 * j - 2 * k + 1) * (2 * j - 2 * k + 2)))
    return c
