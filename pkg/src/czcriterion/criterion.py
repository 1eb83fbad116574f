"""Fourier multipliers of even polynomial operators and the divisibility/nonvanishing test.

An operator is described by its harmonic expansion ``P_{2j0}, ..., P_{2N}``.
Control of the maximal singular integral by the operator itself holds iff
``P_{2j0}`` divides every ``P_{2j}`` and the normalized multiplier numerator

    W = sum_j (gamma_{2j}/gamma_{2j0}) Q_{2j-2j0} |x|^{2N-2j},   P_{2j} = P_{2j0} Q_{2j-2j0},

has no zero on the unit sphere.  ``W`` has rational coefficients, so the
planar case is decided exactly with Sturm sequences; in higher dimensions a
zero search is followed by certified subdivision of the sphere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Union

from .errors import DimensionMismatch, ZeroPolynomial
from .harmonic import HarmonicExpansion, expansion_from_numerator
from .poly import HPoly, format_scalar, to_json_obj, try_divide
from .scalar import gamma_j, gamma_quotient
from . import sturm

SCHEMA = "cz-criterion/1"


@dataclass(frozen=True)
class OperatorSpec:
    expansion: HarmonicExpansion

    def __post_init__(self):
        if not self.expansion.components:
            raise ValueError("operator needs at least one harmonic component")

    @property
    def n_vars(self) -> int:
        return self.expansion.n_vars

    @property
    def top_index(self) -> int:
        return self.expansion.top_index

    @property
    def first_index(self) -> int:
        return self.expansion.components[0][0] // 2

    def component(self, j: int) -> HPoly:
        return self.expansion.component(j)

    def indices(self) -> list:
        return [d // 2 for d, _ in self.expansion.components]

    @classmethod
    def from_numerator(cls, num: HPoly) -> "OperatorSpec":
        return cls(expansion_from_numerator(num))

    @classmethod
    def from_components(cls, *polys: HPoly) -> "OperatorSpec":
        return cls(HarmonicExpansion.from_polys(*polys))

    def scaled(self, s) -> "OperatorSpec":
        return OperatorSpec(self.expansion.scaled(s))


@dataclass(frozen=True)
class MultiplierForm:
    """Multiplier ``Q(xi) / |xi|^{denom_power}``."""

    numerator: HPoly
    denom_power: int

    def value_float(self, xi) -> float:
        r2 = sum(float(x) ** 2 for x in xi)
        return self.numerator.evaluate_float(xi) / r2 ** (self.denom_power / 2)


# -- verdicts ---------------------------------------------------------------

@dataclass(frozen=True)
class DivisibilityFailure:
    j: int

    def to_json_obj(self) -> dict:
        return {"kind": "divisibility", "j": self.j}


@dataclass(frozen=True)
class ZeroOnSphere:
    """Evidence that ``W`` vanishes somewhere on the unit sphere.

    ``witness`` is a rational point with ``W(witness) = 0`` exactly; it lies on
    the sphere when ``on_sphere`` is set and is otherwise a point of the zero
    ray (homogeneity makes the two equivalent).  Irrational zeros carry an
    ``enclosure`` instead: per-coordinate rational intervals of a ray point,
    or a pair of points where ``W`` takes opposite signs.
    """

    witness: Optional[tuple] = None
    on_sphere: bool = False
    enclosure: Optional[tuple] = None
    zero_count: Optional[int] = None

    def to_json_obj(self) -> dict:
        out = {"kind": "zero_on_sphere", "on_sphere": self.on_sphere}
        out["witness"] = None if self.witness is None else [_frac_text(x) for x in self.witness]
        if self.enclosure is not None:
            out["enclosure"] = [[_frac_text(a), _frac_text(b)] for a, b in self.enclosure]
        if self.zero_count is not None:
            out["zero_count"] = self.zero_count
        return out


@dataclass(frozen=True)
class Controlled:
    riesz_poly: HPoly
    u_multiplier_numerator: HPoly
    certified_min: Fraction
    quotients: dict = field(default_factory=dict, compare=False)
    status: str = field(default="controlled", init=False)

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "status": self.status,
            "riesz_poly": to_json_obj(self.riesz_poly),
            "u_multiplier": to_json_obj(self.u_multiplier_numerator),
            "certified_min": _frac_text(self.certified_min),
        }


@dataclass(frozen=True)
class NotControlled:
    reason: Union[DivisibilityFailure, ZeroOnSphere]
    riesz_poly: Optional[HPoly] = None
    u_multiplier_numerator: Optional[HPoly] = None
    status: str = field(default="not_controlled", init=False)

    def to_json_obj(self) -> dict:
        out = {"schema": SCHEMA, "status": self.status, "reason": self.reason.to_json_obj()}
        if isinstance(self.reason, ZeroOnSphere) and self.reason.witness is not None:
            out["witness"] = [_frac_text(x) for x in self.reason.witness]
        if self.riesz_poly is not None:
            out["riesz_poly"] = to_json_obj(self.riesz_poly)
        if self.u_multiplier_numerator is not None:
            out["u_multiplier"] = to_json_obj(self.u_multiplier_numerator)
        return out


@dataclass(frozen=True)
class Undecided:
    best_lower_bound: Fraction
    budget_spent: int
    riesz_poly: Optional[HPoly] = None
    u_multiplier_numerator: Optional[HPoly] = None
    status: str = field(default="undecided", init=False)

    def to_json_obj(self) -> dict:
        out = {
            "schema": SCHEMA,
            "status": self.status,
            "best_lower_bound": _frac_text(self.best_lower_bound),
            "budget_spent": self.budget_spent,
        }
        if self.riesz_poly is not None:
            out["riesz_poly"] = to_json_obj(self.riesz_poly)
        if self.u_multiplier_numerator is not None:
            out["u_multiplier"] = to_json_obj(self.u_multiplier_numerator)
        return out


Verdict = Union[Controlled, NotControlled, Undecided]


def _frac_text(x) -> str:
    return format_scalar(Fraction(x))


# -- multiplier assembly ------------------------------------------------------

def assemble_multiplier(spec: OperatorSpec) -> MultiplierForm:
    n, N = spec.n_vars, spec.top_index
    Q = HPoly.zero(n, 2 * N)
    for deg, p in spec.expansion.components:
        j = deg // 2
        Q = Q + (p * HPoly.radial(n, N - j)).scale(gamma_j(n, deg))
    return MultiplierForm(Q, 2 * N)


def gamma_ratio(n: int, j: int, j0: int) -> Fraction:
    """``gamma_{2j} / gamma_{2j0}`` (indices are half the degrees)."""
    if j < 1 or j0 < 1:
        raise ValueError("indices must be >= 1")
    m = Fraction(n, 2)
    sign = -1 if (j - j0) % 2 else 1
    return sign * gamma_quotient(j, j0) * gamma_quotient(m + j0, m + j)


def normalized_multiplier(spec: OperatorSpec, quotients: dict) -> HPoly:
    n, N, j0 = spec.n_vars, spec.top_index, spec.first_index
    W = HPoly.zero(n, 2 * N - 2 * j0)
    for j, q in quotients.items():
        W = W + (q * HPoly.radial(n, N - j)).scale(gamma_ratio(n, j, j0))
    return W


# -- planar exact backend -------------------------------------------------

def sturm_circle_zero_count(w: HPoly) -> int:
    """Number of zeros of the form ``w`` on the unit circle."""
    if w.n_vars != 2:
        raise DimensionMismatch("circle zero count needs two variables")
    if w.is_zero():
        raise ZeroPolynomial("zero form vanishes everywhere")
    if not w.is_rational():
        raise ValueError("circle zero count needs rational coefficients")
    chart = w.substitute_affine_dehomogenize(0)
    count = 2 * sturm.count_real_roots(chart) if sturm.degree(chart) > 0 else 0
    if w.coeff((0, w.degree)) == 0:
        count += 2
    return count


def _rational_unit(ray: tuple) -> tuple:
    """Scale a rational ray point onto the sphere when that stays rational."""
    s = sum(Fraction(x) ** 2 for x in ray)
    num, den = s.numerator, s.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        r = Fraction(rn, rd)
        return tuple(Fraction(x) / r for x in ray), True
    return tuple(Fraction(x) for x in ray), False


def _canonical_sign(pt: tuple) -> tuple:
    for x in pt:
        if x != 0:
            return pt if x > 0 else tuple(-y for y in pt)
    return pt


def _pick_witness(rays: list) -> tuple:
    cands = []
    for ray in rays:
        pt, unit = _rational_unit(_canonical_sign(tuple(ray)))
        cands.append((not unit, pt, unit))
    cands.sort()
    _, pt, unit = cands[0]
    return pt, unit


def _planar_zeros(W: HPoly) -> Optional[ZeroOnSphere]:
    count = sturm_circle_zero_count(W)
    if count == 0:
        return None
    rays = []
    if W.coeff((0, W.degree)) == 0:
        rays.append((Fraction(0), Fraction(1)))
    chart = W.substitute_affine_dehomogenize(0)
    enclosure = None
    if sturm.degree(chart) > 0:
        for iv in sturm.isolate_real_roots(chart):
            r = sturm.rational_root_in(chart, iv)
            if r is not None:
                rays.append((Fraction(1), r))
            elif enclosure is None:
                lo, hi = sturm.refine_root(chart, iv, Fraction(1, 2**40))
                enclosure = ((Fraction(1), Fraction(1)), (lo, hi))
    if rays:
        pt, unit = _pick_witness(rays)
        return ZeroOnSphere(witness=pt, on_sphere=unit, zero_count=count)
    return ZeroOnSphere(enclosure=enclosure, zero_count=count)


# -- higher-dimensional search and certification --------------------------

def _candidate_rays(n: int, samples: int, seed: int) -> list:
    rays = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rays.append(tuple(e))
    for i, k in combinations(range(n), 2):
        for s in (1, -1):
            e = [0] * n
            e[i], e[k] = 1, s
            rays.append(tuple(e))
    for signs in product((1, -1), repeat=n - 1):
        rays.append((1,) + signs)
    rng = random.Random(seed)
    for _ in range(samples):
        rays.append(tuple(Fraction(rng.randint(-64, 64), 64) for _ in range(n)))
    return [tuple(Fraction(x) for x in r) for r in rays if any(r)]


def _abs_bound(p: HPoly, box_max: tuple) -> Fraction:
    total = Fraction(0)
    for e, c in p.terms.items():
        m = abs(c)
        for b, a in zip(box_max, e):
            if a:
                m *= b ** a
        total += m
    return total


def certify_nonvanishing(W: HPoly, budget: int) -> tuple:
    """Certified subdivision of the cube faces ``x_i = 1``.

    Returns ``(status, value, spent)`` where ``status`` is ``"certified"``
    (``value`` a positive lower bound for ``|W|`` on the sphere),
    ``"sign_change"`` (``value`` a pair of rational points with opposite
    signs), or ``"exhausted"`` (``value`` the best bound known so far, 0).
    """
    n, D = W.n_vars, W.degree
    if D == 0:
        c = W.coeff((0,) * n)
        return "certified", abs(c), 1
    grads = [W.derivative(i) for i in range(n)]
    spent = 0
    worst = None
    ref_sign, ref_point = 0, None
    queue = []
    for face in range(n):
        free = [k for k in range(n) if k != face]
        queue.append((face, tuple(Fraction(0) for _ in free), Fraction(1)))
    cells_lb = []
    while queue:
        if spent >= budget:
            return "exhausted", Fraction(0), spent
        face, center, h = queue.pop()
        spent += 1
        pt = [Fraction(0)] * n
        pt[face] = Fraction(1)
        free = [k for k in range(n) if k != face]
        for k, c in zip(free, center):
            pt[k] = c
        val = W.evaluate(pt)
        sgn = (val > 0) - (val < 0)
        if sgn == 0:
            return "zero", tuple(pt), spent
        if ref_sign == 0:
            ref_sign, ref_point = sgn, tuple(pt)
        elif sgn != ref_sign:
            return "sign_change", (ref_point, tuple(pt)), spent
        box_max = [Fraction(1)] * n
        for k, c in zip(free, center):
            box_max[k] = min(abs(c) + h, Fraction(1))
        lip = sum(_abs_bound(grads[k], box_max) for k in free)
        lb = abs(val) - h * lip
        if lb > 0:
            cells_lb.append(lb)
            continue
        h2 = h / 2
        for offs in product((-1, 1), repeat=n - 1):
            queue.append((face, tuple(c + o * h2 for c, o in zip(center, offs)), h2))
    worst = min(cells_lb)
    # |x|^2 <= n on the cube surface and W is homogeneous of even degree D.
    return "certified", worst / Fraction(n) ** (D // 2), spent


def _search_zero_ray(W: HPoly, samples: int, seed: int) -> Optional[tuple]:
    zeros = [r for r in _candidate_rays(W.n_vars, samples, seed) if W.evaluate(r) == 0]
    return sorted(zeros)[0] if zeros else None


# -- the decision procedure --------------------------------------------------

def divide_components(spec: OperatorSpec):
    """``(j0, quotients)`` or ``(j0, failing_j)`` when some division fails."""
    j0 = spec.first_index
    base = spec.component(j0)
    quotients = {}
    for deg, p in spec.expansion.components:
        j = deg // 2
        q = try_divide(p, base)
        if q is None:
            return j0, j
        quotients[j] = q
    return j0, quotients


def check_condition_iv(spec: OperatorSpec, budget: int = 10**5, samples: int = 1000,
                       seed: int = 0) -> Verdict:
    j0, result = divide_components(spec)
    if isinstance(result, int):
        return NotControlled(DivisibilityFailure(result))
    quotients = result
    base = spec.component(j0)
    W = normalized_multiplier(spec, quotients)
    # W vanishing identically would force every component to vanish.
    assert not W.is_zero(), "normalized multiplier vanished identically"
    if not W.is_rational():
        raise ValueError("components must have rational coefficients")
    n = spec.n_vars

    if n == 2:
        zero = _planar_zeros(W)
        if zero is not None:
            return NotControlled(zero, base, W)
        status, value, spent = certify_nonvanishing(W, max(budget, 10**6))
        if status != "certified":
            raise AssertionError(f"planar certification disagreed with Sturm count: {status}")
        return Controlled(base, W, value, quotients)

    ray = _search_zero_ray(W, samples, seed)
    if ray is not None:
        pt, unit = _rational_unit(_canonical_sign(ray))
        return NotControlled(ZeroOnSphere(witness=pt, on_sphere=unit), base, W)
    status, value, spent = certify_nonvanishing(W, budget)
    if status == "certified":
        return Controlled(base, W, value, quotients)
    if status == "zero":
        pt, unit = _rational_unit(_canonical_sign(value))
        return NotControlled(ZeroOnSphere(witness=pt, on_sphere=unit), base, W)
    if status == "sign_change":
        a, b = value
        enclosure = tuple(zip(a, b))
        return NotControlled(ZeroOnSphere(enclosure=enclosure), base, W)
    return Undecided(Fraction(0), spent, base, W)


def sphere_zeros_planar(form: HPoly, width: Fraction = Fraction(1, 2**50)) -> list:
    """All zeros of a planar form on the circle as ``(exact_point_or_None, interval)`` pairs.

    Each zero is reported once per antipodal pair, as a ray point ``(x, y)``:
    ``(0, 1)`` or ``(1, t)``.  Rational ``t`` gives an exact point; otherwise
    ``interval`` encloses ``t`` to the requested width.
    """
    if not form.is_rational():
        raise ValueError("needs rational coefficients")
    out = []
    chart = form.substitute_affine_dehomogenize(0)
    if sturm.degree(chart) > 0:
        for iv in sturm.isolate_real_roots(chart):
            r = sturm.rational_root_in(chart, iv)
            if r is not None:
                out.append(((Fraction(1), r), (r, r)))
            else:
                out.append((None, sturm.refine_root(chart, iv, width)))
    if form.coeff((0, form.degree)) == 0:
        out.append(((Fraction(0), Fraction(1)), None))
    return out
