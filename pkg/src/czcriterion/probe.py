"""Floating-point experiments in the plane.

These back up the exact machinery numerically: reconstruction of the kernel
outside the unit disc from ``b_N``, the multiplier inequality along rays, the
zero-set inclusion on concrete operators, the maximal-function comparison on a
grid, and the growth of ``b_N``.  All tolerances live in :data:`CONFIG`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy import signal, special

from . import sturm
from .constants import b_polynomial, c_ljk, mu_triple_sum
from .criterion import (
    OperatorSpec,
    divide_components,
    gamma_ratio,
    normalized_multiplier,
    sphere_zeros_planar,
)
from .errors import DimensionMismatch, QuadratureUnderResolved
from .poly import HPoly
from .scalar import gamma_j


@dataclass(frozen=True)
class ProbeConfig:
    reconstruction_rel_tol: float = 1e-6
    reconstruction_max_resolution: int = 256
    series_tail_tol: float = 1e-12
    series_min_value: float = 1e-8
    scan_stability: float = 0.05
    scan_radii: tuple = tuple(0.25 * k for k in range(1, 25))
    scan_max_terms: int = 200
    pointwise_drift: float = 0.25
    pointwise_eps: tuple = (0.05, 0.1, 0.2, 0.4, 0.8)
    pointwise_halfwidths: tuple = (0.0625, 0.125, 0.25, 0.5, 1.0, 2.0)
    pointwise_window: float = 1.5
    pointwise_kernel_radius: float = 3.0
    growth_samples: int = 10_000


CONFIG = ProbeConfig()


@dataclass
class ProbeReport:
    name: str
    params: dict
    observed: object
    tolerance: Optional[float]
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "probe": self.name,
            "params": self.params,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "details": self.details,
        }


def _require_plane(n: int):
    if n != 2:
        raise DimensionMismatch("numeric probes are planar (n = 2)")


def poly_eval_grid(p: HPoly, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    out = np.zeros(np.broadcast(X, Y).shape)
    for (a, b), c in p.terms.items():
        out = out + float(c) * X ** a * Y ** b
    return out


# -- kernel reconstruction outside the disc -----------------------------------

def _disc_rule(nr: int, nt: int):
    """Polar rule on the unit disc: Gauss-Legendre in ``r``, trapezoid in ``theta``."""
    xr, wr = np.polynomial.legendre.leggauss(nr)
    r = 0.5 * (xr + 1.0)
    wr = 0.5 * wr * r
    th = 2 * np.pi * np.arange(nt) / nt
    wt = np.full(nt, 2 * np.pi / nt)
    R, T = np.meshgrid(r, th, indexing="ij")
    W = np.outer(wr, wt)
    return R * np.cos(T), R * np.sin(T), R * R, W


def reconstruct_kernel(p: HPoly, x: Sequence[float], resolution: int) -> float:
    """``int_B K(x - y) b_N(|y|) dy`` with ``K(z) = p(z)/|z|^{2+deg p}``."""
    N = p.degree // 2
    b = b_polynomial(2, N)
    Y1, Y2, T, W = _disc_rule(resolution, resolution)
    Z1, Z2 = x[0] - Y1, x[1] - Y2
    K = poly_eval_grid(p, Z1, Z2) / (Z1 ** 2 + Z2 ** 2) ** (1 + N)
    bv = np.zeros_like(T)
    for c in reversed(b.coefficients):
        bv = bv * T + float(c)
    return float(np.sum(K * bv * W))


def verify_kernel_reconstruction(p: HPoly, x: Sequence[float], quad_n: int = 32,
                config: ProbeConfig = CONFIG) -> ProbeReport:
    """Compare the disc integral of ``K(x - .) b_N`` with ``K(x)`` at an exterior point."""
    _require_plane(p.n_vars)
    if p.degree % 2 or not p.is_harmonic():
        raise ValueError("need a harmonic polynomial of even degree")
    x = (float(x[0]), float(x[1]))
    if math.hypot(*x) < 1.1:
        raise ValueError("evaluation point must satisfy |x| >= 1.1")
    N = p.degree // 2
    target = p.evaluate_float(x) / (x[0] ** 2 + x[1] ** 2) ** (1 + N)
    res = quad_n
    prev = reconstruct_kernel(p, x, res)
    while True:
        nxt = min(2 * res, config.reconstruction_max_resolution)
        cur = reconstruct_kernel(p, x, nxt)
        estimate = abs(cur - prev) / max(abs(cur), abs(target), 1e-300)
        if estimate <= config.reconstruction_rel_tol * 1e-2 or nxt == res:
            break
        res, prev = nxt, cur
    scale = abs(target) if target != 0 else 1.0
    err = abs(cur - target) / scale
    if estimate > config.reconstruction_rel_tol and nxt >= config.reconstruction_max_resolution:
        raise QuadratureUnderResolved(f"quadrature estimate {estimate:.3e} at resolution {nxt}")
    return ProbeReport(
        "reconstruct",
        {"poly": str(p), "x": list(x), "resolution": nxt},
        {"integral": cur, "kernel": target, "rel_error": err},
        config.reconstruction_rel_tol,
        err <= config.reconstruction_rel_tol,
    )


# -- the multiplier series ------------------------------------------------------

class SeriesModel:
    """``sum_p a_{2p}(xi0) r^{2p}`` for one planar operator.

    With ``reduce=True`` every component is replaced by its quotient by the
    lowest one, which is the form the multiplier inequality takes after the
    common factor ``P_{2j0}`` is cancelled.
    """

    def __init__(self, spec: OperatorSpec, reduce: bool = False):
        _require_plane(spec.n_vars)
        self.spec = spec
        self.N = spec.top_index
        comps = {d // 2: P for d, P in spec.expansion.components}
        if reduce:
            _, q = divide_components(spec)
            if isinstance(q, int):
                raise ValueError("components are not divisible by the lowest one")
            comps = q
        self.comps = comps
        self._mu: list = []
        self._bounds: list = []

    def mu(self, p: int) -> dict:
        while len(self._mu) < p:
            q = len(self._mu) + 1
            mu = dict(mu_triple_sum(2, self.N, q)) if self.N >= 2 else {}
            self._mu.append({j: float(c) for j, c in mu.items()})
            self._bounds.append(sum(abs(c) * float(self.comps[j].coeff_norm())
                                    for j, c in self._mu[-1].items() if j in self.comps))
        return self._mu[p - 1]

    def bound(self, p: int) -> float:
        self.mu(p)
        return self._bounds[p - 1]

    def cutoff(self, r_max: float, tol: float = CONFIG.series_tail_tol,
               max_terms: int = CONFIG.scan_max_terms) -> int:
        """Truncation index with tail below ``tol`` on ``r <= r_max``.

        Past ``p = N`` the coefficient bounds decay at least like
        ``1/((p-1)! 4^p)``; the tail is majorized by a geometric series whose
        ratio is the larger of the last observed ratio and the factorial one.
        """
        if self.N < 2 or all(self.bound(p) == 0 for p in range(1, self.N + 1)):
            return 0
        p = self.N
        while p < max_terms:
            p += 1
            b_p, b_prev = self.bound(p), self.bound(p - 1)
            if b_p == 0:
                continue
            ratio = max(b_p / b_prev if b_prev else 0.0, 1.0 / (4 * p)) * r_max ** 2
            if ratio < 0.5:
                tail = b_p * r_max ** (2 * p) * ratio / (1 - ratio)
                if tail < tol:
                    return p
        raise RuntimeError("series truncation did not converge")

    def coefficients(self, xi0, p_max: int) -> np.ndarray:
        vals = {j: P.evaluate_float(xi0) for j, P in self.comps.items()}
        return np.array([sum(c * vals.get(j, 0.0) for j, c in self.mu(p).items())
                         for p in range(1, p_max + 1)])

    def value(self, xi0, r, p_max: Optional[int] = None) -> np.ndarray:
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if p_max is None:
            p_max = self.cutoff(float(r.max()))
        if p_max == 0:
            return np.zeros_like(r)
        a = self.coefficients(xi0, p_max)
        t = r ** 2
        acc = np.zeros_like(r)
        for c in a[::-1]:
            acc = (acc + c) * t
        return acc

    def value_bessel(self, xi0, r) -> np.ndarray:
        """Same function summed in closed Bessel form ``G_q(r) = J_q(r)/r^q``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        N = self.N
        vals = {j: P.evaluate_float(xi0) for j, P in self.comps.items()}
        out = np.zeros_like(r)
        for s in range(1, N):
            for j in range(1, s + 1):
                if vals.get(j, 0.0) == 0.0:
                    continue
                for k in range(0, s - j + 1):
                    q = 1 + 2 * s - k
                    c = float(c_ljk(2, N, N + s, j, k))
                    out += c * vals[j] * r ** (2 * (s - k)) * special.jv(q, r) / r ** q
        return out


def rational_multiplier(spec: OperatorSpec) -> HPoly:
    """``Q / gamma_{2j0}``, which has rational coefficients."""
    n, N, j0 = spec.n_vars, spec.top_index, spec.first_index
    out = HPoly.zero(n, 2 * N)
    for d, P in spec.expansion.components:
        out = out + (P * HPoly.radial(n, N - d // 2)).scale(gamma_ratio(n, d // 2, j0))
    return out


def _unit(v):
    s = math.hypot(float(v[0]), float(v[1]))
    return (float(v[0]) / s, float(v[1]) / s)


def _zero_point(ray, interval):
    if ray is not None:
        return _unit(ray), Fraction(0)
    lo, hi = interval
    return _unit((1, (lo + hi) / 2)), hi - lo


def multiplier_ratio_scan(spec: OperatorSpec, directions: int = 1000,
                          radii: Optional[Sequence[float]] = None,
                          config: ProbeConfig = CONFIG) -> ProbeReport:
    """Sup of ``|S chi_B^(r xi0)| / |Q(xi0)|`` over offset directions and the given radii."""
    _require_plane(spec.n_vars)
    radii = np.asarray(config.scan_radii if radii is None else radii, dtype=float)
    Qr = rational_multiplier(spec)
    j0, quot = divide_components(spec)
    divisible = not isinstance(quot, int)
    if divisible:
        # Zeros shared with P_{2j0} cancel; only zeros of the reduced form matter.
        zeros = sphere_zeros_planar(normalized_multiplier(spec, quot))
    else:
        zeros = sphere_zeros_planar(Qr)

    if zeros:
        # Evaluate the series at every certified zero and keep the largest value.
        model = SeriesModel(spec)
        reduced_model = SeriesModel(spec, reduce=True) if divisible else None
        best = None
        for ray, interval in zeros:
            xi, width = _zero_point(ray, interval)
            literal = float(model.value(xi, [1.0])[0])
            value = float(reduced_model.value(xi, [1.0])[0]) if divisible else literal
            if best is None or abs(value) > abs(best[2]):
                best = (xi, width, value, literal)
        xi, width, value, literal = best
        observed = {"zero": list(xi), "zero_width": float(width), "literal_series": literal,
                    "series_at_zero": value}
        return ProbeReport(
            "multiplier_ratio_scan",
            {"directions": directions, "radii": len(radii), "divisible": divisible},
            observed,
            config.series_min_value,
            abs(value) > config.series_min_value,
            {"mode": "zero", "zero_count": 2 * len(zeros), "reduced": divisible},
        )

    model = SeriesModel(spec)
    p_max = model.cutoff(float(radii.max()))
    sup = 0.0
    q_scale = abs(float(gamma_j(2, 2 * spec.first_index)))
    # |Q(r xi0)| / r^{2N} = |Q(xi0)|.
    for k in range(directions):
        th = 2 * math.pi * (k + 0.5) / directions
        xi = (math.cos(th), math.sin(th))
        q = q_scale * abs(Qr.evaluate_float(xi))
        num = np.abs(model.value(xi, radii, p_max))
        sup = max(sup, float(num.max()) / q)
    return ProbeReport(
        "multiplier_ratio_scan",
        {"directions": directions, "radii": len(radii), "terms": p_max},
        {"sup_ratio": sup},
        None,
        math.isfinite(sup),
        {"mode": "scan"},
    )


def scan_stability(spec: OperatorSpec, base: int = 1000, config: ProbeConfig = CONFIG) -> ProbeReport:
    """Relative change of the scan sup across ``base``, ``2 base`` and ``4 base`` directions."""
    sups = [multiplier_ratio_scan(spec, base * f, config=config).observed["sup_ratio"] for f in (1, 2, 4)]
    top = max(sups)
    drift = (top - min(sups)) / top if top else 0.0
    return ProbeReport(
        "scan_stability",
        {"directions": [base, 2 * base, 4 * base]},
        {"sups": sups, "drift": drift},
        config.scan_stability,
        drift < config.scan_stability and all(math.isfinite(s) for s in sups),
    )


def series_tail_check(spec: OperatorSpec, directions: int = 64, extra: int = 20,
                      config: ProbeConfig = CONFIG) -> ProbeReport:
    """Values at the tail cutoff versus ``extra`` more terms, plus the Bessel-form cross-check."""
    model = SeriesModel(spec)
    radii = np.asarray(config.scan_radii)
    p_max = model.cutoff(float(radii.max()))
    worst_tail = worst_bessel = 0.0
    for k in range(directions):
        th = 2 * math.pi * (k + 0.5) / directions
        xi = (math.cos(th), math.sin(th))
        a = model.value(xi, radii, p_max)
        b = model.value(xi, radii, p_max + extra)
        c = model.value_bessel(xi, radii)
        worst_tail = max(worst_tail, float(np.max(np.abs(a - b))))
        worst_bessel = max(worst_bessel, float(np.max(np.abs(a - c))))
    return ProbeReport(
        "series_tail",
        {"terms": p_max, "extra": extra},
        {"tail_change": worst_tail, "bessel_gap": worst_bessel},
        1e-10,
        worst_tail < 1e-10 and worst_bessel < 1e-10,
    )


# -- zero sets -------------------------------------------------------------------

def zero_sets_check(spec: OperatorSpec) -> ProbeReport:
    """Every zero of ``Q`` on the circle is a common zero of all components."""
    _require_plane(spec.n_vars)
    Qr = rational_multiplier(spec)
    zeros = sphere_zeros_planar(Qr)
    rows = []
    ok = True
    q_chart = sturm.squarefree(Qr.substitute_affine_dehomogenize(0))
    for ray, interval in zeros:
        for d, P in spec.expansion.components:
            if ray is not None:
                hit = P.evaluate(ray) == 0
            else:
                # Exact: the root of Q in the interval is a root of P iff it is a root of the gcd.
                g = sturm.gcd_poly(q_chart, P.substitute_affine_dehomogenize(0))
                lo, hi = interval
                hit = len(g) > 1 and sturm.count_real_roots(g, lo, hi) >= 1
            ok &= hit
            rows.append({"zero": [str(x) for x in ray] if ray else [str(v) for v in interval],
                         "degree": d, "vanishes": hit})
    return ProbeReport(
        "zero_sets",
        {"components": [d for d, _ in spec.expansion.components]},
        {"zeros_per_antipodal_pair": len(zeros), "points": 2 * len(zeros), "checks": rows},
        None,
        ok,
    )


# -- maximal-function comparison on a grid ------------------------------------------

@dataclass(frozen=True)
class GridFunction:
    h: float
    extent: float
    samples: np.ndarray

    @property
    def axis(self) -> np.ndarray:
        k = int(round(self.extent / self.h))
        return self.h * np.arange(-k, k + 1)


def _test_function(name: str, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    R2 = X * X + Y * Y
    if name == "disc":
        return (R2 <= 0.25).astype(float)
    if name == "gaussian":
        return np.where(R2 <= 1.0, np.exp(-4.0 * R2), 0.0)
    if name == "bump":
        bx = np.where(np.abs(X) < 1, (1 - X * X) ** 2, 0.0)
        by = np.where(np.abs(Y) < 1, (1 - Y * Y) ** 2, 0.0)
        return bx * by
    if name == "zero":
        return np.zeros_like(X)
    raise ValueError(f"unknown test function {name!r}")


def make_grid(name: str, h: float, extent: float = 1.0, scale: float = 1.0) -> GridFunction:
    k = int(round(extent / h))
    ax = h * np.arange(-k, k + 1)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    return GridFunction(h, k * h, scale * _test_function(name, X, Y))


def _kernel_grid(numerator: HPoly, h: float, radius: float, eps: float) -> np.ndarray:
    k = int(round(radius / h))
    ax = h * np.arange(-k, k + 1)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    R2 = X * X + Y * Y
    N = numerator.degree // 2
    with np.errstate(divide="ignore", invalid="ignore"):
        K = poly_eval_grid(numerator, X, Y) / R2 ** (1 + N)
    # The grid is symmetric under z -> -z, so the even kernel's singular part cancels.
    K[(R2 <= eps * eps) | (R2 > radius * radius)] = 0.0
    K[k, k] = 0.0
    return K


def truncated_transforms(spec: OperatorSpec, f: GridFunction, eps_list: Sequence[float],
                         kernel_radius: float) -> tuple:
    """``Tf`` (no truncation beyond the grid point itself) and ``T^eps f`` on the grid."""
    num = spec.expansion.numerator()
    full = signal.fftconvolve(f.samples, _kernel_grid(num, f.h, kernel_radius, 0.0), mode="same") * f.h ** 2
    trunc = [signal.fftconvolve(f.samples, _kernel_grid(num, f.h, kernel_radius, e), mode="same") * f.h ** 2
             for e in eps_list]
    return full, trunc


def square_maximal(values: np.ndarray, h: float, halfwidths: Sequence[float]) -> np.ndarray:
    from scipy.ndimage import uniform_filter

    a = np.abs(values)
    out = a.copy()
    for w in halfwidths:
        size = 2 * int(round(w / h)) + 1
        out = np.maximum(out, uniform_filter(a, size=size, mode="constant"))
    return out


def pointwise_ratio(spec: OperatorSpec, f_name: str, h: float, config: ProbeConfig = CONFIG,
                    scale: float = 1.0) -> dict:
    window = config.pointwise_window
    extent = window + max(config.pointwise_halfwidths) + 0.5
    f = make_grid(f_name, h, extent, scale)
    Tf, trunc = truncated_transforms(spec, f, config.pointwise_eps, config.pointwise_kernel_radius + extent)
    Tstar = np.abs(Tf)
    for t in trunc:
        Tstar = np.maximum(Tstar, np.abs(t))
    M = square_maximal(Tf, h, config.pointwise_halfwidths)
    ax = f.axis
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    # Compare on a fixed lattice of spacing 1/8 shared by every resolution.
    step = 0.125
    sel = ((np.abs(X) <= window + 1e-9) & (np.abs(Y) <= window + 1e-9)
           & (np.abs(np.round(X / step) * step - X) < 1e-9) & (np.abs(np.round(Y / step) * step - Y) < 1e-9))
    ratio = Tstar[sel] / (M[sel] + 1e-12)
    return {"sup_ratio": float(ratio.max()) if ratio.size else 0.0, "Tf": Tf, "grid": f}


def discrete_pointwise_probe(spec: OperatorSpec, f: str = "disc", h: float = 1 / 16,
                             config: ProbeConfig = CONFIG) -> ProbeReport:
    """``sup T*f / (M(Tf) + 1e-12)`` at spacing ``h`` and ``h/2``; passes when the drift is small."""
    _require_plane(spec.n_vars)
    a = pointwise_ratio(spec, f, h, config)["sup_ratio"]
    b = pointwise_ratio(spec, f, h / 2, config)["sup_ratio"]
    top = max(a, b)
    drift = abs(a - b) / top if top else 0.0
    return ProbeReport(
        "pointwise",
        {"f": f, "h": [h, h / 2], "eps": list(config.pointwise_eps)},
        {"sup_ratio": [a, b], "drift": drift},
        config.pointwise_drift,
        drift < config.pointwise_drift,
    )


# -- b_N growth ---------------------------------------------------------------------

def bN_sup(n: int, N: int, samples: int = CONFIG.growth_samples) -> float:
    b = b_polynomial(n, N)
    r = np.linspace(0.0, 1.0, samples)
    t = r * r
    acc = np.zeros_like(t)
    for c in reversed(b.coefficients):
        acc = acc * t + float(c)
    return float(np.max(np.abs(acc)))


def bN_growth_table(n: int = 2, N_range: Sequence[int] = range(1, 9),
                    config: ProbeConfig = CONFIG) -> ProbeReport:
    if n not in (2, 3):
        raise ValueError("growth table is for n in {2, 3}")
    Ns = sorted(N_range)
    if not Ns or Ns[0] < 1 or Ns[-1] > 12:
        raise ValueError("N_range must lie in [1, 12]")
    rows = [{"N": N, "sup": bN_sup(n, N, config.growth_samples)} for N in Ns]
    passed = rows[-1]["sup"] > rows[0]["sup"] if len(rows) > 1 else True
    return ProbeReport("bN_growth", {"n": n, "N": Ns}, rows, None, passed)


def rows_to_csv(rows: Sequence[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
