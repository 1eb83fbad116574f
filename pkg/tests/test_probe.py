import math

import numpy as np
import pytest

from conftest import P4, XY, poly, xy_triple_specs
from czcriterion.criterion import OperatorSpec
from czcriterion.errors import DimensionMismatch
from czcriterion.probe import (
    SeriesModel,
    bN_growth_table,
    discrete_pointwise_probe,
    make_grid,
    multiplier_ratio_scan,
    pointwise_ratio,
    rows_to_csv,
    series_tail_check,
    truncated_transforms,
    verify_kernel_reconstruction,
    zero_sets_check,
)

X2MY2 = poly(2, {(2, 0): 1, (0, 2): -1})


def test_reconstruction_examples():
    r = verify_kernel_reconstruction(XY, (2, 0))
    assert r.passed and r.observed["kernel"] == 0 and abs(r.observed["integral"]) < 1e-12
    r = verify_kernel_reconstruction(XY, (2, 1))
    assert math.isclose(r.observed["kernel"], 2 / 25) and r.passed
    r = verify_kernel_reconstruction(X2MY2, (0, 1.5))
    assert math.isclose(r.observed["kernel"], -4 / 9) and r.passed


def test_reconstruction_rejects_bad_input():
    with pytest.raises(ValueError):
        verify_kernel_reconstruction(XY, (1.0, 0.0))
    with pytest.raises(ValueError):
        verify_kernel_reconstruction(poly(2, {(2, 0): 1}), (2, 0))
    with pytest.raises(DimensionMismatch):
        verify_kernel_reconstruction(poly(3, {(1, 1, 0): 1}), (2, 0))


def test_scan_pure_riesz_is_zero():
    rep = multiplier_ratio_scan(OperatorSpec.from_components(XY), 64)
    assert rep.observed["sup_ratio"] == 0


def test_scan_dichotomy(xy_triple):
    fail, ok, zero = xy_triple
    rep = multiplier_ratio_scan(ok, 1000)
    assert rep.details["mode"] == "scan" and math.isfinite(rep.observed["sup_ratio"])
    for s in (fail, zero):
        rep = multiplier_ratio_scan(s)
        assert rep.details["mode"] == "zero" and rep.passed
        assert abs(rep.observed["series_at_zero"]) > 1e-8


def test_series_bessel_and_tail(xy_triple):
    _, ok, _ = xy_triple
    rep = series_tail_check(ok, directions=16)
    assert rep.passed, rep.observed
    m = SeriesModel(ok)
    xi = (0.6, 0.8)
    assert np.allclose(m.value(xi, [0.5, 2.0]), m.value_bessel(xi, [0.5, 2.0]), atol=1e-12)


def test_zero_sets_examples(xy_triple):
    _, ok, _ = xy_triple
    rep = zero_sets_check(ok)
    assert rep.passed and rep.observed["points"] == 4
    scaled = zero_sets_check(ok.scaled(3))
    assert scaled.observed["checks"] == rep.observed["checks"]
    assert zero_sets_check(OperatorSpec.from_components(XY)).passed


def test_pointwise_zero_function():
    rep = discrete_pointwise_probe(OperatorSpec.from_components(XY), "zero", h=1 / 8)
    assert rep.observed["sup_ratio"] == [0.0, 0.0] and rep.passed


def test_pointwise_linearity():
    spec = OperatorSpec.from_components(XY)
    f1, f2 = make_grid("disc", 1 / 8, 2.0), make_grid("disc", 1 / 8, 2.0, scale=2.0)
    t1, _ = truncated_transforms(spec, f1, [0.1], 3.0)
    t2, _ = truncated_transforms(spec, f2, [0.1], 3.0)
    assert np.allclose(t2, 2 * t1, atol=1e-12)


def test_pointwise_riesz_disc_stable():
    rep = discrete_pointwise_probe(OperatorSpec.from_components(XY), "disc")
    assert rep.passed and all(math.isfinite(v) for v in rep.observed["sup_ratio"])


def test_pointwise_ratio_scale_invariant():
    spec = OperatorSpec.from_components(XY)
    a = pointwise_ratio(spec, "gaussian", 1 / 8)["sup_ratio"]
    b = pointwise_ratio(spec, "gaussian", 1 / 8, scale=5.0)["sup_ratio"]
    assert math.isclose(a, b, rel_tol=1e-9)


def test_growth_examples():
    rep = bN_growth_table(2, [1])
    assert rep.passed and len(rep.observed) == 1
    assert math.isclose(rep.observed[0]["sup"], 1 / math.pi)
    rep = bN_growth_table(2, range(1, 9))
    sups = [r["sup"] for r in rep.observed]
    assert rep.passed and all(a < b for a, b in zip(sups, sups[1:]))
    assert bN_growth_table(3, range(1, 4)).passed
    with pytest.raises(ValueError):
        bN_growth_table(4, [1])
    with pytest.raises(ValueError):
        bN_growth_table(2, [13])


def test_csv():
    text = rows_to_csv([{"N": 1, "sup": 0.5}, {"N": 2, "sup": 1.5}])
    assert text.splitlines() == ["N,sup", "1,0.5", "2,1.5"]
    assert rows_to_csv([]) == ""
