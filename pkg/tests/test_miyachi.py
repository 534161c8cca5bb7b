import json
import math

import numpy as np
import pytest

from laghyp import (
    DomainError,
    GridFunction,
    HeatParams,
    MiyachiParams,
    StripViolationError,
    TimeGrid,
    fit_gaussian_estimate,
    hankel_strip_bound_check,
    heat_kernel_grid,
    log_plus,
    logplus_integral,
    miyachi_certificate,
    pivot_variation,
    radial_grid,
    slice_decay_check,
)

ALPHA = 0.0
A_RATE = fit_gaussian_estimate(ALPHA).decay_rate
RADIAL = radial_grid(ALPHA, 6.0, n_panels=6, nodes_per_panel=8)
TIMEG = TimeGrid(12.0, 129)
HEAT = heat_kernel_grid(HeatParams(alpha=ALPHA, s=0.25), RADIAL, TIMEG)
PARAMS = MiyachiParams(a=1.0, b=0.3, delta=1.0, A=A_RATE)


def test_log_plus_values():
    assert log_plus(0.0) == 0.0
    assert log_plus(0.5) == 0.0
    assert log_plus(1.0) == 0.0
    assert log_plus(math.e) == pytest.approx(1.0, rel=1e-14)
    np.testing.assert_allclose(log_plus([0.2, 1.0, math.e**2]), [0.0, 0.0, 2.0])
    with pytest.raises(DomainError):
        log_plus(-0.1)


def test_params_half_width_is_four_a_A():
    assert PARAMS.half_width == pytest.approx(4.0 * 1.0 * A_RATE, rel=1e-14)
    explicit = MiyachiParams(a=2.0, b=0.1, delta=1.0, A=0.25, half_width=2.0)
    assert explicit.half_width == 2.0
    with pytest.raises(DomainError):
        MiyachiParams(a=2.0, b=0.1, delta=1.0, A=0.25, half_width=1.5)
    with pytest.raises(DomainError):
        MiyachiParams(a=0.0, b=0.1, delta=1.0, A=0.25)
    with pytest.raises(DomainError):
        MiyachiParams(a=1.0, b=-0.1, delta=1.0, A=0.25)


def test_slice_decay_check_heat_family():
    for lam in (2.0, 1.0 + 0.4j):
        res = slice_decay_check(HEAT, PARAMS, lam)
        assert res.passed
        assert math.isfinite(res.C) and res.C > 0.0
        assert res.ratio < 10.0


def test_slice_decay_check_outside_strip_raises():
    hw = PARAMS.half_width
    with pytest.raises(StripViolationError):
        slice_decay_check(HEAT, PARAMS, 1.0 + 1.1 * hw * 1j)


def test_hankel_strip_bound_check():
    z_grid = [0.5, 1.0, 2.0, 1.0 + 0.4j, 2.0 + 0.7j]
    res = hankel_strip_bound_check(HEAT, PARAMS, z_grid, 2.0)
    assert res.passed
    assert math.isfinite(res.C) and res.C > 0.0
    with pytest.raises(StripViolationError):
        hankel_strip_bound_check(HEAT, PARAMS, z_grid, 2.0 + 1j)
    with pytest.raises(DomainError):
        hankel_strip_bound_check(HEAT, PARAMS, [], 2.0)


def test_logplus_integral_zero_function_and_bad_radius():
    zero = GridFunction(RADIAL, TIMEG, np.zeros((RADIAL.nodes.size, TIMEG.n_t)))
    assert logplus_integral(zero, PARAMS, 2.0, 4.0) == 0.0
    with pytest.raises(DomainError):
        logplus_integral(HEAT, PARAMS, 2.0, 0.0)


def test_logplus_ladder_grows_past_critical_product():
    v4 = logplus_integral(HEAT, PARAMS, 2.0, 4.0)
    v8 = logplus_integral(HEAT, PARAMS, 2.0, 8.0)
    assert v4 > 0.0
    assert v8 > 2.0 * v4  # ab = 0.3 > 1/4, so the functional keeps growing


def test_pivot_flat_exactly_at_slice_critical_rate():
    # the lam-slice of the kernel is Gaussian with rate (lam/2) coth(2 lam s),
    # so the pivot is constant at a equal to that and only there
    lam, s = 2.0, 0.25
    a_crit = (lam / 2.0) / math.tanh(2.0 * lam * s)
    crit = MiyachiParams(a=a_crit, b=0.2, delta=1.0, A=A_RATE)
    off = MiyachiParams(a=0.7 * a_crit, b=0.2, delta=1.0, A=A_RATE)
    assert pivot_variation(HEAT, crit, lam) < 1e-5
    assert pivot_variation(HEAT, off, lam) > 1e-2


def test_certificate_supercritical_divergent():
    rep = miyachi_certificate(
        HEAT,
        PARAMS,
        lambda_samples=(2.0, -2.0),
        radius_ladder=(4.0, 6.0, 8.0, 12.0),
        deltas=(0.5, 2.0),
    )
    assert rep.hypothesis1["pass"]
    assert rep.hypothesis2["divergent"]
    assert rep.conclusion == "hypotheses_not_met"
    assert rep.product_ab == pytest.approx(0.3)
    # the verdict is scale-free: every delta ladder agrees
    assert all(rec["divergent"] for rec in rep.hypothesis2["delta_ladders"])
    payload = rep.to_json_dict()
    assert payload["schema_version"] == 1
    assert set(payload) == {
        "schema_version",
        "params",
        "lambda_samples",
        "radius_ladder",
        "hypothesis1",
        "hypothesis2",
        "product_ab",
        "conclusion",
        "residual_norm",
    }
    json.dumps(payload)  # must be plain JSON types throughout


def test_certificate_subcritical_bounded():
    rep = miyachi_certificate(
        HEAT,
        MiyachiParams(a=1.0, b=0.05, delta=1.0, A=A_RATE),
        lambda_samples=(2.0,),
        radius_ladder=(4.0, 6.0, 8.0, 12.0),
        deltas=(1.0,),
    )
    assert rep.hypothesis1["pass"]
    assert not rep.hypothesis2["divergent"]
    assert rep.conclusion == "inconclusive"


def test_certificate_zero_input_must_vanish():
    zero = GridFunction(RADIAL, TIMEG, np.zeros((RADIAL.nodes.size, TIMEG.n_t)))
    rep = miyachi_certificate(
        zero,
        PARAMS,
        lambda_samples=(2.0,),
        radius_ladder=(4.0, 6.0, 8.0),
        deltas=(1.0,),
    )
    assert rep.conclusion == "must_vanish"
    assert rep.residual_norm == 0.0
    assert rep.hypothesis1["fitted_C"] == 0.0
