import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laghyp import (
    DomainError,
    bessel_j,
    bessel_kernel,
    bessel_kernel_integral,
    bessel_kernel_series,
    damped_laguerre_sequence,
    laguerre_function,
    laguerre_polynomial,
    laguerre_sequence,
    log_gamma,
    normalized_laguerre_sequence,
    oscillator_norm_constant,
    oscillator_profile,
)

scipy_special = pytest.importorskip("scipy.special")


# frozen with mpmath (dps=30)
LAGUERRE_FUNCTION_VALUES = [
    (5, 0.5, 3.7, 0.049026257427913756),
    (12, 0.0, 8.25, 0.18425164958906296),
    (3, 2.0, 1.5, 0.0029522909546313419),
]
BESSEL_KERNEL_VALUES = [
    (0.5, 2.0, 0.36275718902099232),
    (0.0, 3.0, -0.26005195490193344),
    (1.5, 7.5, -0.0031428659270392857),
]
OSC_NORM_VALUES = [
    (3, 1.0, 2.0, 1.414213562373095),
    (0, 0.5, 1.0, 1.502251088929885),
]


def test_laguerre_polynomial_against_scipy():
    xs = np.linspace(0.0, 30.0, 40)
    for m in (0, 1, 2, 7, 23):
        for alpha in (0.0, 0.5, 1.0, 2.5):
            want = scipy_special.eval_genlaguerre(m, alpha, xs)
            got = laguerre_polynomial(m, alpha, xs)
            np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)


def test_laguerre_sequence_matches_single_evaluations():
    xs = np.linspace(0.0, 15.0, 11)
    seq = laguerre_sequence(9, 0.5, xs)
    assert seq.shape == (10, 11)
    for m in range(10):
        np.testing.assert_allclose(seq[m], laguerre_polynomial(m, 0.5, xs), rtol=1e-13)


def test_laguerre_function_frozen_values():
    for m, alpha, x, want in LAGUERRE_FUNCTION_VALUES:
        assert laguerre_function(m, alpha, x) == pytest.approx(want, rel=1e-13)


def test_damped_sequence_stays_finite_at_large_argument():
    xs = np.array([500.0, 1200.0, 2400.0])
    seq = damped_laguerre_sequence(4096, 0.0, xs)
    assert np.all(np.isfinite(seq))
    # cross-check against the exp-multiplied normalized sequence where the
    # latter is still representable
    small = np.linspace(0.0, 40.0, 9)
    a = damped_laguerre_sequence(60, 1.0, small)
    b = normalized_laguerre_sequence(60, 1.0, small) * np.exp(-small / 2.0)[None, :]
    np.testing.assert_allclose(a, b, rtol=1e-11, atol=1e-300)


@settings(max_examples=60, deadline=None)
@given(
    m=st.integers(min_value=0, max_value=60),
    alpha=st.floats(min_value=0.0, max_value=4.0),
    x=st.floats(min_value=0.0, max_value=300.0),
)
def test_laguerre_function_bounded_by_one(m, alpha, x):
    assert abs(laguerre_function(m, alpha, x)) <= 1.0 + 1e-12


def test_laguerre_rejects_bad_order():
    with pytest.raises(DomainError):
        laguerre_polynomial(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre_polynomial(2, -1.5, 1.0)


def test_bessel_kernel_frozen_values():
    for alpha, z, want in BESSEL_KERNEL_VALUES:
        assert bessel_kernel(alpha, z) == pytest.approx(want, rel=1e-12)


def test_bessel_kernel_series_equals_integral_form():
    # below the hybrid switch, where the alternating series is still stable
    for alpha in (0.0, 0.5, 1.5):
        for z in (0.3, 2.0, 9.0, 18.0):
            s = bessel_kernel_series(alpha, z)
            q = bessel_kernel_integral(alpha, z)
            assert s == pytest.approx(q, abs=5e-11)


def test_bessel_kernel_hybrid_accurate_past_series_range():
    # the plain series loses ~8 digits to cancellation by z=25; the combined
    # evaluator must not (frozen with mpmath)
    assert bessel_kernel(0.0, 25.0) == pytest.approx(0.0962667832759581, rel=1e-11)
    assert abs(bessel_kernel_series(0.0, 25.0) - 0.0962667832759581) > 1e-10


def test_bessel_j_series_against_scipy_in_stable_range():
    # cancellation grows with z; the series is used below the hybrid switch
    zs = np.linspace(0.05, 15.0, 25)
    for alpha in (0.0, 0.5, 1.0, 2.5):
        want = scipy_special.jv(alpha, zs)
        got = np.array([bessel_j(alpha, z) for z in zs]).ravel()
        np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-10)


def test_bessel_kernel_against_scipy_full_range():
    zs = np.linspace(0.05, 40.0, 37)
    for alpha in (0.0, 0.5, 1.0, 2.5):
        want = scipy_special.jv(alpha, zs) / zs**alpha
        got = np.array([float(np.asarray(bessel_kernel(alpha, z)).ravel()[0]) for z in zs])
        np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-12)


def test_bessel_kernel_even_in_z():
    for alpha in (0.0, 1.0):
        assert bessel_kernel(alpha, 3.0) == pytest.approx(bessel_kernel(alpha, -3.0), rel=1e-13)


def test_log_gamma_matches_lgamma():
    for x in np.linspace(0.5, 40.0, 80):
        assert log_gamma(float(x)) == pytest.approx(math.lgamma(float(x)), abs=1e-12)


def test_oscillator_norm_constant_frozen_values():
    for m, alpha, lam, want in OSC_NORM_VALUES:
        assert oscillator_norm_constant(m, alpha, lam) == pytest.approx(want, rel=1e-13)


def test_oscillator_profile_is_damped_laguerre_of_x_squared():
    x = 1.3
    u = x * x
    want = scipy_special.eval_genlaguerre(2, 0.0, u) * math.exp(-u / 2.0)
    assert oscillator_profile(2, 0.0, x) == pytest.approx(want, rel=1e-13)
