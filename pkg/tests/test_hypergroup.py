import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laghyp import (
    DomainError,
    GridFunction,
    GridRangeError,
    HeatParams,
    TimeGrid,
    apply_radial_laplacian,
    convolve,
    heat_kernel_grid,
    hypergroup_character,
    integrate_grid,
    norm_lp,
    radial_grid,
    radial_grid_uniform,
    translate,
    translation_rule,
)

ALPHA = 0.5
RULE = translation_rule(ALPHA)
RADIAL = radial_grid(ALPHA, 4.0, n_panels=6, nodes_per_panel=16)
TIMEG = TimeGrid(t_max=8.0, n_t=513)
X = RADIAL.nodes[:, None]
T = TIMEG.nodes[None, :]
HEAT_05 = heat_kernel_grid(HeatParams(alpha=ALPHA, s=0.5), RADIAL, TIMEG)
HEAT_025 = heat_kernel_grid(HeatParams(alpha=ALPHA, s=0.25), RADIAL, TIMEG)

# convolution needs windows the factors decay inside (support checks);
# gaussian-in-time factors keep the retained FFT band small, so these run fast
RADIAL_C = radial_grid(ALPHA, 5.0, n_panels=5, nodes_per_panel=10)
TIMEG_C = TimeGrid(7.0, 129)
_XC = RADIAL_C.nodes[:, None]
_TC = TIMEG_C.nodes[None, :]
CONV_F = GridFunction(RADIAL_C, TIMEG_C, np.exp(-(_XC**2) - 0.5 * _TC**2))
CONV_G = GridFunction(RADIAL_C, TIMEG_C, np.exp(-1.5 * _XC**2 - 0.8 * _TC**2) * (1.0 + 0.2 * _TC))


def test_character_normalized_at_origin():
    for lam in (0.5, 2.0):
        for m in (0, 1, 5):
            assert hypergroup_character(ALPHA, lam, m, 0.0, 0.0) == pytest.approx(1.0)


def test_character_modulus_bounded_by_one():
    vals = hypergroup_character(ALPHA, 1.5, 3, X, T)
    assert float(np.abs(vals).max()) <= 1.0 + 1e-12


def test_translate_by_origin_reproduces_values():
    i, j = RADIAL.nodes.size // 2, TIMEG.n_t // 3
    got = translate(HEAT_05, (0.0, 0.0), (float(RADIAL.nodes[i]), float(TIMEG.nodes[j])), RULE)
    assert abs(got - HEAT_05.values[i, j]) < 1e-10


def test_translate_constant_is_exact():
    ones = GridFunction(RADIAL, TIMEG, np.ones((RADIAL.nodes.size, TIMEG.n_t)))
    got = translate(ones, (1.2, 0.4), (0.8, -0.9), RULE)
    assert abs(got - 1.0) < 1e-12


def test_translate_product_formula_on_characters():
    psi = GridFunction(RADIAL, TIMEG, hypergroup_character(ALPHA, 1.0, 2, X, T))
    for (px, pt, qx, qt) in ((0.7, 0.3, 1.1, -0.4), (1.5, 0.0, 0.5, 1.0)):
        lhs = translate(psi, (px, pt), (qx, qt), RULE)
        rhs = hypergroup_character(ALPHA, 1.0, 2, px, pt) * hypergroup_character(
            ALPHA, 1.0, 2, qx, qt
        )
        assert abs(lhs - rhs) < 1e-5


@settings(max_examples=15, deadline=None)
@given(
    a=st.floats(min_value=-2.0, max_value=2.0),
    b=st.floats(min_value=-2.0, max_value=2.0),
)
def test_translate_is_linear(a, b):
    combo = GridFunction(RADIAL, TIMEG, a * HEAT_05.values + b * HEAT_025.values)
    p, q = (0.9, 0.2), (0.6, -0.5)
    got = translate(combo, p, q, RULE)
    want = a * translate(HEAT_05, p, q, RULE) + b * translate(HEAT_025, p, q, RULE)
    assert abs(got - want) < 1e-12 * max(1.0, abs(a) + abs(b))


def test_translate_alpha_mismatch_raises():
    with pytest.raises(DomainError):
        translate(HEAT_05, (0.0, 0.0), (1.0, 0.0), translation_rule(1.0))


def test_translate_beyond_window_raises_for_nondecaying_input():
    ones = GridFunction(RADIAL, TIMEG, np.ones((RADIAL.nodes.size, TIMEG.n_t)))
    with pytest.raises(GridRangeError):
        translate(ones, (3.5, 0.0), (3.5, 0.0), RULE)


@lru_cache(maxsize=1)
def _conv_fg():
    return convolve(CONV_F, CONV_G, stride=3)


def test_convolution_commutes():
    a = _conv_fg()
    b = convolve(CONV_G, CONV_F, stride=3)
    gap = float(np.max(np.abs(a.values - b.values)) / np.max(np.abs(a.values)))
    assert gap < 1e-7


def test_convolution_mass_multiplicative():
    got = complex(integrate_grid(_conv_fg())).real
    want = complex(integrate_grid(CONV_F)).real * complex(integrate_grid(CONV_G)).real
    assert got == pytest.approx(want, rel=1e-4)


def test_convolve_requires_matching_grids():
    other_radial = radial_grid(ALPHA, 6.0, n_panels=4, nodes_per_panel=10)
    other = GridFunction(
        other_radial,
        TIMEG_C,
        np.exp(-(other_radial.nodes[:, None] ** 2) - 2.0 * _TC**2),
    )
    with pytest.raises(DomainError):
        convolve(CONV_F, other)


def test_convolve_flags_undecayed_support():
    with pytest.raises((GridRangeError, DomainError)):
        convolve(HEAT_05, HEAT_05)  # x_max=4 window holds visible kernel mass


def test_radial_laplacian_on_gaussian():
    # for f = e^{-x^2}: f'' + ((2a+1)/x) f' = (4x^2 - 4a - 4) e^{-x^2}
    grid = radial_grid_uniform(ALPHA, 5.0, 161)
    tg = TimeGrid(t_max=1.0, n_t=9)
    vals = np.exp(-grid.nodes[:, None] ** 2) * np.ones((1, 9))
    out = apply_radial_laplacian(GridFunction(grid, tg, vals))
    want = (4.0 * grid.nodes**2 - 4.0 * ALPHA - 4.0) * np.exp(-grid.nodes**2)
    inner = grid.nodes < 4.0
    np.testing.assert_allclose(np.real(out.values[inner, 4]), want[inner], atol=5e-6)


def test_radial_laplacian_character_eigenvalue():
    lam, m = 1.0, 1
    grid = radial_grid(ALPHA, 6.0, n_panels=12, nodes_per_panel=14)
    tg = TimeGrid(t_max=6.0, n_t=769)
    psi = GridFunction(
        grid, tg, hypergroup_character(ALPHA, lam, m, grid.nodes[:, None], tg.nodes[None, :])
    )
    Lp = apply_radial_laplacian(psi)
    eig = 2.0 * abs(lam) * (2 * m + ALPHA + 1.0)
    mask = (np.abs(psi.values) > 0.05) & (np.abs(grid.nodes[:, None]) < 4.8)
    ratio = np.median(np.real(Lp.values[mask] / psi.values[mask])) / eig
    assert ratio == pytest.approx(-1.0, abs=1e-5)


def test_norm_lp_homogeneous():
    for p in (1.0, 2.0, math.inf):
        assert norm_lp(GridFunction(RADIAL, TIMEG, 3.0 * HEAT_05.values), p) == pytest.approx(
            3.0 * norm_lp(HEAT_05, p), rel=1e-12
        )
