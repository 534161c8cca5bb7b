import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laghyp import (
    SCHEMA_VERSION,
    DomainError,
    GridFunction,
    SpectralFunction,
    TimeGrid,
    exact_sum,
    integrate_grid,
    integrate_radial,
    load_grid_function,
    load_spectral_function,
    mass,
    radial_grid,
    radial_grid_uniform,
    save_grid_function,
    save_spectral_function,
    spectral_grid,
    spectral_grid_uniform,
)


def test_schema_version_is_one():
    assert SCHEMA_VERSION == 1


def test_radial_weights_integrate_gaussian():
    # integral of x^(2a+1) e^{-x^2} dx on [0, inf) = Gamma(a+1)/2
    for alpha in (0.0, 0.5, 2.0):
        grid = radial_grid(alpha, 9.0, n_panels=8, nodes_per_panel=14)
        got = float(exact_sum(grid.radial_weights * np.exp(-grid.nodes**2)))
        assert got == pytest.approx(math.gamma(alpha + 1.0) / 2.0, rel=1e-12)


def test_measure_weights_carry_normalization():
    alpha = 1.0
    grid = radial_grid(alpha, 9.0)
    ratio = grid.radial_weights[5] / grid.measure_weights[5]
    assert ratio == pytest.approx(math.pi * math.gamma(alpha + 1.0), rel=1e-13)


def test_integrate_radial_accepts_callable_and_samples():
    grid = radial_grid(0.0, 6.0)
    a = integrate_radial(lambda x: np.exp(-x * x), grid)
    b = integrate_radial(np.exp(-grid.nodes**2), grid)
    assert complex(a) == complex(b)


def test_time_grid_trapezoid():
    tg = TimeGrid(t_max=3.0, n_t=301)
    assert float(exact_sum(tg.weights)) == pytest.approx(6.0, rel=1e-14)
    assert tg.nodes[0] == -3.0 and tg.nodes[-1] == 3.0
    assert tg.step == pytest.approx(0.02)
    with pytest.raises(DomainError):
        TimeGrid(t_max=-1.0, n_t=8)
    with pytest.raises(DomainError):
        TimeGrid(t_max=1.0, n_t=1)


def test_mass_of_separable_product():
    grid = radial_grid(0.5, 8.0, n_panels=8, nodes_per_panel=14)
    tg = TimeGrid(t_max=5.0, n_t=401)
    vals = np.exp(-grid.nodes[:, None] ** 2) * np.exp(-((tg.nodes[None, :] / 1.5) ** 2))
    f = GridFunction(grid, tg, vals)
    radial_part = math.gamma(1.5) / 2.0 / (math.pi * math.gamma(1.5))
    time_part = 1.5 * math.sqrt(math.pi) * math.erf(5.0 / 1.5)
    assert complex(mass(f)).real == pytest.approx(radial_part * time_part, rel=1e-8)
    assert complex(integrate_grid(f)) == complex(mass(f))


def test_grid_function_validation():
    grid = radial_grid(0.0, 4.0, n_panels=2, nodes_per_panel=6)
    tg = TimeGrid(t_max=1.0, n_t=4)
    with pytest.raises(DomainError):
        GridFunction(grid, tg, np.zeros((3, 4)))
    bad = np.zeros((grid.nodes.size, 4))
    bad[0, 0] = np.nan
    with pytest.raises(DomainError):
        GridFunction(grid, tg, bad)


def test_spectral_grid_excludes_origin_and_weights_positive():
    sg = spectral_grid(0.5, m_max=4, lambda_max=6.0)
    assert np.all(sg.lambda_nodes != 0.0)
    assert np.all(sg.gamma_weights > 0.0)
    assert sg.gamma_weights.shape == (sg.n_lambda, 5)
    with pytest.raises(DomainError):
        spectral_grid(0.5, m_max=4, lambda_max=6.0, lambda_min=-1.0)
    with pytest.raises(DomainError):
        spectral_grid_uniform(0.5, m_max=4, spacing=0.0, n_per_side=3)


def test_spectral_uniform_symmetric_nodes():
    sg = spectral_grid_uniform(0.0, m_max=2, spacing=0.5, n_per_side=4)
    np.testing.assert_allclose(sg.lambda_nodes, [-1.75, -1.25, -0.75, -0.25, 0.25, 0.75, 1.25, 1.75])
    np.testing.assert_allclose(sg.lambda_rule.weights, 0.5)


def test_grid_function_save_load_byte_identical(tmp_path):
    grid = radial_grid(0.5, 5.0, n_panels=3, nodes_per_panel=8)
    tg = TimeGrid(t_max=2.0, n_t=17)
    vals = np.exp(-grid.nodes[:, None] ** 2) * (1.0 + 1j * tg.nodes[None, :])
    f = GridFunction(grid, tg, vals)
    base = str(tmp_path / "f")
    csv1, json1 = save_grid_function(f, base)
    g = load_grid_function(base)
    np.testing.assert_array_equal(f.values, g.values)
    np.testing.assert_array_equal(f.radial.nodes, g.radial.nodes)
    assert f.radial.alpha == g.radial.alpha
    base2 = str(tmp_path / "g")
    csv2, json2 = save_grid_function(g, base2)
    assert open(csv1, "rb").read() == open(csv2, "rb").read()
    assert open(json1, "rb").read() == open(json2, "rb").read()


def test_spectral_function_save_load_byte_identical(tmp_path):
    sg = spectral_grid(0.0, m_max=3, lambda_max=4.0, n_panels=3, nodes_per_panel=6)
    rng = np.random.default_rng(7)
    F = SpectralFunction(sg, rng.standard_normal((sg.n_lambda, 4)) * (1 + 1j))
    base = str(tmp_path / "F")
    csv1, json1 = save_spectral_function(F, base)
    G = load_spectral_function(base)
    np.testing.assert_array_equal(F.values, G.values)
    np.testing.assert_array_equal(F.grid.lambda_nodes, G.grid.lambda_nodes)
    base2 = str(tmp_path / "G")
    csv2, json2 = save_spectral_function(G, base2)
    assert open(csv1, "rb").read() == open(csv2, "rb").read()
    assert open(json1, "rb").read() == open(json2, "rb").read()


def test_saved_json_carries_schema_version(tmp_path):
    grid = radial_grid(0.0, 2.0, n_panels=2, nodes_per_panel=4)
    tg = TimeGrid(t_max=1.0, n_t=5)
    f = GridFunction(grid, tg, np.ones((grid.nodes.size, 5)))
    _, json_path = save_grid_function(f, str(tmp_path / "f"))
    import json

    meta = json.load(open(json_path))
    assert meta["schema_version"] == SCHEMA_VERSION


@settings(max_examples=25, deadline=None)
@given(c=st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False))
def test_integrate_grid_is_linear_in_scalar(c):
    grid = radial_grid(0.0, 3.0, n_panels=2, nodes_per_panel=5)
    tg = TimeGrid(t_max=1.0, n_t=9)
    vals = np.exp(-grid.nodes[:, None] ** 2 - tg.nodes[None, :] ** 2)
    base = complex(integrate_grid(GridFunction(grid, tg, vals)))
    scaled = complex(integrate_grid(GridFunction(grid, tg, c * vals)))
    assert scaled == pytest.approx(c * base, rel=1e-12, abs=1e-12)
