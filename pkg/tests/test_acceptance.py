"""Acceptance gate: eleven end-to-end criteria, one printed verdict line each.

Verdict lines go to the real stdout (bypassing capture) so the transcript of
a full pytest run always shows all eleven lines, pass or fail.
"""

import math
import sys
import time
from functools import lru_cache

import numpy as np

from laghyp import (
    GridFunction,
    HeatParams,
    SuiteConfig,
    TimeGrid,
    apply_radial_laplacian,
    calibrate_heat,
    collect_suite,
    convolve,
    fit_gaussian_estimate,
    hankel_transform,
    heat_kernel_eval,
    heat_kernel_grid,
    hypergroup_character,
    make_fixture_function,
    oscillator_norm_constant,
    oscillator_profile,
    plancherel_norms,
    radial_grid,
    spectral_grid,
    translate,
    translation_rule,
)


def _report(num: int, ok: bool, detail: str) -> None:
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {detail}"
    print(line, file=sys.__stdout__, flush=True)
    print(line)
    assert ok, line


def test_criterion_01_orthonormal_basis():
    t0 = time.perf_counter()
    worst = 0.0
    for alpha in (0.0, 0.5, 1.0, 2.0):
        for lam in (0.5, 1.0, 2.0):
            grid = radial_grid(alpha, 14.0 / math.sqrt(max(lam, 0.25)),
                               n_panels=12, nodes_per_panel=18)
            profs = np.stack([
                oscillator_norm_constant(m, alpha, lam)
                * oscillator_profile(m, alpha, math.sqrt(lam) * grid.nodes)
                for m in range(21)
            ])
            gram = (profs * grid.radial_weights[None, :]) @ profs.T
            worst = max(worst, float(np.max(np.abs(gram - np.eye(21)))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-8 and dt < 30.0
    _report(1, ok, f"gram identity deviation {worst:.3e} <= 1e-08 ({dt:.1f}s < 30s)")


def test_criterion_02_hankel_eigenfunctions():
    t0 = time.perf_counter()
    ys = np.linspace(0.0, 8.0, 33)
    worst = 0.0
    for alpha in (0.0, 0.5, 1.0, 2.0):
        grid = radial_grid(alpha, 14.0, n_panels=14, nodes_per_panel=18)
        for m in range(11):
            got = hankel_transform(oscillator_profile(m, alpha, grid.nodes), ys, radial=grid)
            want = (-1.0) ** m * oscillator_profile(m, alpha, ys)
            worst = max(worst, float(np.max(np.abs(got - want)) / np.max(np.abs(want))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-6 and dt < 60.0
    _report(2, ok, f"(-1)^m eigen-relation rel error {worst:.3e} <= 1e-06 ({dt:.1f}s < 60s)")


def test_criterion_03_plancherel_three_fixtures():
    t0 = time.perf_counter()
    cfg = SuiteConfig()
    alpha = 0.0
    fixtures = {
        "heat": ("heat_kernel", spectral_grid(alpha, m_max=256, lambda_max=24.0)),
        "packet": ("psi_packet", spectral_grid(alpha, m_max=64, lambda_max=8.0)),
        "bump": ("bump", spectral_grid(alpha, m_max=384, lambda_max=48.0, n_panels=12)),
    }
    gaps = {}
    for label, (name, sg) in fixtures.items():
        f = make_fixture_function(name, alpha, cfg)
        a, b = plancherel_norms(f, sg)
        gaps[label] = abs(a - b) / a
    worst = max(gaps.values())
    dt = time.perf_counter() - t0
    ok = worst <= 1e-3 and dt < 120.0
    detail = ", ".join(f"{k} {v:.2e}" for k, v in gaps.items())
    _report(3, ok, f"norm gaps {detail}; worst <= 1e-03 ({dt:.1f}s < 120s)")


def test_criterion_04_multiplier_calibration():
    cals = [calibrate_heat(0.0, s=s) for s in (0.25, 0.5, 1.0)]
    raw = [c.kappa_raw for c in cals]
    dev = max(max(abs(r - 2.0) for r in raw), max(c.kappa_spread for c in cals))
    snapped = {c.kappa for c in cals}
    ok = snapped == {2.0} and dev <= 1e-3
    _report(4, ok,
            f"decay rate constant across (lam,m,s) to {dev:.2e} <= 1e-03, "
            f"snaps to kappa=2 (nominal convention states 1; both reported)")


def test_criterion_05_semigroup_convolution():
    t0 = time.perf_counter()
    worst = 0.0
    for alpha in (0.0, 1.0):
        radial = radial_grid(alpha, 7.5, n_panels=8, nodes_per_panel=12)
        tg = TimeGrid(13.0, 512)
        k1 = heat_kernel_grid(HeatParams(alpha=alpha, s=0.25), radial, tg)
        k2 = heat_kernel_grid(HeatParams(alpha=alpha, s=0.5), radial, tg)
        conv = convolve(k1, k2, stride=2)
        exact = heat_kernel_grid(HeatParams(alpha=alpha, s=0.75), conv.radial, conv.time)
        gap = float(np.max(np.abs(conv.values - exact.values)) / np.max(np.abs(exact.values)))
        worst = max(worst, gap)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-3 and dt < 180.0
    _report(5, ok, f"h_0.25 * h_0.5 vs h_0.75 sup rel gap {worst:.3e} <= 1e-03 ({dt:.1f}s < 180s)")


def test_criterion_06_parabolic_scaling():
    worst = 0.0
    pow2 = 0.0
    for alpha in (0.0, 1.0):
        xu = np.linspace(0.0, 6.0, 41)
        tu = np.linspace(0.0, 8.0, 41)
        base = heat_kernel_eval(alpha, 1.0, xu[:, None], tu[None, :])
        mask = base > 1e-6 * base.max()
        for s in (0.25, 4.0, 0.7):
            vals = heat_kernel_eval(alpha, s, (xu * math.sqrt(s))[:, None], (tu * s)[None, :])
            pred = s ** -(alpha + 2.0) * base
            dev = float(np.max(np.abs(vals - pred)[mask] / pred[mask]))
            worst = max(worst, dev)
            if s in (0.25, 4.0):
                pow2 = max(pow2, dev)
    ok = worst <= 1e-8 and pow2 == 0.0
    _report(6, ok, f"scaling collapse rel error {worst:.3e} <= 1e-08 "
                   f"(power-of-two times exactly {pow2:.1e})")


def test_criterion_07_gaussian_envelope():
    worst_ratio = 0.0
    violations = 0
    min_rate = math.inf
    neg = 0.0
    for alpha in (0.0, 1.0):
        fit = fit_gaussian_estimate(alpha)
        assert tuple(fit.s_values) == (0.25, 0.5, 1.0, 2.0)
        violations += fit.violations
        worst_ratio = max(worst_ratio, fit.max_ratio)
        min_rate = min(min_rate, fit.decay_rate)
        for s in fit.s_values:
            xs = np.linspace(0.0, fit.x_box * math.sqrt(s), 41)
            ts = np.linspace(0.0, fit.t_box * s, 21)
            vals = heat_kernel_eval(alpha, s, xs[:, None], ts[None, :])
            neg = min(neg, float(vals.min() / vals.max()))
    ok = min_rate > 0.0 and violations == 0 and worst_ratio <= 1.0 + 1e-9 and neg >= -1e-12
    _report(7, ok, f"envelope rate A {min_rate:.6f} > 0, violations {violations}, "
                   f"ratio max {worst_ratio:.6f} <= 1, kernel min/max {neg:.1e} >= -1e-12")


def test_criterion_08_translation_product_formula():
    alpha, lam = 0.5, 1.0
    radial = radial_grid(alpha, 4.0, n_panels=8, nodes_per_panel=24)
    tg = TimeGrid(8.0, 2048)
    rule = translation_rule(alpha)
    worst = 0.0
    for m in range(7):
        psi = GridFunction(
            radial, tg,
            hypergroup_character(alpha, lam, m, radial.nodes[:, None], tg.nodes[None, :]),
        )
        for (px, pt, qx, qt) in ((0.7, 0.3, 1.1, -0.4), (1.5, 0.0, 0.5, 1.0), (2.0, 2.0, 1.0, 0.5)):
            got = translate(psi, (px, pt), (qx, qt), rule)
            want = (hypergroup_character(alpha, lam, m, px, pt)
                    * hypergroup_character(alpha, lam, m, qx, qt))
            worst = max(worst, abs(got - want))
    ok = worst <= 1e-5
    _report(8, ok, f"character product-formula residual {worst:.3e} <= 1e-05 (sup norm 1)")


def test_criterion_09_laplacian_eigen_sign():
    worst = 0.0
    for alpha in (0.0, 0.5, 1.0):
        radial = radial_grid(alpha, 6.0, n_panels=12, nodes_per_panel=14)
        tg = TimeGrid(6.0, 768)
        X, T = radial.nodes[:, None], tg.nodes[None, :]
        for lam in (0.5, 1.0, 2.0):
            for m in (0, 1, 3, 6):
                psi = GridFunction(radial, tg, hypergroup_character(alpha, lam, m, X, T))
                out = apply_radial_laplacian(psi)
                eig = 2.0 * abs(lam) * (2 * m + alpha + 1.0)
                mask = (np.abs(psi.values) > 0.05) & (np.abs(radial.nodes[:, None]) < 4.8)
                ratio = np.median(np.real(out.values[mask] / psi.values[mask]))
                worst = max(worst, abs(ratio / eig + 1.0))
    ok = worst <= 1e-4
    _report(9, ok, f"single global sign sigma=-1 fits all modes, residual {worst:.3e} <= 1e-04 "
                   f"(conflicting '+' convention flagged in reports)")


@lru_cache(maxsize=1)
def _canonical_certificates():
    t0 = time.perf_counter()
    checks, certs = collect_suite("miyachi", SuiteConfig())
    return checks, certs, time.perf_counter() - t0


def test_criterion_10_miyachi_certificates():
    checks, certs, dt = _canonical_certificates()
    b30, b05, zero = certs["heat_b_030"], certs["heat_b_005"], certs["zero_b_030"]
    ok = (
        b30["hypothesis1"]["pass"]
        and b30["hypothesis2"]["divergent"]
        and b30["conclusion"] == "hypotheses_not_met"
        and not b05["hypothesis2"]["divergent"]
        and b05["conclusion"] == "inconclusive"
        and zero["conclusion"] == "must_vanish"
        and zero["residual_norm"] == 0.0
        and dt < 180.0
    )
    for rep in (b30, b05, zero):
        false_cert = (
            rep["hypothesis1"]["pass"]
            and not rep["hypothesis2"]["divergent"]
            and rep["product_ab"] > 0.25
            and rep["residual_norm"] > 1e-6
        )
        ok = ok and not false_cert
    _report(10, ok,
            f"b=0.3 ladder divergent -> {b30['conclusion']}, b=0.05 bounded -> "
            f"{b05['conclusion']}, zero -> {zero['conclusion']} (residual "
            f"{zero['residual_norm']:.1e}); no false certificate ({dt:.1f}s < 180s)")


def test_criterion_11_strip_bounds():
    checks, _, _ = _canonical_certificates()
    rows = {c.name: c for c in checks}
    inner = rows["miyachi.strip_interior_stable"]
    edge = rows["miyachi.strip_edge_blowup"]
    ok = inner.measured <= 10.0 and edge.measured > 10.0
    _report(11, ok,
            f"strip-interior constants stable (max growth {inner.measured:.3f} <= 10), "
            f"blow-up at the strip edge (min growth {edge.measured:.2f} > 10)")
