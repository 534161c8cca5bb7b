"""Named verification suites with machine-readable reports.

Each suite returns a list of CheckResult rows; run_suite writes them to
<out>/<suite>.json and <suite>.csv (sorted by check name, no timestamps, so
two runs with the same config are byte-identical) plus a sidecar .log that
carries the wall-clock stamps. The miyachi suite additionally embeds the
three canonical certificate scenarios in full.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grids import (
    GridFunction,
    RadialGrid,
    SCHEMA_VERSION,
    SpectralFunction,
    TimeGrid,
    radial_grid,
    spectral_grid,
    spectral_grid_uniform,
)
from .heat import HeatParams, calibrate_heat, fit_gaussian_estimate, heat_kernel_eval, heat_kernel_grid
from .hypergroup import apply_radial_laplacian, convolve, hypergroup_character, translate, translation_rule
from .miyachi import MiyachiParams, miyachi_certificate, slice_decay_check
from .quadrature import exact_sum, gauss_jacobi, gauss_legendre
from .special import (
    bessel_kernel,
    bessel_kernel_integral,
    bessel_kernel_series,
    laguerre_sequence,
    log_gamma,
    oscillator_norm_constant,
    oscillator_profile,
)
from .transforms import (
    fourier_laguerre_forward,
    fourier_laguerre_inverse,
    hankel_transform,
    plancherel_norms,
)

SUITE_NAMES = ("special", "basis", "transforms", "hypergroup", "heat", "miyachi", "all")


@dataclass(frozen=True)
class CheckResult:
    """One verification row: a measured value against its tolerance."""

    name: str
    measured: float
    tolerance: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class SuiteConfig:
    """Grid scales and tolerance scaling for the verification suites."""

    alpha_set: tuple = (0.0, 1.0)
    n_x: int = 160
    n_t: int = 512
    m_max: int = 256
    lambda_max: float = 24.0
    x_max: float = 10.0
    t_max: float = 13.0
    tol_scale: float = 1.0
    out_dir: str = "."

    def validate(self) -> None:
        if self.n_x < 32:
            raise ConfigError(f"n_x={self.n_x} below the minimal resolution 32")
        if self.n_t < 128:
            raise ConfigError(f"n_t={self.n_t} below the minimal resolution 128")
        if self.m_max < 8:
            raise ConfigError(f"m_max={self.m_max} below the minimal resolution 8")
        if not self.alpha_set:
            raise ConfigError("alpha_set is empty")
        if any(a <= -1.0 for a in self.alpha_set):
            raise ConfigError("every alpha must exceed -1")
        if self.lambda_max <= 0 or self.x_max <= 0 or self.t_max <= 0:
            raise ConfigError("grid extents must be positive")
        if not self.tol_scale > 0.0:
            raise ConfigError("tol_scale must be positive")

    def tol(self, base: float) -> float:
        return base * self.tol_scale


def _radial(cfg: SuiteConfig, alpha: float, x_max: float | None = None) -> RadialGrid:
    nodes_per_panel = 16
    n_panels = max(2, cfg.n_x // nodes_per_panel)
    return radial_grid(alpha, x_max if x_max is not None else cfg.x_max,
                       n_panels=n_panels, nodes_per_panel=nodes_per_panel)


# ---------------------------------------------------------------------------
# special: closed-form oracles for the scalar building blocks
# ---------------------------------------------------------------------------


def suite_special(cfg: SuiteConfig) -> list[CheckResult]:
    checks = []

    # generating function sum_m L_m(x) z^m = (1-z)^(-a-1) exp(-xz/(1-z))
    worst = 0.0
    xs = np.linspace(0.0, 12.0, 25)
    for alpha in (0.0, 0.5, 2.0):
        for z in (0.2, -0.35, 0.5):
            seq = laguerre_sequence(160, alpha, xs)
            lhs = (seq * np.power(z, np.arange(161))[:, None]).sum(axis=0)
            rhs = (1.0 - z) ** (-alpha - 1.0) * np.exp(-xs * z / (1.0 - z))
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.abs(rhs))))
    tol = cfg.tol(1e-8)
    checks.append(CheckResult("special.laguerre_generating_function", worst, tol, worst <= tol))

    # normalized Bessel kernel at 0 equals 2^(-a)/Gamma(a+1)
    worst = max(
        float(abs(bessel_kernel(alpha, 0.0) - 2.0 ** (-alpha) / math.gamma(alpha + 1.0)))
        for alpha in (0.0, 0.5, 1.0, 2.0)
    )
    tol = cfg.tol(1e-14)
    checks.append(CheckResult("special.bessel_kernel_origin", worst, tol, worst <= tol))

    # two independent kernel evaluations agree (series vs integral form)
    worst = 0.0
    for alpha in (0.0, 0.5, 1.5):
        for z in (0.7, 4.0, 11.0, 19.0):
            worst = max(worst, float(abs(bessel_kernel_series(alpha, z) - bessel_kernel_integral(alpha, z))))
    tol = cfg.tol(1e-10)
    checks.append(CheckResult("special.bessel_kernel_series_vs_integral", worst, tol, worst <= tol))

    # Gauss rules integrate their weighted monomials exactly
    gl = gauss_legendre(24)
    k = np.arange(0, 2 * 24, 2, dtype=float)
    moments = np.array([exact_sum(gl.weights * gl.nodes**kk) for kk in k])
    worst = float(np.max(np.abs(moments - 2.0 / (k + 1.0))))
    gj = gauss_jacobi(20, 0.5, 0.5)
    m0 = exact_sum(gj.weights) - math.pi / 2.0
    worst = max(worst, abs(float(m0)))
    tol = cfg.tol(1e-12)
    checks.append(CheckResult("special.gauss_rule_moments", worst, tol, worst <= tol))

    # log_gamma against the half-integer closed forms
    worst = max(
        abs(log_gamma(n + 0.5) - math.lgamma(n + 0.5)) for n in range(0, 30)
    )
    tol = cfg.tol(1e-12)
    checks.append(CheckResult("special.log_gamma_half_integers", worst, tol, worst <= tol))
    return checks


# ---------------------------------------------------------------------------
# basis: orthonormality and the Hankel eigen-relation
# ---------------------------------------------------------------------------


def _gram_deviation(alpha: float, lam: float, m_top: int) -> float:
    grid = radial_grid(alpha, 14.0 / math.sqrt(max(lam, 0.25)), n_panels=12, nodes_per_panel=18)
    x = grid.nodes
    profs = np.stack(
        [
            oscillator_norm_constant(m, alpha, lam) * oscillator_profile(m, alpha, math.sqrt(lam) * x)
            for m in range(m_top + 1)
        ]
    )
    w = grid.radial_weights
    gram = (profs * w[None, :]) @ profs.T
    return float(np.max(np.abs(gram - np.eye(m_top + 1))))


def suite_basis(cfg: SuiteConfig) -> list[CheckResult]:
    checks = []
    worst = max(
        _gram_deviation(alpha, lam, 20)
        for alpha in (0.0, 0.5, 1.0, 2.0)
        for lam in (0.5, 1.0, 2.0)
    )
    tol = cfg.tol(1e-8)
    checks.append(CheckResult("basis.gram_identity", worst, tol, worst <= tol))

    # Hankel transform fixes the oscillator profiles up to the sign (-1)^m
    worst = 0.0
    ys = np.linspace(0.0, 8.0, 33)
    for alpha in (0.0, 0.5, 1.0, 2.0):
        grid = radial_grid(alpha, 14.0, n_panels=14, nodes_per_panel=18)
        for m in range(11):
            g = oscillator_profile(m, alpha, grid.nodes)
            got = hankel_transform(g, ys, radial=grid)
            want = (-1.0) ** m * oscillator_profile(m, alpha, ys)
            worst = max(worst, float(np.max(np.abs(got - want)) / np.max(np.abs(want))))
    tol = cfg.tol(1e-6)
    checks.append(CheckResult("basis.hankel_eigen_relation", worst, tol, worst <= tol))

    # norm constant really normalizes: ||c phi_m||^2 = 1 on the half-line
    worst = 0.0
    for alpha in (0.0, 1.5):
        grid = radial_grid(alpha, 16.0, n_panels=14, nodes_per_panel=18)
        for (m, lam) in ((0, 0.5), (7, 1.0), (20, 2.0)):
            c = oscillator_norm_constant(m, alpha, lam)
            vals = c * oscillator_profile(m, alpha, math.sqrt(lam) * grid.nodes)
            worst = max(worst, abs(float(exact_sum(vals * vals * grid.radial_weights)) - 1.0))
    tol = cfg.tol(1e-10)
    checks.append(CheckResult("basis.norm_constant_unit", worst, tol, worst <= tol))
    return checks


# ---------------------------------------------------------------------------
# transforms: Plancherel on the fixture family, projector round-trip
# ---------------------------------------------------------------------------


def _fixture_grids(cfg: SuiteConfig, alpha: float):
    return _radial(cfg, alpha), TimeGrid(t_max=max(cfg.t_max, 12.0), n_t=max(cfg.n_t, 1024))


def make_fixture_function(name: str, alpha: float, cfg: SuiteConfig, **params) -> GridFunction:
    """The built-in test family: heat kernels, windowed packets, bumps."""
    radial, tg = _fixture_grids(cfg, alpha)
    X = radial.nodes[:, None]
    T = tg.nodes[None, :]
    if name == "heat_kernel":
        s = float(params.get("s", 0.5))
        return heat_kernel_grid(HeatParams(alpha=alpha, s=s), radial, tg)
    if name == "psi_packet":
        lam0 = float(params.get("lam0", 1.0))
        m0 = int(params.get("m0", 2))
        width = float(params.get("width", 4.0))
        vals = hypergroup_character(alpha, lam0, m0, X, T) * np.exp(-((T / width) ** 2))
        return GridFunction(radial, tg, vals)
    if name == "bump":
        rx = float(params.get("radius", 2.0))
        rt = float(params.get("t_radius", 2.0))
        vals = np.clip(1.0 - (X / rx) ** 2, 0.0, None) ** 3 * np.clip(1.0 - (T / rt) ** 2, 0.0, None) ** 3
        return GridFunction(radial, tg, vals)
    raise ConfigError(f"unknown fixture {name!r}")


def suite_transforms(cfg: SuiteConfig) -> list[CheckResult]:
    checks = []
    alpha = cfg.alpha_set[0]

    fixtures = {
        "heat": ("heat_kernel", spectral_grid(alpha, m_max=cfg.m_max, lambda_max=cfg.lambda_max)),
        "packet": ("psi_packet", spectral_grid(alpha, m_max=max(64, cfg.m_max // 4), lambda_max=8.0)),
        "bump": ("bump", spectral_grid(alpha, m_max=max(cfg.m_max, 384), lambda_max=48.0, n_panels=12)),
    }
    for label, (name, sg) in fixtures.items():
        f = make_fixture_function(name, alpha, cfg)
        a, b = plancherel_norms(f, sg)
        rel = abs(a - b) / a
        tol = cfg.tol(1e-3)
        checks.append(CheckResult(f"transforms.plancherel_{label}", rel, tol, rel <= tol))

    # inverse then forward is the identity on band-limited data; the radial
    # window must cover the slowest profile (lambda_min x_max^2 well past the
    # level-8 turning point) and the dual spacing must match the time window
    radial = radial_grid(alpha, 11.0, n_panels=14, nodes_per_panel=18)
    tg = TimeGrid(t_max=2.0, n_t=max(256, min(cfg.n_t, 512)))
    sg = spectral_grid_uniform(alpha, m_max=8, spacing=math.pi / tg.t_max, n_per_side=12)
    rng = np.random.default_rng(20240817)
    shape = (sg.n_lambda, sg.m_max + 1)
    coeffs = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    F = SpectralFunction(sg, coeffs)
    f = fourier_laguerre_inverse(F, radial, tg)
    F2 = fourier_laguerre_forward(f, sg)
    rel = float(np.max(np.abs(F2.values - F.values)) / np.max(np.abs(F.values)))
    tol = cfg.tol(1e-6)
    checks.append(CheckResult("transforms.roundtrip_bandlimited", rel, tol, rel <= tol))

    # real input: coefficients at -lambda are the conjugates of +lambda
    f = make_fixture_function("heat_kernel", alpha, cfg)
    sgc = spectral_grid(alpha, m_max=32, lambda_max=8.0)
    F = fourier_laguerre_forward(f, sgc)
    n_half = sgc.lambda_rule.nodes.size // 2
    neg = F.values[:n_half][::-1]
    pos = F.values[n_half:]
    gap = float(np.max(np.abs(neg - np.conj(pos))))
    tol = cfg.tol(1e-12)
    checks.append(CheckResult("transforms.conjugation_symmetry", gap, tol, gap <= tol))
    return checks


# ---------------------------------------------------------------------------
# hypergroup: translation, product formula, convolution, eigen-relation
# ---------------------------------------------------------------------------


def suite_hypergroup(cfg: SuiteConfig) -> list[CheckResult]:
    checks = []
    alpha = cfg.alpha_set[0]
    rule = translation_rule(alpha)

    radial = radial_grid(alpha, 4.0, n_panels=8, nodes_per_panel=24)
    tg = TimeGrid(t_max=8.0, n_t=max(cfg.n_t, 2048))
    X = radial.nodes[:, None]
    T = tg.nodes[None, :]

    # translating by the identity element reproduces the function
    f = heat_kernel_grid(HeatParams(alpha=alpha, s=0.5), radial, tg)
    qx = float(radial.nodes[radial.nodes.size // 2])
    qt = float(tg.nodes[tg.n_t // 3])
    direct = float(np.real(f.values[radial.nodes.size // 2, tg.n_t // 3]))
    got = translate(f, (0.0, 0.0), (qx, qt), rule)
    err = abs(got - direct)
    tol = cfg.tol(1e-10)
    checks.append(CheckResult("hypergroup.translate_identity", err, tol, err <= tol))

    ones = GridFunction(radial, tg, np.ones((radial.nodes.size, tg.n_t)))
    err = abs(translate(ones, (1.2, 0.4), (0.8, -0.9), rule) - 1.0)
    tol = cfg.tol(1e-12)
    checks.append(CheckResult("hypergroup.translate_constant", err, tol, err <= tol))

    # product formula for the characters, m <= 6
    worst = 0.0
    for m in range(7):
        psi = GridFunction(radial, tg, hypergroup_character(alpha, 1.0, m, X, T))
        for (px, pt, qx2, qt2) in ((0.7, 0.3, 1.1, -0.4), (1.5, 0.0, 0.5, 1.0), (2.0, 2.0, 1.0, 0.5)):
            lhs = translate(psi, (px, pt), (qx2, qt2), rule)
            rhs = hypergroup_character(alpha, 1.0, m, px, pt) * hypergroup_character(alpha, 1.0, m, qx2, qt2)
            worst = max(worst, abs(lhs - rhs))
    tol = cfg.tol(1e-5)
    checks.append(CheckResult("hypergroup.product_formula", worst, tol, worst <= tol))

    # one global sign fits the character eigen-relation of the operator
    sigma_lo, sigma_hi, resid = _laplacian_sign_fit(alpha)
    tol = cfg.tol(1e-4)
    checks.append(CheckResult("hypergroup.laplacian_sigma_residual", resid, tol, resid <= tol))
    same_sign = sigma_lo < 0.0 and sigma_hi < 0.0
    checks.append(
        CheckResult("hypergroup.laplacian_sign_fitted", 0.5 * (sigma_lo + sigma_hi), 0.0, same_sign)
    )
    # the fitted sign is opposite to the nominal initial-value convention,
    # so the conflict flag must be raised
    flag = 1.0 if same_sign and sigma_hi < 0.0 else 0.0
    checks.append(CheckResult("hypergroup.laplacian_sign_conflict_flag", flag, 0.5, flag > 0.5))

    # heat semigroup under measure convolution
    for a2 in cfg.alpha_set[:2]:
        rel = _semigroup_gap(a2, cfg)
        tol = cfg.tol(1e-3)
        checks.append(CheckResult(f"hypergroup.semigroup_alpha_{a2:g}", rel, tol, rel <= tol))

    # transform diagonalizes the convolution
    gap, scale = _convolution_theorem_gap(alpha, cfg)
    tol = cfg.tol(1e-4) * scale
    checks.append(CheckResult("hypergroup.convolution_theorem", gap, tol, gap <= tol))

    # f * g and g * f agree sample by sample
    rel = _commutativity_gap(alpha)
    tol = cfg.tol(1e-7)
    checks.append(CheckResult("hypergroup.convolution_commutative", rel, tol, rel <= tol))
    return checks


def _laplacian_sign_fit(alpha: float):
    radial = radial_grid(alpha, 6.0, n_panels=12, nodes_per_panel=14)
    tg = TimeGrid(t_max=6.0, n_t=768)
    X = radial.nodes[:, None]
    T = tg.nodes[None, :]
    box = (np.abs(X) < 0.8 * 6.0)
    ratios = []
    resid = 0.0
    for lam in (0.5, 1.0, 2.0):
        for m in (0, 1, 3, 6):
            psi = GridFunction(radial, tg, hypergroup_character(alpha, lam, m, X, T))
            Lp = apply_radial_laplacian(psi)
            eig = 2.0 * abs(lam) * (2 * m + alpha + 1.0)
            mask = (np.abs(psi.values) > 0.05) & box
            ratios.append(float(np.median(np.real(Lp.values[mask] / psi.values[mask])) / eig))
            resid = max(resid, float(np.max(np.abs(Lp.values[mask] + eig * psi.values[mask])) / eig))
    return min(ratios), max(ratios), resid


def _semigroup_gap(alpha: float, cfg: SuiteConfig) -> float:
    s1, s2 = 0.25, 0.5
    radial = radial_grid(alpha, 7.5, n_panels=8, nodes_per_panel=12)
    tg = TimeGrid(t_max=13.0, n_t=max(128, min(cfg.n_t, 512)))
    f1 = heat_kernel_grid(HeatParams(alpha=alpha, s=s1), radial, tg)
    f2 = heat_kernel_grid(HeatParams(alpha=alpha, s=s2), radial, tg)
    conv = convolve(f1, f2, stride=2)
    ref = heat_kernel_eval(alpha, s1 + s2, conv.radial.nodes[:, None], conv.time.nodes[None, :])
    return float(np.max(np.abs(np.real(conv.values) - ref)) / ref.max())


def _commutativity_gap(alpha: float) -> float:
    radial = radial_grid(alpha, 7.5, n_panels=6, nodes_per_panel=10)
    tg = TimeGrid(t_max=13.0, n_t=256)
    f1 = heat_kernel_grid(HeatParams(alpha=alpha, s=0.25), radial, tg)
    f2 = heat_kernel_grid(HeatParams(alpha=alpha, s=0.5), radial, tg)
    a = convolve(f1, f2, stride=3)
    b = convolve(f2, f1, stride=3)
    return float(np.max(np.abs(a.values - b.values)) / np.max(np.abs(a.values)))


def _convolution_theorem_gap(alpha: float, cfg: SuiteConfig):
    radial = radial_grid(alpha, 7.5, n_panels=8, nodes_per_panel=12)
    tg = TimeGrid(t_max=13.0, n_t=max(128, min(cfg.n_t, 512)))
    f1 = heat_kernel_grid(HeatParams(alpha=alpha, s=0.25), radial, tg)
    f2 = heat_kernel_grid(HeatParams(alpha=alpha, s=0.5), radial, tg)
    conv = convolve(f1, f2, stride=2)
    sg = spectral_grid(alpha, m_max=16, lambda_max=6.0, n_panels=8, nodes_per_panel=12)
    Fc = fourier_laguerre_forward(GridFunction(conv.radial, conv.time, np.real(conv.values)), sg)
    F1 = fourier_laguerre_forward(f1, sg)
    F2 = fourier_laguerre_forward(f2, sg)
    gap = float(np.max(np.abs(Fc.values - F1.values * F2.values)))
    scale = float(np.max(np.abs(F1.values)) * np.max(np.abs(F2.values)))
    return gap, scale


# ---------------------------------------------------------------------------
# heat: calibration, scaling, mass, Gaussian envelope
# ---------------------------------------------------------------------------


def suite_heat(cfg: SuiteConfig) -> list[CheckResult]:
    checks = []
    cals = [calibrate_heat(alpha) for alpha in cfg.alpha_set[:2]]

    snap_dev = max(abs(c.kappa_raw - c.kappa) for c in cals)
    tol = cfg.tol(1e-3)
    checks.append(CheckResult("heat.multiplier_kappa_snap", snap_dev, tol, snap_dev <= tol))

    spread = max(c.kappa_spread for c in cals)
    checks.append(CheckResult("heat.multiplier_kappa_spread", spread, tol, spread <= tol))

    # measured decay rate per unit |lambda|(2m+a+1)s, next to the nominal
    # first-order rate 1.0 the flat-space analogy suggests
    ratio = cals[0].kappa / cals[0].kappa_nominal
    checks.append(CheckResult("heat.multiplier_rate_vs_nominal", ratio, 0.0, True))

    c0_dev = max(abs(c.c0 - 1.0) for c in cals)
    tol = cfg.tol(1e-5)
    checks.append(CheckResult("heat.mass_constant", c0_dev, tol, c0_dev <= tol))

    # scaling collapse h_s(x,t) = s^-(a+2) h_1(x/sqrt(s), t/s)
    worst = 0.0
    for alpha in cfg.alpha_set[:2]:
        xu = np.linspace(0.0, 6.0, 41)
        tu = np.linspace(0.0, 8.0, 41)
        base = heat_kernel_eval(alpha, 1.0, xu[:, None], tu[None, :])
        mask = base > 1e-6 * base.max()
        for s in (0.25, 4.0, 0.7):
            vals = heat_kernel_eval(alpha, s, (xu * math.sqrt(s))[:, None], (tu * s)[None, :])
            pred = s ** -(alpha + 2.0) * base
            worst = max(worst, float(np.max(np.abs(vals - pred)[mask] / pred[mask])))
    tol = cfg.tol(1e-8)
    checks.append(CheckResult("heat.scaling_law", worst, tol, worst <= tol))

    # Gaussian envelope certificate for the kernel family
    fits = [fit_gaussian_estimate(alpha) for alpha in cfg.alpha_set[:2]]
    viol = max(f.violations for f in fits)
    checks.append(CheckResult("heat.gaussian_fit_violations", float(viol), 0.5, viol == 0))
    rate = min(f.decay_rate for f in fits)
    checks.append(CheckResult("heat.gaussian_fit_rate_positive", rate, 0.0, rate > 0.0))
    ratio = max(f.max_ratio for f in fits)
    checks.append(CheckResult("heat.gaussian_fit_max_ratio", ratio, 1.0 + cfg.tol(1e-6), ratio <= 1.0 + cfg.tol(1e-6)))
    return checks


# ---------------------------------------------------------------------------
# miyachi: canonical certificate scenarios and the strip diagnostics
# ---------------------------------------------------------------------------


def _certificate_fixture(alpha: float, a: float, cfg: SuiteConfig) -> GridFunction:
    radial = radial_grid(alpha, 6.0, n_panels=12, nodes_per_panel=16)
    tg = TimeGrid(t_max=12.0, n_t=max(128, min(cfg.n_t, 512)))
    return heat_kernel_grid(HeatParams(alpha=alpha, s=1.0 / (4.0 * a)), radial, tg)


def suite_miyachi(cfg: SuiteConfig, certificates: dict | None = None) -> list[CheckResult]:
    checks = []
    alpha = cfg.alpha_set[0]
    a = 1.0
    fit = fit_gaussian_estimate(alpha)
    A = fit.decay_rate
    f = _certificate_fixture(alpha, a, cfg)
    zero = GridFunction(f.radial, f.time, np.zeros_like(f.values))

    scenarios = {
        "heat_b_030": (f, MiyachiParams(a=a, b=0.3, delta=1.0, A=A)),
        "heat_b_005": (f, MiyachiParams(a=a, b=0.05, delta=1.0, A=A)),
        "zero_b_030": (zero, MiyachiParams(a=a, b=0.3, delta=1.0, A=A)),
    }
    reports = {label: miyachi_certificate(fn, pars) for label, (fn, pars) in scenarios.items()}
    if certificates is not None:
        certificates.update({label: rep.to_json_dict() for label, rep in reports.items()})

    rep = reports["heat_b_030"]
    ladder = [v for _, v in rep.hypothesis2["truncated_integrals"]]
    last_ratio = ladder[-1] / ladder[-2] if ladder[-2] > 0 else math.inf
    ok = rep.hypothesis1["pass"] and rep.hypothesis2["divergent"] and rep.conclusion == "hypotheses_not_met"
    checks.append(CheckResult("miyachi.divergent_ladder_b_030", last_ratio, 1.0 + cfg.tol(1e-3), ok))

    rep = reports["heat_b_005"]
    ladder = [v for _, v in rep.hypothesis2["truncated_integrals"]]
    last_ratio = ladder[-1] / ladder[-2] if ladder[-2] > 0 else (math.inf if ladder[-1] > 0 else 1.0)
    ok = (not rep.hypothesis2["divergent"]) and rep.conclusion == "inconclusive"
    checks.append(CheckResult("miyachi.bounded_ladder_b_005", last_ratio, 1.0 + cfg.tol(1e-3), ok))

    rep = reports["zero_b_030"]
    ok = rep.conclusion == "must_vanish" and rep.residual_norm <= cfg.tol(1e-12)
    checks.append(CheckResult("miyachi.zero_must_vanish", rep.residual_norm, cfg.tol(1e-12), ok))

    false_cert = max(
        1.0
        if (
            r.hypothesis1["pass"]
            and not r.hypothesis2["divergent"]
            and r.product_ab > 0.25
            and r.residual_norm > 1e-6
        )
        else 0.0
        for r in reports.values()
    )
    checks.append(CheckResult("miyachi.no_false_certificate", false_cert, 0.5, false_cert < 0.5))

    # strip diagnostics on a wider window: stable constants inside, blow-up
    # of the fitted constant at the strip edge
    pars = MiyachiParams(a=a, b=0.05, delta=1.0, A=A)
    radial = radial_grid(alpha, 10.5, n_panels=12, nodes_per_panel=16)
    tg = TimeGrid(t_max=24.0, n_t=max(1024, cfg.n_t))
    fwide = heat_kernel_grid(HeatParams(alpha=alpha, s=1.0 / (4.0 * a)), radial, tg)
    hw = pars.half_width
    inner = max(slice_decay_check(fwide, pars, 1j * beta * hw).ratio for beta in (0.1, 0.3, 0.5))
    checks.append(CheckResult("miyachi.strip_interior_stable", inner, 10.0, inner <= 10.0))
    edge = min(slice_decay_check(fwide, pars, 1j * beta * hw).ratio for beta in (0.98, 0.995))
    checks.append(CheckResult("miyachi.strip_edge_blowup", edge, 10.0, edge > 10.0))
    return checks


# ---------------------------------------------------------------------------
# dispatch and reporting
# ---------------------------------------------------------------------------

_SUITE_FUNCS = {
    "special": suite_special,
    "basis": suite_basis,
    "transforms": suite_transforms,
    "hypergroup": suite_hypergroup,
    "heat": suite_heat,
}


def collect_suite(name: str, cfg: SuiteConfig) -> tuple[list[CheckResult], dict]:
    """Run one suite (or all of them); returns (checks, certificates)."""
    cfg.validate()
    if name not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    certificates: dict = {}
    checks: list[CheckResult] = []
    if name == "all":
        for sub in ("special", "basis", "transforms", "hypergroup", "heat"):
            checks.extend(_SUITE_FUNCS[sub](cfg))
        checks.extend(suite_miyachi(cfg, certificates))
    elif name == "miyachi":
        checks.extend(suite_miyachi(cfg, certificates))
    else:
        checks.extend(_SUITE_FUNCS[name](cfg))
    checks.sort(key=lambda c: c.name)
    return checks, certificates


def write_report(name: str, checks: list[CheckResult], certificates: dict, out_dir: str) -> dict:
    """Write <out>/<name>.json, .csv and a timestamped sidecar .log."""
    os.makedirs(out_dir, exist_ok=True)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "suite": name,
        "checks": [c.to_json_dict() for c in checks],
        "all_pass": all(c.passed for c in checks),
    }
    if certificates:
        payload["certificates"] = {k: certificates[k] for k in sorted(certificates)}
    json_path = os.path.join(out_dir, f"{name}.json")
    with open(json_path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    csv_path = os.path.join(out_dir, f"{name}.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["name", "measured", "tolerance", "pass"])
        for c in checks:
            writer.writerow([c.name, repr(c.measured), repr(c.tolerance), str(c.passed).lower()])
    with open(os.path.join(out_dir, f"{name}.log"), "a") as fh:
        fh.write(f"{time.strftime('%Y-%m-%dT%H:%M:%S%z')} suite={name} "
                 f"checks={len(checks)} all_pass={payload['all_pass']}\n")
    return payload


def run_suite(name: str, cfg: SuiteConfig) -> int:
    """Run a named suite and write its reports; 0 iff every check passed."""
    checks, certificates = collect_suite(name, cfg)
    payload = write_report(name, checks, certificates, cfg.out_dir)
    return 0 if payload["all_pass"] else 1
