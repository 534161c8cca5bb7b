"""Hypergroup structure maps on the half-plane: translation and convolution.

The generalized translation averages a function over a circle (order zero)
or a weighted disk (positive order):

  (T_{(x,t)} f)(y, s) =
    c int f(sqrt(x^2 + y^2 + 2 x y r cos h), s + t + x y r sin h) dk(r, h)

where dk is the probability measure r (1-r^2)^(a-1) dr dh / normalization on
[0,1] x [0,2pi) (the unit circle r = 1 when a = 0). Convolution pairs the
translate against the measure; the characters turn it into a pointwise
product, which is what the verification suites check.

convolve() does not form translates pointwise (that would cost
O(n_x^2 n_t^2) samples). It trig-interpolates the left factor on the time
lattice, integrates the disk's sin-component analytically (a Bessel kernel
of order a - 1/2 appears in closed form), and reduces each time frequency
to a one-dimensional integral in the cos-component handled by Gauss-Jacobi
nodes whose count tracks the oscillation scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, GridRangeError, TruncationError
from .grids import GridFunction, RadialGrid, TimeGrid
from .quadrature import QuadratureRule, composite_legendre, exact_sum, gauss_jacobi
from .special import bessel_kernel, bessel_kernel_series, damped_laguerre_sequence


class PointK(NamedTuple):
    """A point of the half-plane: radial part x >= 0 and central part t."""

    x: float
    t: float


def _as_point(p) -> PointK:
    q = PointK(float(p[0]), float(p[1]))
    if not (q.x >= 0.0 and math.isfinite(q.x) and math.isfinite(q.t)):
        raise DomainError(f"point must have finite coordinates with x >= 0, got {p!r}")
    return q


def hypergroup_character(alpha: float, lam: float, m: int, x, t):
    """Bounded character e^{i lam t} e^{-u/2} L_m(u)/L_m(0), u = |lam| x^2.

    Multiplicative for the generalized translation: translating a character
    and evaluating anywhere factors into the product of its values at the
    two points. Broadcasts over x and t; value at the origin is exactly 1.
    """
    if alpha <= -1.0:
        raise DomainError("order must exceed -1")
    if m < 0:
        raise DomainError("level must be nonnegative")
    lam = float(lam)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    u, tb = np.broadcast_arrays(abs(lam) * x * x, t)
    flat = np.ascontiguousarray(u, dtype=float).ravel()
    prof = damped_laguerre_sequence(m, alpha, flat)[m]
    out = (prof * np.exp(1j * lam * tb.ravel())).reshape(u.shape)
    return complex(out[()]) if out.shape == () else out


# ---------------------------------------------------------------------------
# translation


@dataclass(frozen=True)
class TranslationRule:
    """Product quadrature for the translation average.

    theta_rule: uniform angles on [0, 2pi) with equal probability weights.
    r_rule: radial nodes on (0, 1) with probability weights matching
    2a r (1-r^2)^(a-1) dr; None when alpha == 0 (the average lives on the
    circle r = 1). Both weight sets sum to 1, so translating the constant
    function returns exactly 1.
    """

    alpha: float
    theta_rule: QuadratureRule
    r_rule: QuadratureRule | None

    def __post_init__(self):
        if self.alpha < 0.0:
            raise DomainError("translation needs alpha >= 0")
        if (self.r_rule is None) != (self.alpha == 0.0):
            raise DomainError("r_rule must be present exactly when alpha > 0")


def translation_rule(alpha: float, n_theta: int = 96, n_r: int = 32) -> TranslationRule:
    """Build the translation quadrature.

    n_theta controls the angular resolution (the uniform rule is spectrally
    accurate for periodic integrands; harmonics up to ~n_theta are exact).
    n_r controls the Gauss rule in u = r^2 for the disk weight (1-u)^(a-1).
    """
    if alpha < 0.0:
        raise DomainError("translation needs alpha >= 0")
    if n_theta < 4:
        raise DomainError("need at least 4 angles")
    theta = QuadratureRule(
        "trapezoid",
        np.arange(n_theta) * (2.0 * math.pi / n_theta),
        np.full(n_theta, 1.0 / n_theta),
        meta={"periodic": True},
    )
    if alpha == 0.0:
        return TranslationRule(alpha, theta, None)
    if n_r < 2:
        raise DomainError("need at least 2 radial nodes")
    gj = gauss_jacobi(n_r, alpha - 1.0, 0.0)
    r = np.sqrt(0.5 * (gj.nodes + 1.0))
    w = gj.weights / exact_sum(gj.weights)
    r_rule = QuadratureRule("jacobi", r, w, meta={"a": alpha - 1.0, "b": 0.0, "variable": "r"})
    return TranslationRule(alpha, theta, r_rule)


def _domain_end(radial: RadialGrid) -> float:
    edges = radial.rule.meta.get("edges")
    if edges is not None:
        return float(np.asarray(edges)[-1])
    return float(radial.rule.nodes[-1])


def _window_coeffs(nodes: np.ndarray, targets: np.ndarray):
    """4-node sliding Lagrange windows: (indices, coefficients), both (N, 4).

    Exact whenever a target coincides with a node, so resampling at grid
    points reproduces the stored values to roundoff.
    """
    j = np.searchsorted(nodes, targets)
    lo = np.clip(j - 2, 0, nodes.size - 4)
    idx = lo[:, None] + np.arange(4)[None, :]
    xs = nodes[idx]
    coef = np.ones_like(xs)
    for a in range(4):
        for b in range(4):
            if a != b:
                coef[:, a] *= (targets - xs[:, b]) / (xs[:, a] - xs[:, b])
    return idx, coef


def _sample_grid_function(f: GridFunction, R, S, support_tol: float) -> np.ndarray:
    """Tensor-cubic samples of f at radial targets R, time targets S.

    Targets beyond the grid are taken as 0 provided the stored values are
    negligible (support_tol relative) on the corresponding boundary band;
    otherwise the grid genuinely cannot represent the request and
    GridRangeError is raised.
    """
    xs = f.radial.nodes
    ts = f.time.nodes
    if xs.size < 4 or ts.size < 4:
        raise DomainError("sampling needs at least 4 nodes per direction")
    R = np.asarray(R, dtype=float)
    S = np.asarray(S, dtype=float)
    x_end = _domain_end(f.radial)
    pad = 1e-12 * max(1.0, x_end, f.time.t_max)
    ok_x = R <= x_end + pad
    ok_t = (S >= ts[0] - pad) & (S <= ts[-1] + pad)
    peak = f.max_abs()
    if peak > 0.0:
        if not ok_x.all():
            edge = float(np.abs(f.values[-1, :]).max())
            if edge > support_tol * peak:
                raise GridRangeError(
                    f"translation samples beyond x_max={x_end:g} but the outer radial "
                    f"band holds {edge / peak:.2e} of the peak; enlarge the radial window"
                )
        if not ok_t.all():
            edge = float(np.abs(f.values[:, [0, -1]]).max())
            if edge > support_tol * peak:
                raise GridRangeError(
                    f"translation samples beyond |t|={f.time.t_max:g} but the time "
                    f"boundary holds {edge / peak:.2e} of the peak; enlarge the time window"
                )
    out = np.zeros(R.shape, dtype=complex)
    ok = ok_x & ok_t
    if ok.any():
        ix, cx = _window_coeffs(xs, R[ok])
        it, ct = _window_coeffs(ts, S[ok])
        vals = f.values[ix[:, :, None], it[:, None, :]]
        out[ok] = np.einsum("na,nb,nab->n", cx, ct, vals)
    return out


def translate(f: GridFunction, p, q, rule: TranslationRule, support_tol: float = 1e-9) -> complex:
    """Generalized translation (T_p f)(q), evaluated pointwise.

    Averages tensor-cubic samples of f over the translation quadrature.
    Translating by the origin reproduces f at q up to interpolation
    roundoff, and translating the constant 1 gives exactly 1.
    """
    if rule.alpha != f.radial.alpha:
        raise DomainError("translation rule and function carry different alpha")
    p = _as_point(p)
    q = _as_point(q)
    theta = rule.theta_rule.nodes
    w_theta = rule.theta_rule.weights
    if rule.r_rule is None:
        r = np.array([1.0])
        w_r = np.array([1.0])
    else:
        r = rule.r_rule.nodes
        w_r = rule.r_rule.weights
    rc = r[None, :] * np.cos(theta)[:, None]
    rs = r[None, :] * np.sin(theta)[:, None]
    R = np.sqrt(np.maximum(p.x * p.x + q.x * q.x + 2.0 * p.x * q.x * rc, 0.0))
    S = p.t + q.t + p.x * q.x * rs
    w = w_theta[:, None] * w_r[None, :]
    vals = _sample_grid_function(f, R.ravel(), S.ravel(), support_tol)
    return complex(exact_sum(w.ravel() * vals))


# ---------------------------------------------------------------------------
# convolution


def _panel_bary_weights(rule: QuadratureRule, npp: int) -> np.ndarray:
    """Barycentric weights per composite panel, normalized per panel."""
    nodes = rule.nodes.reshape(-1, npp)
    bw = np.empty_like(nodes)
    for p in range(nodes.shape[0]):
        xs = nodes[p]
        diff = xs[:, None] - xs[None, :]
        np.fill_diagonal(diff, 1.0)
        bw[p] = 1.0 / diff.prod(axis=1)
        bw[p] /= np.abs(bw[p]).max()
    return bw


def _panel_interp(rule: QuadratureRule, targets: np.ndarray):
    """Barycentric interpolation structure on a composite Gauss rule.

    Returns (idx, coef, valid): idx/coef are (N, nodes_per_panel) gather
    indices and weights; valid marks targets inside [0, x_end] (others must
    be zero-filled by the caller).
    """
    edges = rule.meta.get("edges")
    if edges is None:
        raise DomainError("convolution needs composite-panel radial rules")
    edges = np.asarray(edges, dtype=float)
    npp = int(rule.meta["nodes_per_panel"])
    x_end = edges[-1]
    valid = targets <= x_end * (1.0 + 1e-12)
    p = np.clip(np.searchsorted(edges, targets, side="right") - 1, 0, edges.size - 2)
    idx = p[:, None] * npp + np.arange(npp)[None, :]
    xs = rule.nodes[idx]
    bw = _panel_bary_weights(rule, npp)[p]
    d = targets[:, None] - xs
    hit = np.abs(d) < 1e-14 * max(1.0, x_end)
    d = np.where(hit, 1.0, d)
    q = bw / d
    hit_row = hit.any(axis=1)
    # rows far outside the grid can cancel to a zero weight sum; they are
    # invalid anyway, so normalize quietly and zero them out
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = q / q.sum(axis=1, keepdims=True)
    coef[~valid] = 0.0
    if hit_row.any():
        coef[hit_row] = np.where(hit[hit_row], 1.0, 0.0)
    return idx, coef, valid


def _disk_kernel(alpha: float, z: np.ndarray) -> np.ndarray:
    """Closed-form sin-component integral of the disk average.

    Equals Gamma(a+1) 2^(a-1/2) / sqrt(pi) times the even Bessel kernel of
    order a - 1/2; at z = 0 it reduces to the reciprocal beta-mass of the
    cos-component weight, which is what makes the total disk mass exactly 1.
    Half-integer orders collapse to trigonometric closed forms.
    """
    z = np.abs(np.asarray(z, dtype=float))
    if alpha == 0.0:
        return np.cos(z) / math.pi
    const = math.exp(math.lgamma(alpha + 1.0)) * 2.0 ** (alpha - 0.5) / math.sqrt(math.pi)
    root = math.sqrt(2.0 / math.pi)
    if alpha == 1.0:
        return const * root * np.sinc(z / math.pi)
    if alpha == 2.0:
        out = np.empty_like(z)
        small = z < 0.5
        if small.any():
            out[small] = bessel_kernel_series(1.5, z[small])
        big = ~small
        if big.any():
            zb = z[big]
            out[big] = root * (np.sin(zb) - zb * np.cos(zb)) / zb**3
        return const * out
    out = np.empty_like(z)
    small = z <= 30.0
    if small.any():
        out[small] = bessel_kernel_series(alpha - 0.5, z[small])
    big = ~small
    if big.any():
        zb = z[big]
        step, table = _kernel_table(alpha, float(zb.max()))
        out[big] = _table_interp(table, step, zb)
    return const * out


_TABLE_STEP = 0.0625
_TABLE_CACHE: dict = {}


def _kernel_table(alpha: float, z_hi: float):
    """Cached uniform table of the order a-1/2 Bessel kernel on [0, z_hi]."""
    hi = 512.0 * math.ceil((z_hi + 4.0 * _TABLE_STEP) / 512.0)
    key = alpha
    cached = _TABLE_CACHE.get(key)
    if cached is None or cached[1].size * _TABLE_STEP < hi:
        grid = np.arange(0.0, hi + 3.5 * _TABLE_STEP, _TABLE_STEP)
        _TABLE_CACHE[key] = (_TABLE_STEP, np.asarray(bessel_kernel(alpha - 0.5, grid), dtype=float))
    return _TABLE_CACHE[key]


def _table_interp(table: np.ndarray, step: float, z: np.ndarray) -> np.ndarray:
    """Cubic interpolation on a uniform table starting at 0."""
    pos = z / step
    i0 = np.clip(np.floor(pos).astype(np.int64) - 1, 0, table.size - 4)
    xi = pos - i0
    c = np.ones((z.size, 4))
    offs = np.arange(4.0)
    for a in range(4):
        for b in range(4):
            if a != b:
                c[:, a] *= (xi - offs[b]) / (offs[a] - offs[b])
    return (c * table[i0[:, None] + np.arange(4)[None, :]]).sum(axis=1)


def _u_bucket(z_scale: float) -> int:
    """Gauss-Jacobi node count for the cos-component, phase up to z_scale."""
    need = int(0.62 * z_scale) + 48
    n = 64
    while n < need:
        n *= 2
    if n > 32768:
        raise TruncationError(
            f"convolution oscillation scale {z_scale:.3g} needs more than 32768 "
            "cos-component nodes; coarsen the time lattice or shrink the grids"
        )
    return n


def _check_matching(f: GridFunction, g: GridFunction):
    if f.radial.alpha != g.radial.alpha:
        raise DomainError("convolution factors carry different alpha")
    if f.time.t_max != g.time.t_max or f.time.n_t != g.time.n_t:
        raise DomainError("convolution factors live on different time grids")
    if f.radial.nodes.shape != g.radial.nodes.shape or not np.array_equal(
        f.radial.nodes, g.radial.nodes
    ):
        raise DomainError("convolution factors live on different radial grids")


def _coarse_radial(radial: RadialGrid, stride: int) -> RadialGrid:
    if stride <= 1:
        return radial
    edges = radial.rule.meta.get("edges")
    if edges is None:
        raise DomainError("convolution needs composite-panel radial rules")
    edges = np.asarray(edges, dtype=float)
    coarse = edges[::stride]
    if coarse[-1] != edges[-1]:
        coarse = np.append(coarse, edges[-1])
    return RadialGrid(radial.alpha, composite_legendre(coarse, int(radial.rule.meta["nodes_per_panel"])))


def _support_checks(f: GridFunction, g: GridFunction, support_tol: float):
    for name, fn in (("left", f), ("right", g)):
        peak = fn.max_abs()
        if peak == 0.0:
            continue
        outer = float(np.abs(fn.values[-1, :]).max())
        if outer > support_tol * peak:
            raise GridRangeError(
                f"{name} factor holds {outer / peak:.2e} of its peak on the outer radial "
                "band; convolution samples beyond x_max, enlarge the radial window"
            )
        tedge = float(np.abs(fn.values[:, [0, -1]]).max())
        if tedge > support_tol * peak:
            raise TruncationError(
                f"{name} factor holds {tedge / peak:.2e} of its peak at the time boundary; "
                "the periodized time lattice would wrap it, enlarge the time window"
            )


def convolve(
    f: GridFunction,
    g: GridFunction,
    stride: int = 2,
    rel_tol: float = 1e-13,
    support_tol: float = 1e-9,
) -> GridFunction:
    """Measure convolution of two sampled functions on matching grids.

    Commutative, and diagonalized by the characters (the transform of the
    output is the product of the factor transforms). The output lives on
    grids coarsened by `stride` (panel count and time resolution divided by
    stride); pass stride=1 to keep the input resolution.

    rel_tol truncates time frequencies whose combined spectral magnitude is
    negligible; support_tol bounds how much of either factor may sit on the
    grid boundary before the wrap-around/overrun error is raised.
    """
    _check_matching(f, g)
    alpha = f.radial.alpha
    _support_checks(f, g, support_tol)
    radial_out = _coarse_radial(f.radial, stride)
    time_out = f.time if stride <= 1 else TimeGrid(f.time.t_max, max(2, (f.time.n_t + stride - 1) // stride))
    x_out = radial_out.nodes
    if f.max_abs() == 0.0 or g.max_abs() == 0.0:
        return GridFunction(radial_out, time_out, np.zeros((x_out.size, time_out.n_t)))

    n_t = f.time.n_t
    t_end = f.time.t_max
    nu = 2.0 * math.pi * np.fft.fftfreq(n_t, d=f.time.step)
    coeff = np.fft.fft(f.values, axis=1) / n_t
    g_hat = np.fft.fft(g.values * f.time.weights[None, :], axis=1) * np.exp(1j * nu * t_end)[None, :]

    strength = np.abs(coeff).max(axis=0) * np.abs(g_hat).max(axis=0)
    keep = np.nonzero(strength > rel_tol * strength.max())[0]

    y = f.radial.nodes
    wy = f.radial.measure_weights
    out_spectrum = np.zeros((x_out.size, keep.size), dtype=complex)
    for i, xo in enumerate(x_out):
        built: dict[int, tuple] = {}
        for jj, j in enumerate(keep):
            scale = abs(nu[j]) * xo
            n_u = _u_bucket(scale * y[-1])
            struct = built.get(n_u)
            if struct is None:
                gj = gauss_jacobi(n_u, alpha - 0.5, alpha - 0.5)
                uq = gj.nodes
                radii = np.sqrt(
                    np.maximum(xo * xo + y[None, :] ** 2 + 2.0 * xo * y[None, :] * uq[:, None], 0.0)
                )
                idx, ic, valid = _panel_interp(f.radial.rule, radii.ravel())
                struct = (gj, np.sqrt(np.maximum(1.0 - uq * uq, 0.0)), idx, ic, valid)
                built[n_u] = struct
            gj, a_u, idx, ic, valid = struct
            col = coeff[:, j]
            vals = (ic * col[idx]).sum(axis=1)
            vals[~valid] = 0.0
            vals = vals.reshape(gj.n, y.size)
            kern = _disk_kernel(alpha, scale * a_u[:, None] * y[None, :])
            inner = gj.weights @ (kern * vals)
            out_spectrum[i, jj] = (wy * g_hat[:, j]) @ inner
    phases = np.exp(1j * np.multiply.outer(nu[keep], time_out.nodes + t_end))
    return GridFunction(radial_out, time_out, out_spectrum @ phases)


# ---------------------------------------------------------------------------
# norms and the radial sub-Laplacian


def norm_lp(f: GridFunction, p) -> float:
    """L^p norm against the half-plane measure; p = inf gives the sup norm."""
    if p == math.inf:
        return f.max_abs()
    p = float(p)
    if p < 1.0:
        raise DomainError("norms need p >= 1")
    w = f.radial.measure_weights[:, None] * f.time.weights[None, :]
    return float(exact_sum(w * np.abs(f.values) ** p)) ** (1.0 / p)


def _fd_weights(xs: np.ndarray, x0: float, max_order: int) -> np.ndarray:
    """Finite-difference weights for derivatives 0..max_order at x0 (Fornberg)."""
    n = xs.size
    w = np.zeros((max_order + 1, n))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = xs[0] - x0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = xs[i] - x0
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k, i] = c1 * (k * w[k - 1, i - 1] - c5 * w[k, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for k in range(mn, 0, -1):
                w[k, j] = (c4 * w[k, j] - k * w[k - 1, j]) / c3
            w[0, j] = c4 * w[0, j] / c3
        c1 = c2
    return w


_STENCIL = 7


def apply_radial_laplacian(f: GridFunction) -> GridFunction:
    """Apply d^2/dx^2 + ((2a+1)/x) d/dx + x^2 d^2/dt^2 to sampled values.

    Seven-node sliding stencils in each direction; the radial direction is
    extended evenly through x = 0 (smooth functions on the half-plane are
    even in x), so no accuracy is lost at the inner boundary. On nodes at
    x = 0 the singular first-order term takes its parity limit and the row
    becomes (2a+2) d^2/dx^2.
    """
    alpha = f.radial.alpha
    xs = f.radial.nodes
    ts = f.time.nodes
    if xs.size < _STENCIL or ts.size < _STENCIL:
        raise DomainError(f"need at least {_STENCIL} nodes per direction")
    pad = 3
    if xs[0] == 0.0:
        x_ext = np.concatenate([-xs[pad:0:-1], xs])
        v_ext = np.concatenate([f.values[pad:0:-1], f.values], axis=0)
    else:
        x_ext = np.concatenate([-xs[pad - 1 :: -1], xs])
        v_ext = np.concatenate([f.values[pad - 1 :: -1], f.values], axis=0)
    d1 = np.empty_like(f.values)
    d2 = np.empty_like(f.values)
    for i in range(xs.size):
        c = i + pad
        lo = min(max(c - _STENCIL // 2, 0), x_ext.size - _STENCIL)
        w = _fd_weights(x_ext[lo : lo + _STENCIL], xs[i], 2)
        d1[i] = w[1] @ v_ext[lo : lo + _STENCIL]
        d2[i] = w[2] @ v_ext[lo : lo + _STENCIL]
    dtt = np.empty_like(f.values)
    for l in range(ts.size):
        lo = min(max(l - _STENCIL // 2, 0), ts.size - _STENCIL)
        w = _fd_weights(ts[lo : lo + _STENCIL], ts[l], 2)
        dtt[:, l] = f.values[:, lo : lo + _STENCIL] @ w[2]
    tiny = 1e-14 * max(1.0, float(xs[-1]))
    origin = xs <= tiny
    coef = np.where(origin, 0.0, (2.0 * alpha + 1.0) / np.where(origin, 1.0, xs))
    out = d2 + coef[:, None] * d1 + (xs * xs)[:, None] * dtt
    if origin.any():
        out[origin] = (2.0 * alpha + 2.0) * d2[origin]
    return f.with_values(out)
