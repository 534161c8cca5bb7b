"""Forward and inverse transforms between the half-plane and its dual.

The analysis side pairs a sampled function with the character family
e^{i lambda t} e^{-u/2} L_m(u)/L_m(0), u = |lambda| x^2, against the measured
half-plane; the synthesis side sums the same characters against the dual
weight table. Both factor through a slice transform in t followed by a
radial Laguerre projection, so they reduce to dense matrix products per
frequency node.

A radial Fourier-Bessel (Hankel-type) transform of order a is also provided:
  H f(y) = int_0^inf f(x) K(xy) x^(2a+1) dx,   K(z) = J_a(z) / z^a,
normalized so that H maps exp(-g x^2) to (2g)^(-(a+1)) exp(-y^2/(4g)) and has
the oscillator profiles e^{-x^2/2} L_m(x^2) as (-1)^m eigenvectors. K is
entire and even, so the same code path evaluates on the imaginary axis,
which is what the strip-growth diagnostics need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationError
from .grids import GridFunction, RadialGrid, SpectralFunction, SpectralGrid, TimeGrid
from .quadrature import exact_sum
from .special import bessel_kernel, damped_laguerre_sequence


@dataclass
class RadialSlice:
    """One time-frequency slice of a sampled function, living on a RadialGrid."""

    lam: complex
    radial: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.radial.nodes.shape:
            raise DomainError("slice values must match the radial nodes")
        if not np.all(np.isfinite(vals)):
            raise DomainError("slice values must be finite")
        self.values = vals

    @property
    def x_nodes(self) -> np.ndarray:
        return self.radial.nodes


def character_profiles(alpha: float, m_max: int, lam: complex, x) -> np.ndarray:
    """Radial character profiles e^{-u/2} L_m(u)/L_m(0), u = |lam| x^2.

    Returns shape (len(x), m_max+1), evaluated by a damped three-term
    recurrence that stays inside double range for large m and large u.
    """
    x = np.asarray(x, dtype=float)
    u = abs(lam) * x * x
    seq = damped_laguerre_sequence(m_max, alpha, u)  # (m_max+1, n_x)
    return seq.T


def time_slice_transform(f: GridFunction, lam: complex, edge_tol: float | None = 1e-8) -> RadialSlice:
    """Slice transform int f(x, t) e^{-i lam t} dt on the time grid.

    Supports complex lam (the integrand then grows like e^{|Im lam| t_max}).
    When edge_tol is set, the weighted integrand at the two boundary nodes
    must stay below edge_tol relative to the largest row total, otherwise the
    window is judged too short and TruncationError is raised.
    """
    t = f.time.nodes
    phase = np.exp(-1j * lam * t) * f.time.weights
    integrand = f.values * phase[None, :]
    if edge_tol is not None:
        edge = np.abs(integrand[:, 0]) + np.abs(integrand[:, -1])
        total = np.abs(integrand).sum(axis=1)
        scale = float(total.max())
        if scale > 0.0 and float(edge.max()) > edge_tol * scale:
            raise TruncationError(
                f"time window [-{f.time.t_max}, {f.time.t_max}] too short for slice at "
                f"lam={lam!r}: boundary contribution {float(edge.max()) / scale:.3e} "
                f"exceeds {edge_tol:.1e} of the integrand mass"
            )
    return RadialSlice(lam, f.radial, integrand.sum(axis=1))


def fourier_laguerre_forward(
    f: GridFunction, grid: SpectralGrid, edge_tol: float | None = None
) -> SpectralFunction:
    """Analysis transform: pair f with conjugate characters over the measure.

    For each frequency node the time slice is projected on the Laguerre
    profiles with the measured radial weights. edge_tol is off by default:
    on a matched uniform dual grid the slice integrand need not decay at the
    window edge (discrete orthogonality handles it); pass a tolerance to
    enforce the decaying-window contract instead.
    """
    if grid.alpha != f.radial.alpha:
        raise DomainError("function and dual grid carry different alpha")
    x = f.radial.nodes
    w = f.radial.measure_weights
    t = f.time.nodes
    if edge_tol is not None:
        edge = (np.abs(f.values[:, [0, -1]]) * f.time.weights[[0, -1]][None, :]).sum(axis=1).max()
        scale = (np.abs(f.values) * f.time.weights[None, :]).sum(axis=1).max()
        if scale > 0.0 and edge > edge_tol * scale:
            raise TruncationError("time window too short for the analysis transform")
    phase = np.exp(-1j * np.multiply.outer(grid.lambda_nodes, t)) * f.time.weights[None, :]
    slices = f.values @ phase.T  # (n_x, n_lambda)
    out = np.empty((grid.n_lambda, grid.m_max + 1), dtype=complex)
    for j, lam in enumerate(grid.lambda_nodes):
        profiles = character_profiles(grid.alpha, grid.m_max, lam, x)
        out[j, :] = (w * slices[:, j]) @ profiles
    return SpectralFunction(grid, out)


def fourier_laguerre_inverse(
    F: SpectralFunction,
    radial: RadialGrid,
    time: TimeGrid,
    tail_tol: float | None = None,
) -> GridFunction:
    """Synthesis transform: sum characters against the dual weight table.

    When tail_tol is set, the weighted level profile sum_j gamma_j |F(j, m)|
    must have decayed by tail_tol relative to its peak over the last three
    levels, otherwise the level cutoff is judged unconverged and
    TruncationError is raised.
    """
    if F.grid.alpha != radial.alpha:
        raise DomainError("spectral data and radial grid carry different alpha")
    gamma = F.grid.gamma_weights
    if tail_tol is not None and F.grid.m_max >= 3:
        level_mass = (gamma * np.abs(F.values)).sum(axis=0)
        peak = float(level_mass.max())
        if peak > 0.0 and float(level_mass[-3:].max()) > tail_tol * peak:
            raise TruncationError(
                f"level cutoff m_max={F.grid.m_max} unconverged: tail mass "
                f"{float(level_mass[-3:].max()) / peak:.3e} of peak exceeds {tail_tol:.1e}"
            )
    x = radial.nodes
    weighted = gamma * F.values  # (n_lambda, m_max+1)
    g = np.empty((x.size, F.grid.n_lambda), dtype=complex)
    for j, lam in enumerate(F.grid.lambda_nodes):
        profiles = character_profiles(F.grid.alpha, F.grid.m_max, lam, x)
        g[:, j] = profiles @ weighted[j, :]
    phase = np.exp(1j * np.multiply.outer(F.grid.lambda_nodes, time.nodes))
    return GridFunction(radial, time, g @ phase)


def norm_squared_grid(f: GridFunction) -> float:
    """Squared L2 norm against the half-plane measure."""
    w = f.radial.measure_weights[:, None] * f.time.weights[None, :]
    return float(exact_sum(w * np.abs(f.values) ** 2))


def norm_squared_spectral(F: SpectralFunction) -> float:
    """Squared L2 norm against the dual weight table."""
    return float(exact_sum(F.grid.gamma_weights * np.abs(F.values) ** 2))


def plancherel_norms(f: GridFunction, grid: SpectralGrid) -> tuple[float, float]:
    """(space L2 norm, dual L2 norm) computed independently of each other."""
    a = math.sqrt(norm_squared_grid(f))
    b = math.sqrt(norm_squared_spectral(fourier_laguerre_forward(f, grid)))
    return a, b


def plancherel_gap(f: GridFunction, F: SpectralFunction) -> tuple[float, float, float]:
    """(space norm^2, dual norm^2, relative gap) for a transform pair."""
    a = norm_squared_grid(f)
    b = norm_squared_spectral(F)
    denom = max(a, b)
    gap = abs(a - b) / denom if denom > 0.0 else 0.0
    return a, b, gap


def hankel_transform(g, y, radial: RadialGrid | None = None, tail_tol: float | None = 1e-8):
    """Fourier-Bessel transform of radial samples at targets y (may be complex).

    g is a RadialSlice or an array of samples on `radial`. Uses the plain
    x^(2a+1) dx pairing. For each target the weighted integrand must be
    negligible (tail_tol relative) over the outer tenth of the grid,
    otherwise the grid cannot support the requested target and
    TruncationError is raised; this matters on the imaginary axis where the
    kernel grows exponentially.
    """
    if isinstance(g, RadialSlice):
        radial = g.radial
        v = g.values
    else:
        if radial is None:
            raise DomainError("hankel_transform needs a RadialGrid for plain samples")
        v = np.asarray(g, dtype=complex)
    x = radial.nodes
    if v.shape != x.shape:
        raise DomainError("radial sample shape mismatch")
    w = radial.radial_weights
    y_arr = np.atleast_1d(np.asarray(y))
    out = np.empty(y_arr.shape, dtype=complex)
    n_tail = max(2, x.size // 10)
    wv = w * v
    for idx, yy in enumerate(y_arr):
        kern = bessel_kernel(radial.alpha, x * yy)
        integrand = wv * kern
        if tail_tol is not None:
            mags = np.abs(integrand)
            peak = float(mags.max())
            if peak > 0.0:
                tail = float(mags[-n_tail:].max())
                if tail > tail_tol * peak:
                    raise TruncationError(
                        f"radial grid (x_max={radial.x_max:g}) cannot support Fourier-Bessel "
                        f"target y={yy!r}: outer-band integrand is {tail / peak:.3e} of peak"
                    )
        out[idx] = integrand.sum()
    return out if np.ndim(y) else complex(out[()])
