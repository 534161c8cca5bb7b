"""Grids, sampled functions, and their serialization.

The half-plane domain [0, inf) x R carries the measure
x^(2a+1) dx dt / (pi Gamma(a+1)); its dual is indexed by a real frequency
lambda != 0 and a Laguerre level m, with Plancherel weight
binom(m+a, m) |lambda|^(a+1) dlambda. A RadialGrid premultiplies its
quadrature weights by the radial measure density, a SpectralGrid carries the
full (lambda, m) weight table, so integrals are plain weighted sums.

Files come in pairs: a CSV with the sampled values (columns x,t,re,im or
lambda,m,re,im) and a JSON sidecar with every node and weight serialized via
repr so that save -> load -> save is byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .quadrature import (
    QuadratureRule,
    composite_legendre,
    exact_sum,
    gauss_legendre,
    map_rule,
    trapezoid_rule,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class TimeGrid:
    """Symmetric uniform grid on [-t_max, t_max] with trapezoid weights."""

    t_max: float
    n_t: int
    nodes: np.ndarray = field(init=False, compare=False, repr=False)
    weights: np.ndarray = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not (self.t_max > 0.0 and math.isfinite(self.t_max)):
            raise DomainError("t_max must be positive and finite")
        if self.n_t < 2:
            raise DomainError("need at least two time nodes")
        rule = trapezoid_rule(self.n_t, -self.t_max, self.t_max)
        object.__setattr__(self, "nodes", rule.nodes)
        object.__setattr__(self, "weights", rule.weights)

    @property
    def step(self) -> float:
        return 2.0 * self.t_max / (self.n_t - 1)


@dataclass(frozen=True)
class RadialGrid:
    """Radial quadrature bundled with the measure density x^(2a+1)/(pi Gamma(a+1)).

    `rule` integrates plain dx on [0, x_max]; `measure_weights` fold in the
    radial density so sum(measure_weights * v) integrates v against the
    radial part of the half-plane measure.
    """

    alpha: float
    rule: QuadratureRule

    def __post_init__(self):
        if self.alpha <= -1.0:
            raise DomainError("alpha must exceed -1")
        if self.rule.nodes[0] < 0.0:
            raise DomainError("radial nodes must be nonnegative")

    @property
    def nodes(self) -> np.ndarray:
        return self.rule.nodes

    @property
    def x_max(self) -> float:
        return float(self.rule.nodes[-1])

    @property
    def radial_weights(self) -> np.ndarray:
        """Quadrature weights against the bare density x^(2a+1) dx."""
        x = self.rule.nodes
        dens = np.zeros_like(x)
        pos = x > 0.0
        dens[pos] = np.exp((2.0 * self.alpha + 1.0) * np.log(x[pos]))
        return self.rule.weights * dens

    @property
    def measure_weights(self) -> np.ndarray:
        """Weights against the normalized density x^(2a+1)/(pi Gamma(a+1)) dx."""
        return self.radial_weights / (math.pi * math.exp(math.lgamma(self.alpha + 1.0)))


def radial_grid(alpha: float, x_max: float, n_panels: int = 8, nodes_per_panel: int = 12) -> RadialGrid:
    """Composite Gauss-Legendre radial grid on [0, x_max]."""
    if not (x_max > 0.0 and math.isfinite(x_max)):
        raise DomainError("x_max must be positive and finite")
    if n_panels < 1:
        raise DomainError("need at least one panel")
    edges = np.linspace(0.0, x_max, n_panels + 1)
    return RadialGrid(alpha, composite_legendre(edges, nodes_per_panel))


def radial_grid_uniform(alpha: float, x_max: float, n: int) -> RadialGrid:
    """Uniform trapezoid radial grid including x = 0 (for stencil operators)."""
    return RadialGrid(alpha, trapezoid_rule(n, 0.0, x_max))


@dataclass(frozen=True)
class SpectralGrid:
    """Frequency nodes (excluding 0) x Laguerre levels 0..m_max with weights.

    gamma_weights[j, m] = binom(m+a, m) |lambda_j|^(a+1) w_j is the full dual
    measure weight, so sum(gamma_weights * F) integrates F over the dual.
    """

    alpha: float
    m_max: int
    lambda_rule: QuadratureRule

    def __post_init__(self):
        if self.alpha <= -1.0:
            raise DomainError("alpha must exceed -1")
        if self.m_max < 0:
            raise DomainError("m_max must be nonnegative")
        if np.any(self.lambda_rule.nodes == 0.0):
            raise DomainError("lambda = 0 must not be a node")

    @property
    def lambda_nodes(self) -> np.ndarray:
        return self.lambda_rule.nodes

    @property
    def n_lambda(self) -> int:
        return self.lambda_rule.n

    @property
    def levels(self) -> np.ndarray:
        return np.arange(self.m_max + 1)

    @property
    def gamma_weights(self) -> np.ndarray:
        m = np.arange(self.m_max + 1, dtype=float)
        logbinom = (
            np.vectorize(math.lgamma)(m + self.alpha + 1.0)
            - np.vectorize(math.lgamma)(m + 1.0)
            - math.lgamma(self.alpha + 1.0)
        )
        lam_part = np.abs(self.lambda_nodes) ** (self.alpha + 1.0) * self.lambda_rule.weights
        return lam_part[:, None] * np.exp(logbinom)[None, :]


def spectral_grid(
    alpha: float,
    m_max: int,
    lambda_max: float,
    n_panels: int = 10,
    nodes_per_panel: int = 16,
    lambda_min: float = 1e-6,
    growth: float = 3.0,
) -> SpectralGrid:
    """Two-sided geometric Gauss-Legendre panels on [lambda_min, lambda_max].

    Panels refine geometrically toward 0 to resolve the |lambda|^(a+1)
    density; the origin itself is excluded.
    """
    if not (0.0 < lambda_min < lambda_max):
        raise DomainError("need 0 < lambda_min < lambda_max")
    if n_panels < 2 or growth <= 1.0:
        raise DomainError("need n_panels >= 2 and growth > 1")
    edges = [lambda_max]
    for _ in range(n_panels - 1):
        edges.append(max(edges[-1] / growth, lambda_min))
    edges.append(lambda_min)
    pos_edges = np.unique(np.asarray(edges[::-1]))
    base = gauss_legendre(nodes_per_panel)
    nodes, weights = [], []
    for lo, hi in zip(pos_edges[:-1], pos_edges[1:]):
        mapped = map_rule(base, float(lo), float(hi))
        nodes.append(mapped.nodes)
        weights.append(mapped.weights)
    pos_nodes = np.concatenate(nodes)
    pos_weights = np.concatenate(weights)
    all_nodes = np.concatenate([-pos_nodes[::-1], pos_nodes])
    all_weights = np.concatenate([pos_weights[::-1], pos_weights])
    rule = QuadratureRule(
        "legendre",
        all_nodes,
        all_weights,
        meta={"lambda_min": lambda_min, "lambda_max": lambda_max, "nodes_per_panel": nodes_per_panel},
    )
    return SpectralGrid(alpha, m_max, rule)


def spectral_grid_uniform(alpha: float, m_max: int, spacing: float, n_per_side: int) -> SpectralGrid:
    """Midpoint frequency grid +-(j+1/2)*spacing, j = 0..n_per_side-1.

    With spacing = pi/t_max this grid is the exact dual of a trapezoid time
    grid of half-width t_max: complex exponentials at distinct nodes are then
    discretely orthogonal, which makes analysis/synthesis round trips exact
    up to radial quadrature error.
    """
    if spacing <= 0.0 or n_per_side < 1:
        raise DomainError("need positive spacing and n_per_side >= 1")
    pos = (np.arange(n_per_side) + 0.5) * spacing
    nodes = np.concatenate([-pos[::-1], pos])
    weights = np.full(nodes.size, spacing)
    rule = QuadratureRule("trapezoid", nodes, weights, meta={"spacing": spacing})
    return SpectralGrid(alpha, m_max, rule)


# ---------------------------------------------------------------------------
# sampled functions


@dataclass
class GridFunction:
    """Complex samples of a function on a RadialGrid x TimeGrid product."""

    radial: RadialGrid
    time: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.radial.nodes.size, self.time.n_t):
            raise DomainError(
                f"values shape {vals.shape} does not match grid "
                f"({self.radial.nodes.size}, {self.time.n_t})"
            )
        if not np.all(np.isfinite(vals)):
            raise DomainError("values must be finite")
        self.values = vals

    @classmethod
    def from_callable(cls, radial: RadialGrid, time: TimeGrid, f) -> "GridFunction":
        x = radial.nodes[:, None]
        t = time.nodes[None, :]
        return cls(radial, time, np.asarray(f(x, t), dtype=complex) + np.zeros((x.size, time.n_t)))

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.radial, self.time, values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass
class SpectralFunction:
    """Complex samples on the dual grid, indexed (lambda node, level)."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.n_lambda, self.grid.m_max + 1):
            raise DomainError(
                f"values shape {vals.shape} does not match dual grid "
                f"({self.grid.n_lambda}, {self.grid.m_max + 1})"
            )
        if not np.all(np.isfinite(vals)):
            raise DomainError("values must be finite")
        self.values = vals

    def with_values(self, values) -> "SpectralFunction":
        return SpectralFunction(self.grid, values)


# ---------------------------------------------------------------------------
# integration


def integrate_radial(g, radial: RadialGrid) -> complex | float:
    """Integral of g against x^(2a+1) dx on [0, x_max].

    g may be a callable (evaluated at the nodes) or an array of samples.
    """
    v = np.asarray(g(radial.nodes) if callable(g) else g)
    if v.shape != radial.nodes.shape:
        raise DomainError("radial sample shape mismatch")
    if not np.all(np.isfinite(v)):
        raise DomainError("radial samples must be finite")
    return exact_sum(v * radial.radial_weights)


def integrate_grid(f: GridFunction) -> complex | float:
    """Integral of a sampled function over the measured half-plane."""
    w = f.radial.measure_weights[:, None] * f.time.weights[None, :]
    return exact_sum(w * f.values)


def integrate_spectral(F: SpectralFunction) -> complex | float:
    """Integral of dual-side samples against the Plancherel weight table."""
    return exact_sum(F.grid.gamma_weights * F.values)


def mass(f: GridFunction) -> complex | float:
    """Total measure-integral of f (its transform at the trivial character)."""
    return integrate_grid(f)


# ---------------------------------------------------------------------------
# serialization

_GRID_CSV_HEADER = ["x", "t", "re", "im"]
_SPECTRAL_CSV_HEADER = ["lambda", "m", "re", "im"]


def _floats(arr) -> list:
    return [float(v) for v in np.asarray(arr).ravel()]


def _rule_to_json(rule: QuadratureRule) -> dict:
    meta = {k: v for k, v in rule.meta.items()}
    return {"kind": rule.kind, "nodes": _floats(rule.nodes), "weights": _floats(rule.weights), "meta": meta}


def _rule_from_json(obj: dict) -> QuadratureRule:
    return QuadratureRule(
        obj["kind"],
        np.asarray(obj["nodes"], dtype=float),
        np.asarray(obj["weights"], dtype=float),
        meta=dict(obj.get("meta", {})),
    )


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def save_grid_function(f: GridFunction, base: str) -> tuple[str, str]:
    """Write base.csv (x,t,re,im rows, x-major) and base.json (grid metadata)."""
    csv_path, json_path = base + ".csv", base + ".json"
    x, t = f.radial.nodes, f.time.nodes
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(_GRID_CSV_HEADER)
        for i in range(x.size):
            for j in range(t.size):
                v = f.values[i, j]
                writer.writerow(
                    [repr(float(x[i])), repr(float(t[j])), repr(float(v.real)), repr(float(v.imag))]
                )
    _write_json(
        json_path,
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "grid_function",
            "alpha": f.radial.alpha,
            "radial_rule": _rule_to_json(f.radial.rule),
            "time": {"t_max": f.time.t_max, "n_t": f.time.n_t},
            "shape": [int(x.size), int(t.size)],
        },
    )
    return csv_path, json_path


def load_grid_function(base: str) -> GridFunction:
    csv_path, json_path = base + ".csv", base + ".json"
    with open(json_path, encoding="utf-8") as fh:
        meta = json.load(fh)
    if meta.get("kind") != "grid_function":
        raise DomainError(f"{json_path} does not describe a grid function")
    radial = RadialGrid(float(meta["alpha"]), _rule_from_json(meta["radial_rule"]))
    time = TimeGrid(float(meta["time"]["t_max"]), int(meta["time"]["n_t"]))
    n_x, n_t = meta["shape"]
    vals = np.empty((n_x, n_t), dtype=complex)
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != _GRID_CSV_HEADER:
            raise DomainError(f"unexpected CSV header {header!r}")
        flat = [complex(float(row[2]), float(row[3])) for row in reader]
    if len(flat) != n_x * n_t:
        raise DomainError("CSV row count does not match declared shape")
    vals[:] = np.asarray(flat).reshape(n_x, n_t)
    return GridFunction(radial, time, vals)


def save_spectral_function(F: SpectralFunction, base: str) -> tuple[str, str]:
    """Write base.csv (lambda,m,re,im rows, lambda-major) and base.json."""
    csv_path, json_path = base + ".csv", base + ".json"
    lam = F.grid.lambda_nodes
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(_SPECTRAL_CSV_HEADER)
        for j in range(lam.size):
            for m in range(F.grid.m_max + 1):
                v = F.values[j, m]
                writer.writerow([repr(float(lam[j])), m, repr(float(v.real)), repr(float(v.imag))])
    _write_json(
        json_path,
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "spectral_function",
            "alpha": F.grid.alpha,
            "m_max": F.grid.m_max,
            "lambda_rule": _rule_to_json(F.grid.lambda_rule),
            "shape": [int(lam.size), F.grid.m_max + 1],
        },
    )
    return csv_path, json_path


def load_spectral_function(base: str) -> SpectralFunction:
    csv_path, json_path = base + ".csv", base + ".json"
    with open(json_path, encoding="utf-8") as fh:
        meta = json.load(fh)
    if meta.get("kind") != "spectral_function":
        raise DomainError(f"{json_path} does not describe a spectral function")
    grid = SpectralGrid(float(meta["alpha"]), int(meta["m_max"]), _rule_from_json(meta["lambda_rule"]))
    n_l, n_m = meta["shape"]
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != _SPECTRAL_CSV_HEADER:
            raise DomainError(f"unexpected CSV header {header!r}")
        flat = [complex(float(row[2]), float(row[3])) for row in reader]
    if len(flat) != n_l * n_m:
        raise DomainError("CSV row count does not match declared shape")
    vals = np.asarray(flat).reshape(n_l, n_m)
    return SpectralFunction(grid, vals)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
