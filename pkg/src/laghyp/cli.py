"""Command-line front door.

Subcommands: verify (run a named check suite), transform (fixture
transforms), heat (kernel calibration report), miyachi (certificate for a
saved grid function), tables (special-function value tables). Artifacts are
plain CSV/JSON without timestamps, so reruns with the same configuration are
byte-identical; wall-clock stamps go to the sidecar .log only.

Exit codes: 0 success, 1 check failures, 2 configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys

import numpy as np

from .errors import ConfigError, LaghypError
from .grids import load_grid_function, save_grid_function, save_spectral_function, spectral_grid
from .heat import calibrate_heat, fit_gaussian_estimate, heat_kernel_eval
from .miyachi import MiyachiParams, miyachi_certificate
from .special import bessel_kernel, laguerre_function
from .suites import (
    SUITE_NAMES,
    SuiteConfig,
    make_fixture_function,
    run_suite,
)
from .transforms import fourier_laguerre_forward, fourier_laguerre_inverse

FIXTURE_NAMES = ("heat_kernel", "psi_packet", "bump")


def load_config_file(path: str) -> dict:
    """Flat key=value lines; blank lines and # comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    values = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected key=value, got {raw!r}")
        key, val = line.split("=", 1)
        values[key.strip()] = val.strip()
    return values


def build_suite_config(file_values: dict, out: str | None, tol_scale: float | None) -> SuiteConfig:
    fields = {f.name: f for f in dataclasses.fields(SuiteConfig)}
    kwargs = {}
    for key, raw in file_values.items():
        name = "out_dir" if key == "out" else key
        if name not in fields:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            if name == "alpha_set":
                kwargs[name] = tuple(float(v) for v in raw.split(",") if v.strip())
            elif name in ("n_x", "n_t", "m_max"):
                kwargs[name] = int(raw)
            elif name == "out_dir":
                kwargs[name] = raw
            else:
                kwargs[name] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"config key {key!r}: cannot parse {raw!r}") from exc
    if out is not None:
        kwargs["out_dir"] = out
    if tol_scale is not None:
        kwargs["tol_scale"] = tol_scale
    cfg = SuiteConfig(**kwargs)
    cfg.validate()
    return cfg


def make_fixture(name: str, alpha: float = 0.0, out_dir: str = ".",
                 cfg: SuiteConfig | None = None, **params) -> tuple[str, str]:
    """Build one named fixture and write its CSV+JSON pair."""
    if name not in FIXTURE_NAMES:
        raise ConfigError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    f = make_fixture_function(name, alpha, cfg if cfg is not None else SuiteConfig(), **params)
    os.makedirs(out_dir, exist_ok=True)
    return save_grid_function(f, os.path.join(out_dir, name))


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_verify(args, cfg: SuiteConfig) -> int:
    return run_suite(args.suite, cfg)


def _fixture_params(args) -> dict:
    params = {}
    for key in ("s", "lam0", "radius", "t_radius", "width"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if getattr(args, "m0", None) is not None:
        params["m0"] = args.m0
    return params


def cmd_transform(args, cfg: SuiteConfig) -> int:
    f = make_fixture_function(args.fixture, args.alpha, cfg, **_fixture_params(args))
    os.makedirs(cfg.out_dir, exist_ok=True)
    base = os.path.join(cfg.out_dir, args.fixture)
    save_grid_function(f, base)
    sg = spectral_grid(args.alpha, m_max=args.m_max, lambda_max=args.lambda_max)
    F = fourier_laguerre_forward(f, sg)
    save_spectral_function(F, base + "_hat")
    mags = np.abs(F.values)
    j, m = np.unravel_index(int(mags.argmax()), mags.shape)
    summary = {
        "schema_version": 1,
        "fixture": args.fixture,
        "alpha": args.alpha,
        "direction": args.direction,
        "m_max": args.m_max,
        "lambda_max": args.lambda_max,
        "peak_lambda": float(sg.lambda_nodes[j]),
        "peak_m": int(m),
    }
    if args.direction == "inverse":
        g = fourier_laguerre_inverse(F, f.radial, f.time)
        save_grid_function(g, base + "_roundtrip")
        gap = float(np.max(np.abs(g.values - f.values)))
        summary["roundtrip_gap"] = gap
        summary["roundtrip_gap_rel"] = gap / float(np.max(np.abs(f.values)))
    _write_json(os.path.join(cfg.out_dir, "transform_summary.json"), summary)
    print(f"transform: fixture={args.fixture} peak=({summary['peak_lambda']:.6g}, {m})")
    return 0


def cmd_heat(args, cfg: SuiteConfig) -> int:
    cal = calibrate_heat(args.alpha, s=args.s)
    fit = fit_gaussian_estimate(args.alpha)
    os.makedirs(cfg.out_dir, exist_ok=True)
    payload = {
        "schema_version": 1,
        "calibration": dataclasses.asdict(cal),
        "gaussian_fit": dataclasses.asdict(fit),
    }
    _write_json(os.path.join(cfg.out_dir, "heat_report.json"), payload)
    xs = np.linspace(0.0, 6.0 * math.sqrt(args.s), 33)
    ts = np.linspace(-8.0 * args.s, 8.0 * args.s, 33)
    vals = heat_kernel_eval(args.alpha, args.s, xs[:, None], ts[None, :])
    path = os.path.join(cfg.out_dir, "heat_kernel.csv")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "t", "value"])
        for i, x in enumerate(xs):
            for k, t in enumerate(ts):
                writer.writerow([repr(float(x)), repr(float(t)), repr(float(vals[i, k]))])
    print(f"heat: alpha={args.alpha} kappa={cal.kappa:g} "
          f"(nominal {cal.kappa_nominal:g}) decay_rate={fit.decay_rate:.6f}")
    return 0


def cmd_miyachi(args, cfg: SuiteConfig) -> int:
    if args.input is not None:
        base = args.input[:-4] if args.input.endswith(".csv") else args.input
        try:
            f = load_grid_function(base)
        except (OSError, KeyError, ValueError) as exc:
            raise ConfigError(f"cannot load grid function {args.input!r}: {exc}") from exc
    else:
        f = make_fixture_function("heat_kernel", cfg.alpha_set[0], cfg, s=1.0 / (4.0 * args.a))
    alpha = f.radial.alpha
    A = args.A if args.A is not None else fit_gaussian_estimate(alpha).decay_rate
    params = MiyachiParams(a=args.a, b=args.b, delta=args.delta, A=A)
    report = miyachi_certificate(f, params)
    report_path = args.report
    if not os.path.isabs(report_path):
        report_path = os.path.join(cfg.out_dir, report_path)
    os.makedirs(os.path.dirname(report_path) or ".", exist_ok=True)
    _write_json(report_path, report.to_json_dict())
    print(f"miyachi: ab={params.a * params.b:g} conclusion={report.conclusion} "
          f"residual_norm={report.residual_norm:.3e}")
    return 0


def cmd_tables(args, cfg: SuiteConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, "tables.csv")
    xs = np.linspace(0.0, args.x_max, args.n)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["function", "alpha", "m", "x", "value"])
        for m in range(args.m_max + 1):
            vals = laguerre_function(m, args.alpha, xs)
            for x, v in zip(xs, vals):
                writer.writerow(["laguerre_function", repr(args.alpha), m, repr(float(x)), repr(float(v))])
        for x in xs:
            kernel_value = np.asarray(bessel_kernel(args.alpha, float(x))).ravel()[0]
            writer.writerow(["bessel_kernel", repr(args.alpha), "", repr(float(x)),
                             repr(float(kernel_value))])
    print(f"tables: wrote {path}")
    return 0


def _add_global_flags(parser: argparse.ArgumentParser, root: bool) -> None:
    # defined on the root parser and again on every subparser (SUPPRESS keeps
    # an absent repeat from clobbering the root value), so the flags are
    # accepted on either side of the subcommand
    default = None if root else argparse.SUPPRESS
    parser.add_argument("--config", default=default, help="flat key=value config file")
    parser.add_argument("--out", default=default, help="output directory for reports and artifacts")
    parser.add_argument("--tol-scale", type=float, default=default,
                        help="multiply every check tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laghyp",
        description="Verification suites and transform artifacts for the Laguerre hypergroup toolkit.",
    )
    _add_global_flags(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_global_flags(p, root=False)
    p.add_argument("suite", choices=SUITE_NAMES)

    p = sub.add_parser("transform", help="transform a built-in fixture")
    _add_global_flags(p, root=False)
    p.add_argument("--fixture", choices=FIXTURE_NAMES, default="heat_kernel")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p.add_argument("--m-max", type=int, default=64)
    p.add_argument("--lambda-max", type=float, default=8.0)
    p.add_argument("--s", type=float, default=None, help="heat_kernel time parameter")
    p.add_argument("--lam0", type=float, default=None, help="psi_packet frequency")
    p.add_argument("--m0", type=int, default=None, help="psi_packet level")
    p.add_argument("--width", type=float, default=None, help="psi_packet window width")
    p.add_argument("--radius", type=float, default=None, help="bump radial support")
    p.add_argument("--t-radius", type=float, default=None, help="bump time support")

    p = sub.add_parser("heat", help="calibration and Gaussian-envelope report")
    _add_global_flags(p, root=False)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--s", type=float, default=0.5)

    p = sub.add_parser("miyachi", help="certificate for a saved grid function")
    _add_global_flags(p, root=False)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=0.3)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--A", type=float, default=None,
                   help="space-side decay rate; calibrated from the kernel family when omitted")
    p.add_argument("--input", help="grid function CSV (with its JSON sidecar)")
    p.add_argument("--report", default="report.json")

    p = sub.add_parser("tables", help="dump special-function value tables")
    _add_global_flags(p, root=False)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--m-max", type=int, default=8)
    p.add_argument("--x-max", type=float, default=8.0)
    p.add_argument("--n", type=int, default=65)
    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "transform": cmd_transform,
    "heat": cmd_heat,
    "miyachi": cmd_miyachi,
    "tables": cmd_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_values = load_config_file(args.config) if args.config else {}
        cfg = build_suite_config(file_values, args.out, args.tol_scale)
        return _COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except LaghypError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
