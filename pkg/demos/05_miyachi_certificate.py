"""Numerical uncertainty certificates: when must a function vanish?

An uncertainty principle for this geometry says: if f is dominated by the
heat kernel h_{1/(4a)} in space, its slice transforms decay at frequency
rate b, and the product satisfies a b > 1/4, then f = 0.  The certificate
engine turns each hypothesis into a grid test:

* hypothesis 1 (``slice_decay_check``): fit the smallest C with
  |f^lambda(x)| <= C exp(-4 a A x^2) and verify the constant is stable when
  the radial window grows — a constant that explodes under extension is the
  signature of a bound failing just outside the window;
* hypothesis 2 (``logplus_integral`` ladder): integrate the positive part of
  log(|H f^lambda(y)| e^{b y^2} / delta) over growing radii; a divergent
  ladder means the frequency-side decay is *worse* than e^{-b y^2}, so the
  hypothesis fails.  The verdict is checked on a delta ladder because it
  must not depend on the log scale.

Three canonical scenarios below (small grids for speed):

* the heat kernel itself with b = 0.3 (a b = 0.3 > 1/4):  hypothesis 2
  diverges — correctly refusing to call a nonzero function zero;
* b = 0.05 (a b <= 1/4): everything bounded, but the product is subcritical,
  so the verdict is "inconclusive" — the theorem does not apply;
* the zero function with b = 0.3: both hypotheses pass, the product is
  supercritical, and the conclusion "must_vanish" is consistent with the
  measured residual norm 0.

Run:  python3 demos/05_miyachi_certificate.py   (~25 s)
"""

import numpy as np

from laghyp import (
    GridFunction,
    HeatParams,
    MiyachiParams,
    TimeGrid,
    fit_gaussian_estimate,
    heat_kernel_grid,
    miyachi_certificate,
    radial_grid,
)

print(__doc__)

alpha, a = 0.0, 1.0
A = fit_gaussian_estimate(alpha).decay_rate
print(f"certified envelope rate A = {A:.6f}; strip half-width 4aA = {4 * a * A:.6f}\n")

radial = radial_grid(alpha, 6.0, n_panels=6, nodes_per_panel=8)
tg = TimeGrid(12.0, 129)
heat = heat_kernel_grid(HeatParams(alpha=alpha, s=1.0 / (4.0 * a)), radial, tg)
zero = GridFunction(radial, tg, np.zeros_like(heat.values))

scenarios = [
    ("heat kernel, b=0.30 (ab > 1/4)", heat, 0.3),
    ("heat kernel, b=0.05 (ab < 1/4)", heat, 0.05),
    ("zero function, b=0.30", zero, 0.3),
]
for label, f, b in scenarios:
    rep = miyachi_certificate(
        f,
        MiyachiParams(a=a, b=b, delta=1.0, A=A),
        lambda_samples=(2.0, -2.0),
        radius_ladder=(4.0, 6.0, 8.0, 12.0),
        deltas=(0.5, 2.0),
    )
    ladder = [v for _, v in rep.hypothesis2["truncated_integrals"]]
    print(f"--- {label}")
    print(f"  hypothesis 1 (slice decay):  pass = {rep.hypothesis1['pass']}, "
          f"fitted C = {rep.hypothesis1['fitted_C']:.4g}")
    print(f"  hypothesis 2 ladder: {[f'{v:.4g}' for v in ladder]} "
          f"-> divergent = {rep.hypothesis2['divergent']}")
    print(f"  product ab = {rep.product_ab}, residual L2 norm = {rep.residual_norm:.4g}")
    print(f"  conclusion: {rep.conclusion}\n")
