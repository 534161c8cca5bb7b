"""Generalized translation and measure convolution on the half-plane.

The half-plane [0, inf) x R carries a two-point operation generalizing group
translation: translating f by (p_x, p_t) and evaluating at (q_x, q_t)
averages f over a circle of radii R(theta) = sqrt(p_x^2 + q_x^2
+ 2 p_x q_x r cos theta) with matching time shifts.  Three facts make it the
right operation for this geometry, and all three are visible numerically:

* it preserves constants exactly (the averaging weights sum to 1),
* the characters turn it into multiplication —
  (translate psi)(p, q) = psi(p) psi(q),
* the convolution it induces is commutative and multiplicative on total
  mass, and the heat family is a semigroup under it.

Run:  python3 demos/03_translation_and_convolution.py
"""

import numpy as np

from laghyp import (
    GridFunction,
    HeatParams,
    TimeGrid,
    convolve,
    heat_kernel_grid,
    hypergroup_character,
    integrate_grid,
    radial_grid,
    translate,
    translation_rule,
)

print(__doc__)

alpha = 0.5
rule = translation_rule(alpha)

# ---------------------------------------------------------------------------
# 1. Characters diagonalize translation
radial = radial_grid(alpha, 4.0, n_panels=8, nodes_per_panel=24)
tg = TimeGrid(8.0, 2048)
lam, m = 1.0, 3
psi = GridFunction(
    radial, tg,
    hypergroup_character(alpha, lam, m, radial.nodes[:, None], tg.nodes[None, :]),
)
p, q = (0.7, 0.3), (1.1, -0.4)
lhs = translate(psi, p, q, rule)
rhs = hypergroup_character(alpha, lam, m, *p) * hypergroup_character(alpha, lam, m, *q)
print(f"translate(psi_{{1,{m}}}) at p={p}, q={q}:")
print(f"  averaged value  {lhs:+.10f}")
print(f"  psi(p) psi(q)   {rhs:+.10f}")
print(f"  |difference|    {abs(lhs - rhs):.2e}\n")

ones = GridFunction(radial, tg, np.ones_like(np.real(psi.values)))
print(f"translate(1) = {np.real(translate(ones, p, q, rule)):.15f}  (constants are exact)\n")

# ---------------------------------------------------------------------------
# 2. Heat semigroup under convolution: h_{s1} * h_{s2} = h_{s1+s2}
radial = radial_grid(0.0, 7.5, n_panels=8, nodes_per_panel=12)
tg = TimeGrid(13.0, 512)
k1 = heat_kernel_grid(HeatParams(alpha=0.0, s=0.25), radial, tg)
k2 = heat_kernel_grid(HeatParams(alpha=0.0, s=0.5), radial, tg)
print("convolving h_0.25 with h_0.5 (takes ~30s on the verification grids)...")
conv = convolve(k1, k2, stride=2)
exact = heat_kernel_grid(HeatParams(alpha=0.0, s=0.75), conv.radial, conv.time)
gap = float(np.max(np.abs(conv.values - exact.values)) / np.max(np.abs(exact.values)))
print(f"  sup-norm relative gap vs h_0.75: {gap:.2e}")

mass = complex(integrate_grid(conv)).real
m1 = complex(integrate_grid(k1)).real
m2 = complex(integrate_grid(k2)).real
print(f"  total mass of the product {mass:.8f} vs product of masses {m1 * m2:.8f}")
