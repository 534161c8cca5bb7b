"""Double-double helpers for series with heavy cancellation.

A value is an unevaluated sum ``(hi, lo)`` of two doubles. The building blocks
are the classical error-free transformations (Knuth twoSum, Dekker split and
twoProd); everything runs elementwise on numpy arrays.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    # requires |a| >= |b| elementwise
    s = a + b
    err = b - (s - a)
    return s, err


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add(xhi, xlo, yhi, ylo):
    s, e = two_sum(xhi, yhi)
    return quick_two_sum(s, e + xlo + ylo)


def dd_mul(xhi, xlo, yhi, ylo):
    p, e = two_prod(xhi, yhi)
    return quick_two_sum(p, e + xhi * ylo + xlo * yhi)


def dd_div(xhi, xlo, yhi, ylo):
    q1 = xhi / yhi
    phi, plo = dd_mul(q1, np.zeros_like(q1) if hasattr(q1, "shape") else 0.0, yhi, ylo)
    rhi, rlo = dd_add(xhi, xlo, -phi, -plo)
    q2 = (rhi + rlo) / yhi
    return quick_two_sum(q1, q2)


def dd_neg(xhi, xlo):
    return -xhi, -xlo
