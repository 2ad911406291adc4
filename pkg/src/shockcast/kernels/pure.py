"""Numpy implementation of the scoring kernel.

Mirrors the compiled kernel term by term (same evaluation order, same
clamping conventions) so the two backends agree to floating-point
noise.
"""

from __future__ import annotations

import numpy as np


def _pow(base, exponent):
    # x ** 1.0 is exact; skip the libm call on the common path
    if exponent == 1.0:
        return base
    return base ** exponent


def score_sets(dz, dt, dxy, ridx, cidx, pair_offsets, g_abs, p_abs, alphas, vpow):
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10 = alphas
    n_sets = len(pair_offsets) - 1
    out = np.zeros(n_sets)
    if len(dz) == 0:
        return out

    scores = a1 * _pow(dz, a2)
    scores = scores - a3 * _pow(dt, a4)
    scores -= a5 * _pow(dxy, a6)
    gterm = a7 * _pow(g_abs, a8)
    pterm = a9 * _pow(p_abs, a10)
    scores -= gterm[ridx]
    scores -= gterm[cidx]
    scores -= pterm[ridx]
    scores -= pterm[cidx]

    omega = len(vpow)
    for s in range(n_sets):
        lo, hi = pair_offsets[s], pair_offsets[s + 1]
        m = hi - lo
        if m == 0:
            continue
        window = scores[lo:hi]
        k = min(omega, m)
        if k < m:
            window = np.partition(window, m - k)[m - k:]
        else:
            window = window.copy()
        window.sort()
        out[s] = float(np.dot(window, vpow[:k]))
    return out
