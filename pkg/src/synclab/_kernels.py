"""Compiled inner loops for orbit and chain iteration.

All sequential recurrences live here; everything else in the package is
vectorized numpy. The quadratic map is inlined as ``c * (1 - 2*x*x)`` so that
the decoupled (k=0) and fully coupled (k=1) limits reproduce the autonomous
iterations bit for bit.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def iterate_map(c, x0, n):
    xs = np.empty(n)
    x = x0
    xs[0] = x
    for i in range(1, n):
        x = c * (1.0 - 2.0 * x * x)
        xs[i] = x
    return xs


@njit(cache=True)
def iterate_coupled(c1, c2, k, x0, y0, n):
    xs = np.empty(n)
    ys = np.empty(n)
    x = x0
    y = y0
    xs[0] = x
    ys[0] = y
    for i in range(1, n):
        fx = c1 * (1.0 - 2.0 * x * x)
        # at k=1 this is exactly fx, at k=0 exactly the autonomous slave step
        y = (1.0 - k) * (c2 * (1.0 - 2.0 * y * y)) + k * fx
        x = fx
        xs[i] = x
        ys[i] = y
    return xs, ys


@njit(cache=True)
def iterate_chain(c2, k, y0, omegas):
    n = omegas.size + 1
    ys = np.empty(n)
    y = y0
    ys[0] = y
    for i in range(1, n):
        y = (1.0 - k) * (c2 * (1.0 - 2.0 * y * y)) + k * omegas[i - 1]
        ys[i] = y
    return ys
