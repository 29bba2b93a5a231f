"""Finite-difference weight generation and stencil application.

Weights come from Fornberg's recursion, so arbitrary node sets are
supported; the central equispaced stencils used for phase derivatives are
the special case offsets = -m..m.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def fornberg_weights(order: int, x0: float, nodes) -> np.ndarray:
    """Weights w with sum_i w[i] f(nodes[i]) ~ f^(order)(x0).

    Classical recursion (Fornberg 1988); exact for polynomials of degree
    len(nodes) - 1.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    if order >= n:
        raise ValueError("need at least order+1 nodes")
    c = np.zeros((n, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


@lru_cache(maxsize=None)
def central_stencil(order: int, half_width: int | None = None):
    """(offsets, weights) for an equispaced central stencil of accuracy >= 2.

    Minimal half-width is ceil(order/2); widening raises the degree of
    exactness to 2*half_width (+1 by symmetry for even orders).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    m = max(half_width or 0, (order + 1) // 2)
    offsets = np.arange(-m, m + 1, dtype=float)
    w = fornberg_weights(order, 0.0, offsets)
    return offsets, w


def stencil_apply_1d(f, x0: float, order: int, step: float, half_width: int | None = None) -> float:
    """Apply a central stencil to a scalar callable at x0."""
    offsets, w = central_stencil(order, half_width)
    vals = np.array([f(x0 + o * step) for o in offsets])
    return float(np.dot(w, vals) / step**order)


def richardson_1d(f, x0: float, order: int, step: float, half_width: int | None = None):
    """Central difference at steps h and h/2 with Richardson extrapolation.

    Returns (value, error_estimate). The estimate is the h/2-level leading
    error |D_{h/2} - R|, a deliberate overestimate of the extrapolated
    value's own error, plus a rounding floor.
    """
    d_h = stencil_apply_1d(f, x0, order, step, half_width)
    d_h2 = stencil_apply_1d(f, x0, order, step / 2.0, half_width)
    r = (4.0 * d_h2 - d_h) / 3.0
    _, w = central_stencil(order, half_width)
    rounding = 1e-15 * float(np.sum(np.abs(w))) / (step / 2.0) ** order
    err = abs(d_h2 - r) + rounding
    return r, err


def mixed_partial(f, point, alpha, steps):
    """Tensor-product central difference for a multi-index derivative.

    f maps an array of points (k, d) -> (k,), point is (d,), alpha a
    multi-index over the d axes, steps the per-axis step sizes.
    """
    point = np.asarray(point, dtype=float)
    alpha = tuple(int(a) for a in alpha)
    axes = [i for i, a in enumerate(alpha) if a > 0]
    grids = []
    weights = []
    for i in axes:
        off, w = central_stencil(alpha[i])
        grids.append(off * steps[i])
        weights.append(w / steps[i] ** alpha[i])
    if not axes:
        return float(f(point[None, :])[0])
    mesh = np.meshgrid(*grids, indexing="ij")
    wmesh = np.meshgrid(*weights, indexing="ij")
    pts = np.tile(point, (mesh[0].size, 1))
    for k, i in enumerate(axes):
        pts[:, i] += mesh[k].ravel()
    wtot = np.ones(mesh[0].size)
    for k in range(len(axes)):
        wtot *= wmesh[k].ravel()
    return float(np.dot(wtot, f(pts)))
