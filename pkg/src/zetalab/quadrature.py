"""Quadrature helpers shared by the Mellin-transform and contour machinery.

Everything here is built for batch evaluation: integrands take numpy arrays
of points, grids are refined globally (or panel-wise for line integrals), and
all reductions run in a fixed order so results are bit-stable.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=32)
def _gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def composite_gl(a: float, b: float, panels: int, order: int = 16):
    """Nodes and weights of a uniform composite Gauss-Legendre rule on [a, b]."""
    x, w = _gl_nodes(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def refine_until_stable(values_at, initial_panels: int, target: float,
                        max_doublings: int = 10):
    """Run values_at(panels) with doubling panel counts until two consecutive
    levels differ by at most target (max-abs over the returned array)."""
    panels = initial_panels
    prev = None
    for _ in range(max_doublings + 1):
        cur = values_at(panels)
        if prev is not None:
            err = float(np.max(np.abs(cur - prev)))
            if err <= target:
                return cur, err
        prev = cur
        panels *= 2
    raise QuadratureError(
        f"no convergence to {target} after {max_doublings} doublings (final {panels // 2} panels)"
    )


def kahan_sum(terms) -> complex:
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for t in terms:
        y = t - comp
        tmp = total + y
        comp = (tmp - total) - y
        total = tmp
    return total


def adaptive_line_integral(gbatch, z0: complex, z1: complex, target: float,
                           initial_panels: int = 8, order: int = 12,
                           max_waves: int = 14) -> complex:
    """integral of g along the straight segment z0 -> z1.

    Panels are bisected (wave by wave, with all new evaluations batched into
    one gbatch call per wave) until each panel's two-half refinement agrees
    with its parent within its share of the target.  Accepted contributions
    are summed in parameter order, compensated.
    """
    dz = z1 - z0
    length = abs(dz)
    if length == 0.0:
        return 0.0 + 0.0j
    x, w = _gl_nodes(order)
    xs = (x + 1.0) / 2.0  # nodes on [0, 1]
    ws = w / 2.0

    def panel_nodes(intervals):
        u0 = intervals[:, 0][:, None]
        du = (intervals[:, 1] - intervals[:, 0])[:, None]
        return u0 + du * xs[None, :]

    def panel_values(intervals):
        u = panel_nodes(intervals)
        vals = gbatch(z0 + u.ravel() * dz).reshape(u.shape)
        return (vals * ws[None, :]).sum(axis=1) * (intervals[:, 1] - intervals[:, 0])

    pending = np.linspace(0.0, 1.0, initial_panels + 1)
    pending = np.column_stack([pending[:-1], pending[1:]])
    coarse = panel_values(pending)
    accepted: list[tuple[float, complex]] = []

    for _ in range(max_waves):
        lefts = np.column_stack([pending[:, 0], (pending[:, 0] + pending[:, 1]) / 2.0])
        rights = np.column_stack([lefts[:, 1], pending[:, 1]])
        halves = np.vstack([lefts, rights])
        vals = panel_values(halves)
        nleft = len(pending)
        refined = vals[:nleft] + vals[nleft:]
        err = np.abs(refined - coarse)
        tol = target * (pending[:, 1] - pending[:, 0])
        done = err <= tol
        for i in np.nonzero(done)[0]:
            accepted.append((pending[i, 0], complex(refined[i])))
        if done.all():
            break
        keep = ~done
        pending = np.vstack([lefts[keep], rights[keep]])
        coarse = np.concatenate([vals[:nleft][keep], vals[nleft:][keep]])
    else:
        raise QuadratureError(f"line integral did not converge to {target} in {max_waves} waves")

    accepted.sort(key=lambda item: item[0])
    return kahan_sum(v for _, v in accepted) * dz
