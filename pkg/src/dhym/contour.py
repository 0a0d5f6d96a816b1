"""Marching-squares extraction of level-set polylines.

This is the brute-force oracle for component questions: it never looks at
ray combinatorics, only at signs of Phi - c on a grid.  Segments are keyed
by the grid edge they cross, so chains stitch together exactly and each
connected component of the level set inside the window becomes one
polyline (open chain or closed loop).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .levelcurve import LevelSetContext

# local corner order: 0=(i,j), 1=(i+1,j), 2=(i+1,j+1), 3=(i,j+1)
# local edge ids and the corners they join
_EDGE_CORNERS = ((0, 1), (1, 2), (3, 2), (0, 3))
# edges adjacent to each corner, used to carve off saddle corners
_CORNER_EDGES = ((0, 3), (0, 1), (1, 2), (2, 3))


def _cell_segments(signs, center_positive: bool):
    """Edge-id pairs to join in one cell given the 4 corner signs."""
    crossed = [e for e, (ca, cb) in enumerate(_EDGE_CORNERS)
               if signs[ca] != signs[cb]]
    if not crossed:
        return ()
    if len(crossed) == 2:
        return (tuple(crossed),)
    # saddle: both diagonals uniform; carve off the corners whose sign
    # disagrees with the cell center
    minority = [c for c in range(4) if signs[c] != center_positive]
    return tuple(_CORNER_EDGES[c] for c in minority)


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax


@dataclass
class ContourSet:
    polylines: list  # list of (m, 2) float arrays
    cell_diag: float

    def component_near(self, point, radius: float | None = None) -> int | None:
        """Index of the polyline within radius (default 2 cell diagonals)."""
        if radius is None:
            radius = 2.0 * self.cell_diag
        p = np.asarray(point, dtype=float)
        best, best_d = None, radius
        for idx, poly in enumerate(self.polylines):
            d = _point_polyline_distance(p, poly)
            if d <= best_d:
                best, best_d = idx, d
        return best

    def same_component(self, p1, p2, radius: float | None = None) -> bool | None:
        """True/False when both points locate on a polyline, else None."""
        c1 = self.component_near(p1, radius)
        c2 = self.component_near(p2, radius)
        if c1 is None or c2 is None:
            return None
        return c1 == c2


def _point_polyline_distance(p: np.ndarray, poly: np.ndarray) -> float:
    a = poly[:-1]
    b = poly[1:]
    if len(poly) == 1:
        return float(np.hypot(*(poly[0] - p)))
    ab = b - a
    ap = p[None, :] - a
    denom = np.einsum("ij,ij->i", ab, ab)
    t = np.clip(np.divide(np.einsum("ij,ij->i", ap, ab), denom,
                          out=np.zeros_like(denom), where=denom > 0), 0.0, 1.0)
    proj = a + t[:, None] * ab
    d = np.hypot(proj[:, 0] - p[0], proj[:, 1] - p[1])
    return float(d.min())


def marching_squares(values: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> list:
    """Polylines of the zero level of ``values`` sampled at xs x ys.

    values[i, j] corresponds to (xs[i], ys[j]).  Returns a list of (m, 2)
    arrays; loops repeat their first vertex at the end.
    """
    nx, ny = values.shape
    pos = values > 0

    def interp(i0, j0, i1, j1):
        v0 = values[i0, j0]
        v1 = values[i1, j1]
        t = v0 / (v0 - v1) if v0 != v1 else 0.5
        t = min(max(t, 0.0), 1.0)
        return (xs[i0] + t * (xs[i1] - xs[i0]),
                ys[j0] + t * (ys[j1] - ys[j0]))

    # adjacency over canonical edge keys ((i,j),(i',j')) of crossed edges
    adj: dict = {}
    points: dict = {}

    def edge_key(i, j, local):
        if local == 0:
            return ((i, j), (i + 1, j))
        if local == 1:
            return ((i + 1, j), (i + 1, j + 1))
        if local == 2:
            return ((i, j + 1), (i + 1, j + 1))
        return ((i, j), (i, j + 1))

    for i in range(nx - 1):
        for j in range(ny - 1):
            signs = (pos[i, j], pos[i + 1, j], pos[i + 1, j + 1],
                     pos[i, j + 1])
            center = (values[i, j] + values[i + 1, j]
                      + values[i + 1, j + 1] + values[i, j + 1])
            for la, lb in _cell_segments(signs, center > 0):
                ka, kb = edge_key(i, j, la), edge_key(i, j, lb)
                if ka not in points:
                    points[ka] = interp(*ka[0], *ka[1])
                if kb not in points:
                    points[kb] = interp(*kb[0], *kb[1])
                adj.setdefault(ka, []).append(kb)
                adj.setdefault(kb, []).append(ka)

    return _stitch(adj, points)


def _stitch(adj: dict, points: dict) -> list:
    visited = set()
    polylines = []

    def walk(start, first):
        chain = [start, first]
        visited.add(_pair(start, first))
        cur, prev = first, start
        while True:
            nxt = None
            for cand in adj[cur]:
                if _pair(cur, cand) not in visited:
                    nxt = cand
                    break
            if nxt is None:
                break
            visited.add(_pair(cur, nxt))
            chain.append(nxt)
            prev, cur = cur, nxt
        return chain

    def _pair(a, b):
        return (a, b) if a <= b else (b, a)

    # open chains first: start at degree-1 nodes
    for node, nbrs in adj.items():
        if len(nbrs) == 1:
            if _pair(node, nbrs[0]) in visited:
                continue
            chain = walk(node, nbrs[0])
            polylines.append(np.array([points[k] for k in chain]))
    # remaining loops
    for node, nbrs in adj.items():
        for nb in nbrs:
            if _pair(node, nb) not in visited:
                chain = walk(node, nb)
                polylines.append(np.array([points[k] for k in chain]))
                break
    return polylines


def extract_level_set(ctx: LevelSetContext, window: Window,
                      nx: int = 256, ny: int = 256) -> ContourSet:
    """Contours of Phi = c on an (nx+1) x (ny+1) node grid over the window."""
    if nx < 64 or ny < 64:
        raise ValueError("oracle grid must be at least 64x64 cells")
    xs = np.linspace(window.xmin, window.xmax, nx + 1)
    ys = np.linspace(window.ymin, window.ymax, ny + 1)
    zx = xs[:, None] + 1j * ys[None, :]
    values = np.imag(np.exp(-1j * ctx.theta_hat) * zx ** ctx.n) - ctx.c
    # nudge exact zeros off the grid so every crossing is a sign change
    eps = 1e-300 + 1e-15 * float(np.max(np.abs(values)))
    values = np.where(values == 0.0, eps, values)
    polylines = marching_squares(values, xs, ys)
    dx = (window.xmax - window.xmin) / nx
    dy = (window.ymax - window.ymin) / ny
    return ContourSet(polylines=polylines, cell_diag=math.hypot(dx, dy))
