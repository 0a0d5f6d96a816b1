"""Deterministic SVG rendering of level sets, rays, and traced solutions.

Output is plain SVG 1.1 text with coordinates rounded to 1e-3 pixels, so
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import math

import numpy as np

from .charges import Geometry
from .config import FigureSpec
from .contour import Window, extract_level_set
from .levelcurve import SolutionCurve, level_context
from .rays import ray_set
from .tolerances import DEFAULT_TOL, Tolerances

_W = 640
_H = 640


class FigureError(ValueError):
    pass


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _Mapper:
    def __init__(self, window: Window):
        self.window = window
        self.sx = _W / (window.xmax - window.xmin)
        self.sy = _H / (window.ymax - window.ymin)

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return ((x - self.window.xmin) * self.sx,
                _H - (y - self.window.ymin) * self.sy)


def _polyline(points, cls: str, style: str, mapper: _Mapper) -> str:
    coords = " ".join(f"{_fmt(px)},{_fmt(py)}"
                      for px, py in (mapper(x, y) for x, y in points))
    return f'<polyline class="{cls}" points="{coords}" style="{style}" fill="none"/>'


def _clip_ray(phi: float, window: Window):
    """Portion of the ray {r e^(i phi): r >= 0} inside the window, or None."""
    dx, dy = math.cos(phi), math.sin(phi)
    t_lo, t_hi = 0.0, math.inf
    for d, lo, hi in ((dx, window.xmin, window.xmax),
                      (dy, window.ymin, window.ymax)):
        if abs(d) < 1e-15:
            if not lo <= 0.0 <= hi:
                return None
            continue
        t0, t1 = lo / d, hi / d
        if t0 > t1:
            t0, t1 = t1, t0
        t_lo, t_hi = max(t_lo, t0), min(t_hi, t1)
    if t_hi <= t_lo:
        return None
    return ((t_lo * dx, t_lo * dy), (t_hi * dx, t_hi * dy))


def render_figure(g: Geometry, spec: FigureSpec,
                  curve: SolutionCurve | None = None,
                  tol: Tolerances = DEFAULT_TOL) -> str:
    """Level-set figure: contour polylines, ray overlays, endpoint markers."""
    window = spec.window
    for name, (x, y) in (("(1,q)", (1.0, g.q)), (("(a,p)"), (g.a, g.p))):
        if not window.contains(x, y):
            raise FigureError(f"figure window must contain endpoint {name}")
    ctx = level_context(g, tol)
    mapper = _Mapper(window)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]

    if "rays_top" in spec.overlays:
        # zero level of Phi: dotted rays of the top level set
        for phi_ang in ray_set(g.n, ctx.theta_hat, g.n).angles:
            seg = _clip_ray(phi_ang, window)
            if seg:
                parts.append(_polyline(
                    seg, "ray-top",
                    "stroke:#888888;stroke-width:1;stroke-dasharray:2,4", mapper))
    if "rays_vertical" in spec.overlays:
        # vertical-tangent locus: dashed rays of the next level down
        for phi_ang in ray_set(g.n - 1, ctx.theta_hat, g.n).angles:
            seg = _clip_ray(phi_ang, window)
            if seg:
                parts.append(_polyline(
                    seg, "ray-vertical",
                    "stroke:#bb4444;stroke-width:1;stroke-dasharray:8,4", mapper))

    if "level_set" in spec.overlays:
        contours = extract_level_set(ctx, window, spec.samples, spec.samples)
        for poly in contours.polylines:
            parts.append(_polyline(
                poly, "level", "stroke:#3465a4;stroke-width:1.5", mapper))

    if "solution" in spec.overlays and curve is not None:
        pts = np.column_stack([curve.x, curve.f])
        parts.append(_polyline(
            pts, "solution", "stroke:#2a7d2a;stroke-width:2.5", mapper))

    if "endpoints" in spec.overlays:
        for x, y in ((1.0, g.q), (g.a, g.p)):
            px, py = mapper(x, y)
            parts.append(f'<circle class="endpoint" cx="{_fmt(px)}" '
                         f'cy="{_fmt(py)}" r="4" fill="#cc4400"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
