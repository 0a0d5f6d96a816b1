"""Level curves of Phi(x, y) = Im(e^(-i theta_hat) (x+iy)^n) and the
boundary-value solver.

Both endpoints (1, q) and (a, p) always share the level value c, so a
solution is a graphical arc of the level curve over [1, a].  The trace
integrates dy/dx = -Phi_x / Phi_y with an embedded 4(5) pair and projects
every accepted point back onto Phi = c with a Newton step in y.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .charges import Geometry, theta_hat
from .rays import Sign, nearest_ray_index, ray_set, rays_strictly_between, sector_of
from .tolerances import DEFAULT_TOL, Tolerances


class TraceError(RuntimeError):
    pass


class GraphicalPreconditionError(TraceError):
    """trace_solution called on an instance without a graphical arc."""


class VerticalTangentError(TraceError):
    """|Phi_y| collapsed mid-trace; contradicts the graphical check."""


class StepLimitExceededError(TraceError):
    pass


@dataclass(frozen=True)
class LevelSetContext:
    n: int
    theta_hat: float
    c: float
    scale: float  # max(1, |z1|**n, |z2|**n)


@dataclass(frozen=True)
class SameComponentResult:
    status: str  # "same" | "different" | "on_zero_level"
    rays_between: int = 0
    same_ray: bool | None = None


@dataclass(frozen=True)
class GraphicalResult:
    yes: bool
    reason: str = ""


@dataclass(frozen=True)
class SolutionCurve:
    x: np.ndarray
    f: np.ndarray
    f_prime: np.ndarray
    c: float
    residual_max: float
    residual_l2: float
    theta_pointwise: np.ndarray
    endpoint_error: float


@dataclass(frozen=True)
class VerificationReport:
    residual_max: float
    residual_bound: float
    residual_ok: bool
    theta_oscillation: float
    oscillation_ok: bool
    theta_mean: float
    theta_matches_average_angle: bool
    theta_in_range: bool
    endpoint_error: float
    endpoint_ok: bool
    lift_match: bool | None
    passed: bool


def phi(x: float, y: float, ctx: LevelSetContext) -> float:
    """Im(e^(-i theta_hat) (x+iy)^n)."""
    return (cmath.exp(-1j * ctx.theta_hat) * complex(x, y) ** ctx.n).imag


def phi_gradient(x: float, y: float, ctx: LevelSetContext) -> tuple[float, float]:
    """(Phi_x, Phi_y) = n (Im, Re) of e^(-i theta_hat) (x+iy)^(n-1)."""
    w = ctx.n * cmath.exp(-1j * ctx.theta_hat) * complex(x, y) ** (ctx.n - 1)
    return w.imag, w.real


def level_context(g: Geometry, tol: Tolerances = DEFAULT_TOL) -> LevelSetContext:
    """Level value shared by (1, q) and (a, p); verified from both ends."""
    th, _ = theta_hat(g, tol)
    scale = max(1.0, g.scale)
    ctx = LevelSetContext(n=g.n, theta_hat=th, c=0.0, scale=scale)
    c1 = phi(1.0, g.q, ctx)
    c2 = phi(g.a, g.p, ctx)
    if abs(c1 - c2) > 1e-9 * scale:
        raise TraceError(f"endpoint level values disagree: {c1!r} vs {c2!r}")
    return LevelSetContext(n=g.n, theta_hat=th, c=0.5 * (c1 + c2), scale=scale)


def same_component(g: Geometry, tol: Tolerances = DEFAULT_TOL) -> SameComponentResult:
    """Do the two endpoints sit on the same component of the level set?

    For c = 0 the level set is n rays; the endpoints match iff they sit on
    the same ray.  Otherwise components occupy alternating sectors, so the
    endpoints agree iff no top-level ray lies strictly between them.
    """
    ctx = level_context(g, tol)
    a1 = cmath.phase(g.z1)
    a2 = cmath.phase(g.z2)
    rs = ray_set(g.n, ctx.theta_hat, g.n)
    # |c| is bounded by min(|z1|, |z2|)**n, so the zero test must use that
    # scale; against the max it would misfire whenever |z2| >> |z1|
    zero_scale = min(abs(g.z1), abs(g.z2)) ** g.n
    if abs(ctx.c) <= tol.eps_zero * zero_scale:
        v1 = sector_of(g.z1, g.n, ctx.theta_hat, g.n, tol)
        v2 = sector_of(g.z2, g.n, ctx.theta_hat, g.n, tol)
        on_rays = v1.value is Sign.ON_RAY and v2.value is Sign.ON_RAY
        same_ray = (on_rays and
                    nearest_ray_index(a1, rs) == nearest_ray_index(a2, rs))
        return SameComponentResult("on_zero_level", same_ray=same_ray)
    nb = rays_strictly_between(a1, a2, rs, tol)
    if nb == 0:
        return SameComponentResult("same")
    return SameComponentResult("different", rays_between=nb)


def graphical_existence(g: Geometry, tol: Tolerances = DEFAULT_TOL) -> GraphicalResult:
    """Can the endpoints be joined by a graphical arc (no vertical slope)?"""
    ctx = level_context(g, tol)
    sc = same_component(g, tol)
    if sc.status == "different":
        return GraphicalResult(False, f"endpoints on different components "
                                      f"({sc.rays_between} rays between)")
    if sc.status == "on_zero_level" and not sc.same_ray:
        return GraphicalResult(False, "zero level set: endpoints on different rays")
    if sc.status == "on_zero_level":
        # linear solution along a common ray; a ray never has vertical slope
        return GraphicalResult(True)
    a1 = cmath.phase(g.z1)
    a2 = cmath.phase(g.z2)
    rs_v = ray_set(g.n - 1, ctx.theta_hat, g.n)
    if rays_strictly_between(a1, a2, rs_v, tol) > 0:
        return GraphicalResult(False, "vertical-tangent ray between endpoints")
    for name, z in (("(1,q)", g.z1), ("(a,p)", g.z2)):
        if sector_of(z, g.n - 1, ctx.theta_hat, g.n, tol).value is Sign.ON_RAY:
            return GraphicalResult(False, f"endpoint {name} on a "
                                          f"vertical-tangent ray (inconclusive)")
    return GraphicalResult(True)


def _project_onto_level(x: float, y: float, ctx: LevelSetContext,
                        tol: Tolerances, max_iter: int = 16) -> float:
    """Newton step in y until |Phi - c| <= tol_level * scale."""
    target = tol.tol_level * ctx.scale
    grad_scale = ctx.n * max(1.0, math.hypot(x, y)) ** (ctx.n - 1)
    for _ in range(max_iter):
        r = phi(x, y, ctx) - ctx.c
        if abs(r) <= target:
            return y
        gy = phi_gradient(x, y, ctx)[1]
        if abs(gy) <= 1e-12 * grad_scale:
            raise VerticalTangentError(f"|Phi_y| ~ 0 during projection at x={x!r}")
        y -= r / gy
    raise StepLimitExceededError(f"level projection failed to converge at x={x!r}")


# Cash-Karp embedded 4(5) coefficients
_CK_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_CK_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_CK_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4)


def _slope(x: float, y: float, ctx: LevelSetContext) -> float:
    gx, gy = phi_gradient(x, y, ctx)
    grad_scale = ctx.n * max(1.0, math.hypot(x, y)) ** (ctx.n - 1)
    if abs(gy) <= 1e-12 * grad_scale:
        raise VerticalTangentError(f"vertical tangent at x={x!r}, y={y!r}")
    return -gx / gy


def _linear_curve(g: Geometry, ctx: LevelSetContext, tol: Tolerances) -> SolutionCurve:
    xs = np.linspace(1.0, g.a, tol.curve_samples)
    f = g.q * xs
    fp = np.full_like(xs, g.q)
    return _assemble_curve(g, ctx, xs, f, fp)


def _assemble_curve(g: Geometry, ctx: LevelSetContext, xs, f, fp) -> SolutionCurve:
    zr = 1.0 + 1j * f / xs
    res = np.imag(np.exp(-1j * ctx.theta_hat) * zr ** (ctx.n - 1) * (1.0 + 1j * fp))
    theta = (ctx.n - 1) * np.arctan2(f, xs) + np.arctan(fp)
    return SolutionCurve(
        x=xs, f=f, f_prime=fp, c=ctx.c,
        residual_max=float(np.max(np.abs(res))),
        residual_l2=float(np.sqrt(np.mean(res ** 2))),
        theta_pointwise=theta,
        endpoint_error=float(abs(f[-1] - g.p)),
    )


def trace_solution(g: Geometry, tol: Tolerances = DEFAULT_TOL) -> SolutionCurve:
    """Trace the level curve from (1, q) to x = a on a fixed output grid.

    Adaptive Cash-Karp 4(5) steps between grid nodes, each accepted point
    projected back onto Phi = c.  The reported slope is the exact level-set
    slope at the projected samples.
    """
    ge = graphical_existence(g, tol)
    if not ge.yes:
        raise GraphicalPreconditionError(ge.reason)
    ctx = level_context(g, tol)
    sc = same_component(g, tol)
    if sc.status == "on_zero_level":
        return _linear_curve(g, ctx, tol)

    m = tol.curve_samples
    xs = np.linspace(1.0, g.a, m)
    f = np.empty(m)
    fp = np.empty(m)
    f[0] = g.q
    fp[0] = _slope(1.0, g.q, ctx)

    span = g.a - 1.0
    h = span * tol.initial_step_frac
    h_min = span * tol.min_step_frac
    err_tol = 1e-10
    y_scale = max(1.0, abs(g.p), abs(g.q))
    x, y = 1.0, g.q
    max_steps = 200_000
    steps = 0
    ks = [0.0] * 6

    for j in range(1, m):
        target = xs[j]
        while x < target - 1e-15 * span:
            steps += 1
            if steps > max_steps:
                raise StepLimitExceededError(f"step budget exhausted at x={x!r}")
            hs = min(h, target - x)
            ks[0] = _slope(x, y, ctx)
            rejected = False
            for i in range(1, 6):
                yi = y + hs * sum(a * k for a, k in zip(_CK_A[i], ks))
                ci = sum(_CK_A[i])
                try:
                    ks[i] = _slope(x + ci * hs, yi, ctx)
                except VerticalTangentError:
                    rejected = True
                    break
            if not rejected:
                y5 = y + hs * sum(b * k for b, k in zip(_CK_B5, ks))
                y4 = y + hs * sum(b * k for b, k in zip(_CK_B4, ks))
                err = abs(y5 - y4)
                tol_step = err_tol * (y_scale + abs(y5))
                rejected = err > tol_step
            if rejected:
                h = max(hs * 0.5, h_min)
                if hs <= h_min * 1.0000001 and rejected:
                    raise StepLimitExceededError(
                        f"minimum step reached at x={x!r} without convergence")
                continue
            x += hs
            y = _project_onto_level(x, y5, ctx, tol)
            if err > 0:
                h = min(span, hs * min(5.0, 0.9 * (tol_step / err) ** 0.2))
            else:
                h = min(span, hs * 5.0)
        x = target  # kill accumulated drift; projection keeps y on the level
        y = _project_onto_level(x, y, ctx, tol)
        f[j] = y
        fp[j] = _slope(x, y, ctx)

    return _assemble_curve(g, ctx, xs, f, fp)


def verify_solution(curve: SolutionCurve, g: Geometry,
                    tol: Tolerances = DEFAULT_TOL,
                    lift: float | None = None) -> VerificationReport:
    """Independent check of a traced curve against the original equation."""
    ctx = level_context(g, tol)
    zr = 1.0 + 1j * curve.f / curve.x
    res = np.imag(np.exp(-1j * ctx.theta_hat) * zr ** (ctx.n - 1)
                  * (1.0 + 1j * curve.f_prime))
    residual_max = float(np.max(np.abs(res)))
    zmax = float(np.max(np.hypot(curve.x, curve.f)))
    residual_bound = tol.tol_endpoint * (1.0 + zmax ** (ctx.n - 1))
    theta = ((ctx.n - 1) * np.arctan2(curve.f, curve.x)
             + np.arctan(curve.f_prime))
    osc = float(np.max(theta) - np.min(theta))
    mean = float(np.mean(theta))
    matches = abs(math.remainder(mean - ctx.theta_hat, math.tau)) <= tol.tol_angle
    in_range = -ctx.n * math.pi / 2 < mean < ctx.n * math.pi / 2
    endpoint_ok = curve.endpoint_error <= tol.tol_endpoint * max(1.0, abs(g.p))
    lift_match = None
    if lift is not None:
        lift_match = abs(mean - lift) <= tol.tol_angle
    passed = (residual_max <= residual_bound and osc <= tol.tol_angle
              and matches and in_range and endpoint_ok
              and lift_match is not False)
    return VerificationReport(
        residual_max=residual_max, residual_bound=residual_bound,
        residual_ok=residual_max <= residual_bound,
        theta_oscillation=osc, oscillation_ok=osc <= tol.tol_angle,
        theta_mean=mean, theta_matches_average_angle=matches,
        theta_in_range=in_range,
        endpoint_error=curve.endpoint_error, endpoint_ok=endpoint_ok,
        lift_match=lift_match, passed=passed,
    )
