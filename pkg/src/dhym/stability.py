"""Stability verdicts and the existence decision.

Per-dimension stability asks that Im(i^(n-k) e^(-i theta_hat) z^k) keep
one sign over both generators z1 = 1+iq, z2 = a+ip; one-signedness for
every k in 1..n-1 suffices for a solution (the sign may differ across k).
The necessary-and-sufficient route instead checks that the average angle
lifts and that both divisor angles (n-1)*arg(z) fall within pi/2 of the
lifted angle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

from .charges import (DegenerateGeometryError, Geometry, charge_report,
                      degeneracy_check, theta_hat)
from .lifting import LiftedAngle, LiftUndefined, OriginHit, cxy_path_lift, sector_lift
from .rays import SectorVerdict, Sign, sector_of
from .tolerances import DEFAULT_TOL, Tolerances


class KVerdict(Enum):
    POSITIVE_STABLE = "positive_stable"
    NEGATIVE_STABLE = "negative_stable"
    UNSTABLE = "unstable"
    INCONCLUSIVE = "inconclusive"


class Overall(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PerK:
    k: int
    sign_h: SectorVerdict  # sector of z2 = a+ip
    sign_e: SectorVerdict  # sector of z1 = 1+iq
    verdict: KVerdict


@dataclass(frozen=True)
class StabilityReport:
    per_k: dict[int, PerK]
    overall: Overall
    supercritical: bool | None = None


class Existence(Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    INCONCLUSIVE = "inconclusive"


class Route(Enum):
    THEOREM_SUFFICIENT = "stability_sufficient"
    THEOREM_BICONDITIONAL = "lift_and_divisor_bounds"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ExistenceVerdict:
    value: Existence
    route: Route
    notes: dict = field(default_factory=dict)


class BoundsStatus(Enum):
    OK = "ok"
    FAIL = "fail"
    MARGINAL = "marginal"


@dataclass(frozen=True)
class BoundsCheck:
    status: BoundsStatus
    which: str | None  # offending divisor, "H" or "E"
    margin: float  # min over divisors of pi/2 - |divisor_angle - lifted|


def _combine(sh: SectorVerdict, se: SectorVerdict) -> KVerdict:
    if sh.value is Sign.ON_RAY or se.value is Sign.ON_RAY:
        return KVerdict.INCONCLUSIVE
    if sh.value is se.value:
        return (KVerdict.POSITIVE_STABLE if sh.value is Sign.POSITIVE
                else KVerdict.NEGATIVE_STABLE)
    return KVerdict.UNSTABLE


def stability_verdict(g: Geometry, tol: Tolerances = DEFAULT_TOL) -> StabilityReport:
    """Per-dimension one-signedness of both generators, combined overall."""
    th, _ = theta_hat(g, tol)  # raises DegenerateGeometryError
    per_k = {}
    for k in range(1, g.n):
        sh = sector_of(g.z2, k, th, g.n, tol)
        se = sector_of(g.z1, k, th, g.n, tol)
        per_k[k] = PerK(k=k, sign_h=sh, sign_e=se, verdict=_combine(sh, se))
    verdicts = {p.verdict for p in per_k.values()}
    if verdicts <= {KVerdict.POSITIVE_STABLE, KVerdict.NEGATIVE_STABLE}:
        overall = Overall.STABLE
    elif KVerdict.UNSTABLE in verdicts:
        overall = Overall.UNSTABLE
    else:
        overall = Overall.INCONCLUSIVE
    return StabilityReport(per_k=per_k, overall=overall)


def supercritical_check(lift: LiftedAngle, n: int) -> bool:
    """True when the lifted angle sits strictly in ((n-2) pi/2, n pi/2)."""
    return (n - 2) * math.pi / 2 < lift.lifted < n * math.pi / 2


def divisor_angle_bounds(g: Geometry, lift: LiftedAngle,
                         tol: Tolerances = DEFAULT_TOL) -> BoundsCheck:
    """Check |((n-1) arg z) - lifted| < pi/2 for both divisors H and E."""
    margin = math.inf
    which = None
    for name, z in (("H", g.z2), ("E", g.z1)):
        ang = (g.n - 1) * cmath.phase(z)
        m = math.pi / 2 - abs(ang - lift.lifted)
        if m < margin:
            margin, which = m, name
    if margin > tol.eps_angle:
        return BoundsCheck(BoundsStatus.OK, None, margin)
    if margin < -tol.eps_angle:
        return BoundsCheck(BoundsStatus.FAIL, which, margin)
    return BoundsCheck(BoundsStatus.MARGINAL, which, margin)


def existence_verdict(g: Geometry, tol: Tolerances = DEFAULT_TOL) -> ExistenceVerdict:
    """Combine the degenerate guard, the lift route, and the stability route.

    The lift route is authoritative: existence iff the sector lift is
    defined and both divisor bounds hold.  When the lift is undefined we
    report inconclusive rather than non-existence, since a different path
    could in principle still define a lift.  Stability is recorded and used
    as an independent certificate when the lift route is marginal.
    """
    rep = charge_report(g, tol)
    if rep.degenerate:
        return ExistenceVerdict(
            Existence.INCONCLUSIVE, Route.DEGENERATE,
            notes={"degenerate_m": degeneracy_check(g, tol), "r_x": rep.r_x})

    stab = stability_verdict(g, tol)
    notes: dict = {"lemma_stability": stab.overall.value}

    lift = sector_lift(g, tol)
    if isinstance(lift, LiftUndefined):
        notes["lift"] = "undefined"
        notes["lift_reason"] = lift.reason
        notes["lift_detail"] = lift.detail
        cxy = cxy_path_lift(g, tol)
        if isinstance(cxy, OriginHit):
            notes["volume_path"] = f"origin hit at t = {cxy.t_star:.9f}"
        else:
            notes["volume_path"] = f"lift {cxy.lifted:.9f} (corroborating only)"
        if stab.overall is Overall.STABLE:
            # stability guarantees the sector condition; reaching this branch
            # means the gap sits inside the angular deadband
            notes["anomaly"] = "stable but sector lift undefined (knife edge)"
        return ExistenceVerdict(Existence.INCONCLUSIVE,
                                Route.THEOREM_BICONDITIONAL, notes)

    notes["lift"] = lift.lifted
    notes["winding"] = lift.winding
    notes["supercritical"] = supercritical_check(lift, g.n)
    bounds = divisor_angle_bounds(g, lift, tol)
    notes["divisor_margin"] = bounds.margin
    if bounds.status is BoundsStatus.OK:
        route = (Route.THEOREM_SUFFICIENT if stab.overall is Overall.STABLE
                 else Route.THEOREM_BICONDITIONAL)
        return ExistenceVerdict(Existence.EXISTS, Route.THEOREM_BICONDITIONAL,
                                notes | {"also_certified_by_stability":
                                         stab.overall is Overall.STABLE,
                                         "sufficient_route": route.value})
    if bounds.status is BoundsStatus.FAIL:
        if stab.overall is Overall.STABLE:
            notes["anomaly"] = "stable yet divisor bound fails"
            return ExistenceVerdict(Existence.INCONCLUSIVE,
                                    Route.THEOREM_BICONDITIONAL, notes)
        notes["failed_divisor"] = bounds.which
        return ExistenceVerdict(Existence.NOT_EXISTS,
                                Route.THEOREM_BICONDITIONAL, notes)
    # marginal divisor bound
    if stab.overall is Overall.STABLE:
        return ExistenceVerdict(Existence.EXISTS, Route.THEOREM_SUFFICIENT,
                                notes | {"divisor_bound": "marginal"})
    return ExistenceVerdict(Existence.INCONCLUSIVE,
                            Route.THEOREM_BICONDITIONAL,
                            notes | {"divisor_bound": "marginal"})
