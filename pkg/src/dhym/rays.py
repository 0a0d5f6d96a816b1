"""Ray sets and alternating sectors in the right half plane.

For a level k the ray set collects the angles phi in [-pi/2, pi/2) with
sin((n-k)*pi/2 - theta_hat + k*phi) = 0; these are the directions where
Im(i^(n-k) e^(-i theta_hat) z^k) changes sign.  Adjacent rays bound
alternating positive/negative sectors, and consecutive levels interleave.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .charges import cpow
from .tolerances import DEFAULT_TOL, Tolerances

_HALF_PI = math.pi / 2.0


class Sign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ON_RAY = "on_ray"


@dataclass(frozen=True)
class SectorVerdict:
    value: Sign
    margin: float  # angular distance to the nearest ray of the level


@dataclass(frozen=True)
class RaySet:
    k: int
    n: int
    theta_hat: float
    angles: tuple[float, ...]  # strictly descending, each in [-pi/2, pi/2)


def ray_set(k: int, theta_hat: float, n: int) -> RaySet:
    """The k ray angles of the level in [-pi/2, pi/2), sorted descending."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    base = (theta_hat - (n - k) * _HALF_PI) / k
    # one representative in [-pi/2, pi/2); remainder lands in [-pi/2, pi/2]
    b0 = math.remainder(base, math.pi)
    if b0 >= _HALF_PI:
        b0 -= math.pi
    step = math.pi / k
    angles = []
    for j in range(k):
        phi = b0 - j * step
        if phi < -_HALF_PI - 1e-15:
            phi += math.pi
        elif phi < -_HALF_PI:
            phi = -_HALF_PI
        angles.append(phi)
    angles.sort(reverse=True)
    return RaySet(k=k, n=n, theta_hat=theta_hat, angles=tuple(angles))


def _ray_margin(arg_z: float, k: int, theta_hat: float, n: int) -> float:
    """Angular distance from arg(z) to the nearest ray of the level."""
    psi = (n - k) * _HALF_PI - theta_hat + k * arg_z
    return abs(math.remainder(psi, math.pi)) / k


def sector_of(z: complex, k: int, theta_hat: float, n: int,
              tol: Tolerances = DEFAULT_TOL) -> SectorVerdict:
    """Sign of Im(i^(n-k) e^(-i theta_hat) z^k), with an on-ray deadband."""
    if z == 0:
        raise ValueError("sector_of is undefined at z = 0")
    margin = _ray_margin(cmath.phase(z), k, theta_hat, n)
    if margin <= tol.eps_angle:
        return SectorVerdict(Sign.ON_RAY, margin)
    s = ((1j) ** ((n - k) % 4) * cmath.exp(-1j * theta_hat) * cpow(z, k)).imag
    return SectorVerdict(Sign.POSITIVE if s > 0 else Sign.NEGATIVE, margin)


@dataclass(frozen=True)
class AlternationResult:
    ok: bool
    interleaved: tuple[float, ...]
    detail: str = ""


def check_alternation(k: int, theta_hat: float, n: int,
                      atol: float = 1e-12) -> AlternationResult:
    """Verify that levels k and k-1 interleave with level k outermost.

    The expected order is phi_k^1 > phi_{k-1}^1 > phi_k^2 > ... >
    phi_{k-1}^{k-1} >= phi_k^k, where the final equality is allowed only
    when both angles equal -pi/2.
    """
    if not 2 <= k <= n:
        raise ValueError(f"k must lie in 2..{n}, got {k}")
    outer = ray_set(k, theta_hat, n).angles
    inner = ray_set(k - 1, theta_hat, n).angles
    merged = []
    for j in range(k - 1):
        merged.append(outer[j])
        merged.append(inner[j])
    merged.append(outer[k - 1])
    for i in range(len(merged) - 1):
        hi, lo = merged[i], merged[i + 1]
        last_pair = i == len(merged) - 2
        if hi > lo + atol:
            continue
        if last_pair and abs(hi + _HALF_PI) <= atol and abs(lo + _HALF_PI) <= atol:
            continue  # shared boundary ray at -pi/2
        return AlternationResult(
            False, tuple(merged),
            f"order violated at position {i}: {hi!r} !> {lo!r}")
    return AlternationResult(True, tuple(merged))


def rays_strictly_between(arg1: float, arg2: float, rs: RaySet,
                          tol: Tolerances = DEFAULT_TOL) -> int:
    """Count ray angles strictly inside (min, max), with an eps_angle band
    excluding near-endpoint rays."""
    lo, hi = min(arg1, arg2), max(arg1, arg2)
    return sum(1 for phi in rs.angles
               if lo + tol.eps_angle < phi < hi - tol.eps_angle)


def nearest_ray_index(arg_z: float, rs: RaySet) -> int:
    """Index into rs.angles of the ray closest to the given argument."""
    return min(range(len(rs.angles)), key=lambda i: abs(rs.angles[i] - arg_z))
