"""Shared samplers and reference instances for the test suite."""

import math

import numpy as np
import pytest

from dhym.charges import Geometry, is_degenerate
from dhym.stability import Overall, stability_verdict


def random_geometry(rng, n_lo=2, n_hi=12, a_hi=10.0, pq=10.0):
    """One random non-degenerate instance from the standard pool."""
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        a = float(rng.uniform(1.0, a_hi))
        if a <= 1.0:
            continue
        p = float(rng.uniform(-pq, pq))
        q = float(rng.uniform(-pq, pq))
        g = Geometry(n, a, p, q)
        if not is_degenerate(g):
            return g


def sample_stable(rng, n_lo=2, n_hi=12, a_hi=10.0):
    """Random stability-certified instance.

    Both endpoint arguments are drawn inside a band narrower than one
    sector width, then filtered through the full verdict, so rejection
    stays cheap even for large n.
    """
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        a = float(rng.uniform(1.05, a_hi))
        base = float(rng.uniform(-math.pi / 2, math.pi / 2))
        half = math.pi / (2 * n)
        ph1 = min(max(base + float(rng.uniform(-half, half)), -1.4), 1.4)
        ph2 = min(max(base + float(rng.uniform(-half, half)), -1.4), 1.4)
        g = Geometry(n, a, a * math.tan(ph2), math.tan(ph1))
        if is_degenerate(g):
            continue
        if stability_verdict(g).overall is Overall.STABLE:
            return g


def collinear_geometry(n: int, a: float, lam: float) -> Geometry:
    """Classes proportional to the polarization: p = lambda*a, q = lambda."""
    return Geometry(n, a, lam * a, lam)


def degenerate_example() -> Geometry:
    """Dimension-3 instance with (a+ip)^3 = (1+2i)^3 exactly."""
    theta = 2.0 * math.pi / 3.0 - math.atan(2.0)
    r = math.sqrt(5.0)
    return Geometry(3, r * math.cos(theta), -r * math.sin(theta), 2.0)


def scaled_example() -> Geometry:
    """The degenerate instance with both classes doubled."""
    g = degenerate_example()
    return Geometry(3, g.a, 2.0 * g.p, 2.0 * g.q)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
