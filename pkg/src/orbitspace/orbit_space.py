"""Strip model of the orbit space of a skewed R-covered Anosov flow.

Points are pairs ``(u, s)`` with ``s - 1 < u < s``.  For the geodesic flow of
a hyperbolic surface the model is exact: ``s`` is a lift to R of the forward
ideal point of the orbit and ``u`` a lift of its backward ideal point, both in
the circle coordinate of :mod:`orbitspace.hyperbolic`.  Stable leaves are the
lines ``s = const`` and unstable leaves the lines ``u = const``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import tolerance
from .errors import DegeneratePair, DegeneratePoints, NotHyperbolic
from .hyperbolic import (
    CirclePoint,
    LiftedCircleMap,
    MobiusElement,
    axis_endpoints,
    canonical_lift_values,
    evaluate,
    is_hyperbolic,
    lift,
    wrap_angle,
)


@dataclass(frozen=True)
class OrbitPoint:
    u: float
    s: float

    def __post_init__(self):
        if not (self.s - 1.0 < self.u < self.s):
            raise ValueError(f"({self.u!r}, {self.s!r}) is outside the strip s-1 < u < s")

    def shift(self, k: int) -> "OrbitPoint":
        """The central translation (u, s) -> (u + k, s + k), i.e. eta^(2k)."""
        return OrbitPoint(self.u + k, self.s + k)

    def distance(self, other: "OrbitPoint") -> float:
        return max(abs(self.u - other.u), abs(self.s - other.s))


@dataclass(frozen=True)
class PointPair:
    """Forward and backward ideal points of an orbit on the universal circle."""

    a_plus: CirclePoint
    a_minus: CirclePoint

    def __post_init__(self):
        if tolerance.circle_distance(self.a_plus.angle, self.a_minus.angle) <= tolerance.eps():
            raise DegeneratePoints(f"pair endpoints coincide: {self.a_plus.angle}, {self.a_minus.angle}")

    def swapped(self) -> "PointPair":
        return PointPair(self.a_minus, self.a_plus)

    def image(self, g: MobiusElement) -> "PointPair":
        return PointPair(
            CirclePoint.wrap(g.act_circle(self.a_plus.angle)),
            CirclePoint.wrap(g.act_circle(self.a_minus.angle)),
        )


# leaf-space maps ---------------------------------------------------------


def eta_s(s: float) -> float:
    """Upper bound in the unstable leaf space of the leaves meeting stable leaf s."""
    return s


def eta_u(u: float) -> float:
    """Upper bound in the stable leaf space of the leaves meeting unstable leaf u."""
    return u + 1.0


def eta_minus_u(s: float) -> float:
    """Lower bound in the unstable leaf space of the leaves meeting stable leaf s."""
    return s - 1.0


def eta_minus_s(u: float) -> float:
    """Lower bound in the stable leaf space of the leaves meeting unstable leaf u."""
    return u


def eta(o: OrbitPoint) -> OrbitPoint:
    return OrbitPoint(eta_s(o.s), eta_u(o.u))


def eta_inverse(o: OrbitPoint) -> OrbitPoint:
    return OrbitPoint(eta_minus_u(o.s), eta_minus_s(o.u))


def eta_power(o: OrbitPoint, n: int) -> OrbitPoint:
    # even powers are central translations; applying them directly avoids drift
    q, r = divmod(n, 2)
    p = OrbitPoint(o.u + q, o.s + q) if q else o
    return eta(p) if r else p


# group action ------------------------------------------------------------


def _lift_into_window(angle, top):
    """The unique lift of ``angle`` to the half-open window (top - 1, top]."""
    return top - np.mod(top - angle, 1.0)


def act(ghat: LiftedCircleMap, o: OrbitPoint) -> OrbitPoint:
    s_new = evaluate(ghat, o.s)
    angle = ghat.base.act_circle(float(wrap_angle(o.u)))
    u_new = float(_lift_into_window(angle, s_new))
    gap = s_new - u_new
    eps = tolerance.eps()
    if gap < eps or gap > 1.0 - eps:
        raise DegeneratePair(f"image endpoints collapsed (gap {gap:.3g})")
    return OrbitPoint(u_new, s_new)


def act_arrays(alpha, beta, u, s, offsets=0):
    """Vectorized :func:`act` for lifts lambda(h, .) + offsets over many h.

    Returns the image coordinates and the gap ``s' - u'`` so callers can flag
    degenerate pairs themselves.
    """
    s_new = canonical_lift_values(alpha, beta, s) + offsets
    u_img = canonical_lift_values(alpha, beta, u) + offsets
    u_new = _lift_into_window(np.mod(u_img, 1.0), s_new)
    return u_new, s_new, s_new - u_new


def project_to_universal_circle(o: OrbitPoint) -> PointPair:
    return PointPair(CirclePoint.wrap(o.s), CirclePoint.wrap(o.u))


def orbit_of_element(g: MobiusElement) -> tuple[OrbitPoint, LiftedCircleMap]:
    """Orbit point of the axis of g and the lift of g fixing it."""
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    att, rep = axis_endpoints(g)
    s0 = att.angle
    u0 = rep.angle if rep.angle < s0 else rep.angle - 1.0
    k = int(round(s0 - evaluate(lift(g, 0), s0)))
    return OrbitPoint(u0, s0), lift(g, k)


class DoubleClassEntry(NamedTuple):
    index: int
    point: OrbitPoint
    pair: PointPair
    label: str  # "even" orbits are alpha itself, "odd" its reverse


def double_class(g: MobiusElement, range_: int) -> list[DoubleClassEntry]:
    """eta-iterates of the orbit of g for |i| <= range_, labelled by closed orbit.

    In the geodesic-flow model eta^2 is the central translation, so the
    iterates name exactly two closed orbits: the axis of g with either
    orientation.
    """
    if range_ < 1:
        raise ValueError("range must be at least 1")
    o, _ = orbit_of_element(g)
    out = []
    for i in range(-range_, range_ + 1):
        p = eta_power(o, i)
        out.append(DoubleClassEntry(i, p, project_to_universal_circle(p), "even" if i % 2 == 0 else "odd"))
    return out
