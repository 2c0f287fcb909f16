"""Self-intersections of the homotopy annulus between an orbit and its eta-image.

The annulus between the orbit o of g and eta(o) projects to the stable leaf
interval I = [s, u + 1].  A self-intersection is a group element h (with a
lift offset k) whose lift moves I onto a set overlapping I; it is transverse
exactly when the endpoint pairs of o and h.o are linked.  Such overlaps never
swallow I whole.  Arcs on which h moves every point the same way can be
scheduled on distinct vertical fibers of the annulus; an arc whose overlap
contains a fixed point of the lift is reported as Mixed and no schedule is
attempted for it.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import tolerance
from .errors import AmbiguousGeometry, DegeneratePoints, MixedSignProfile, NotHyperbolic
from .hyperbolic import (
    DEFAULT_DEPTH_CAP,
    GroupSpec,
    MobiusElement,
    axis_endpoints,
    evaluate,
    format_word,
    is_hyperbolic,
    lift,
)
from .cocylinder import linking_scan
from .orbit_space import orbit_of_element

log = logging.getLogger(__name__)


class ArcKind(enum.Enum):
    INTERIOR_ENDING = "InteriorEnding"
    BOUNDARY_IDENTIFICATION = "BoundaryIdentification"
    STRICTLY_CONTAINED = "StrictlyContained"


class SignProfile(enum.Enum):
    ALL_UP = "AllUp"
    ALL_DOWN = "AllDown"
    MIXED = "Mixed"


@dataclass(frozen=True)
class LeafInterval:
    """Stable leaves between the orbit (at ``lo``) and its eta-image (at ``hi``)."""

    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 < self.hi - self.lo < 1.0:
            raise ValueError(f"interval [{self.lo}, {self.hi}] must have length in (0, 1)")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def normalize(self, x: float) -> float:
        return (x - self.lo) / self.length

    def denormalize(self, t: float) -> float:
        return self.lo + t * self.length


def leaf_interval(g: MobiusElement) -> LeafInterval:
    o, _ = orbit_of_element(g)
    return LeafInterval(o.s, o.u + 1.0)


@dataclass(frozen=True)
class CrossingArc:
    element: MobiusElement
    offset: int
    interval: LeafInterval
    overlap_source: tuple[float, float]
    overlap_target: tuple[float, float]
    classification: ArcKind
    sign_profile: SignProfile
    vertical: Optional[float] = None

    def lifted(self, x):
        return evaluate(lift(self.element, self.offset), x)


@dataclass(frozen=True)
class OverlapRecord:
    """One (h, k) whose lift moves I onto a set overlapping I in more than eps."""

    element: MobiusElement
    offset: int
    image: tuple[float, float]
    linked: bool


def overlap_records(g: MobiusElement, G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> list[OverlapRecord]:
    """All overlapping (h, k) outside the stabilizer of the axis of g, with linking flags."""
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    o, _ = orbit_of_element(g)
    I = LeafInterval(o.s, o.u + 1.0)
    try:
        table, positions, flags = linking_scan(g, G, depth, cap)
    except DegeneratePoints as exc:
        raise AmbiguousGeometry(f"linking test is degenerate: {exc}") from exc
    lo_img = table.lift_values(I.lo)[positions]
    hi_img = table.lift_values(I.hi)[positions]
    eps = tolerance.eps()
    found = []
    k1 = np.floor(I.lo - hi_img) + 1
    for k in (k1, k1 + 1):
        overlap = np.minimum(I.hi, hi_img + k) - np.maximum(I.lo, lo_img + k)
        for p in np.flatnonzero(overlap > eps):
            found.append((int(positions[p]), int(k[p]), float(lo_img[p] + k[p]), float(hi_img[p] + k[p]), bool(flags[p])))
    found.sort()
    return [OverlapRecord(table.element(i), k, (a, b), f) for i, k, a, b, f in found]


def _classify(I: LeafInterval, a: float, b: float) -> ArcKind:
    eps = tolerance.eps()
    if any(abs(x - y) <= eps for x in (a, b) for y in (I.lo, I.hi)):
        return ArcKind.BOUNDARY_IDENTIFICATION
    if (a > I.lo and b < I.hi) or (a < I.lo and b > I.hi):
        # h(I) inside I, or I inside h(I), i.e. h^-1(I) inside I
        return ArcKind.STRICTLY_CONTAINED
    return ArcKind.INTERIOR_ENDING


def default_samples(depth: int) -> int:
    return 2 ** (5 + max(depth, 0) // 2)


def _gap_profile(element, offset, interval, source, samples):
    """Sign profile and min |h(t) - t| over the closed source overlap.

    Sampling is backed by an exact test: h(t) - t can only vanish at lifts of
    the fixed points of h, which are checked directly.
    """
    x0, x1 = interval.denormalize(source[0]), interval.denormalize(source[1])
    xs = np.linspace(x0, x1, samples + 2)
    gaps = np.asarray(evaluate(lift(element, offset), xs)) - xs
    interior_fixed = False
    if is_hyperbolic(element):
        eps = tolerance.eps()
        for p in axis_endpoints(element):
            for m in range(math.floor(x0) - 1, math.ceil(x1) + 2):
                x = p.angle + m
                if x0 + eps < x < x1 - eps and abs(evaluate(lift(element, offset), x) - x) < eps:
                    interior_fixed = True
    if interior_fixed or (gaps.max() > 0 and gaps.min() < 0):
        profile = SignProfile.MIXED
    elif gaps.min() > 0:
        profile = SignProfile.ALL_UP
    else:
        profile = SignProfile.ALL_DOWN
    return profile, float(np.abs(gaps).min())


def _make_arc(rec: OverlapRecord, I: LeafInterval, samples: int) -> CrossingArc:
    h, k = rec.element, rec.offset
    a, b = rec.image
    inv = lift(h, k).inverse()
    pa, pb = evaluate(inv, I.lo), evaluate(inv, I.hi)
    source = (I.normalize(max(I.lo, pa)), I.normalize(min(I.hi, pb)))
    target = (I.normalize(max(I.lo, a)), I.normalize(min(I.hi, b)))
    profile, _ = _gap_profile(h, k, I, source, samples)
    return CrossingArc(h, k, I, source, target, _classify(I, a, b), profile)


def crossing_elements(g: MobiusElement, G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> list[CrossingArc]:
    """Transverse self-intersections of the annulus of g found up to word length depth."""
    I = leaf_interval(g)
    samples = default_samples(depth)
    return [_make_arc(r, I, samples) for r in overlap_records(g, G, depth, cap) if r.linked]


def verify_claim(arcs) -> bool:
    """No arc maps the leaf interval strictly into itself."""
    bad = [a for a in arcs if a.classification is ArcKind.STRICTLY_CONTAINED]
    for a in bad:
        log.error(
            "strictly contained image: element %s (matrix %s) offset %d source %s target %s",
            format_word(a.element.word),
            a.element.matrix,
            a.offset,
            a.overlap_source,
            a.overlap_target,
        )
    return not bad


@dataclass(frozen=True)
class IsotopyCertificate:
    arcs: tuple[CrossingArc, ...]
    schedule_ok: bool
    min_gap: float


def _assign_verticals(arcs):
    coords = [a.vertical for a in arcs]
    distinct = None not in coords and len(set(coords)) == len(coords)
    if distinct:
        return list(arcs)
    n = len(arcs)
    return [replace(a, vertical=(i + 1) / (n + 1)) for i, a in enumerate(arcs)]


def build_trivialization(arcs, depth: int = 0, samples: Optional[int] = None) -> IsotopyCertificate:
    """Schedule the crossing arcs on distinct vertical fibers of the annulus.

    Each arc must move every point of its overlap strictly one way; the
    smallest displacement over all arcs is reported as ``min_gap``.
    """
    if not verify_claim(arcs):
        raise ValueError("an arc maps the leaf interval into itself; no schedule exists")
    samples = default_samples(depth) if samples is None else samples
    placed = []
    min_gap = math.inf
    for arc in _assign_verticals(arcs):
        profile, gap = _gap_profile(arc.element, arc.offset, arc.interval, arc.overlap_source, samples)
        if profile is SignProfile.MIXED:
            raise MixedSignProfile(
                f"h(t) - t changes sign on the overlap of {format_word(arc.element.word)} (offset {arc.offset})"
            )
        placed.append(replace(arc, sign_profile=profile))
        min_gap = min(min_gap, gap)
    ok = all(a.sign_profile is not SignProfile.MIXED for a in placed) and min_gap > tolerance.eps()
    return IsotopyCertificate(tuple(placed), ok, min_gap)
