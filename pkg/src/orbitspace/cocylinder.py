"""Linking on the universal circle and co-cylindrical classification.

Three independent routes decide whether the closed orbit of a hyperbolic
element is "simple" (its chain of lozenges is simple):

* the lozenge search of :func:`orbitspace.lozenges.simplicity_check`;
* a linking witness for the endpoint pair on the universal circle;
* :func:`self_intersection_oracle`, which works with conjugate axes on the
  real line and never touches the strip model or the circle chart.

:func:`cocyl_report` runs all three and refuses to return if they disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import tolerance
from .errors import DegeneratePoints, InconsistentVerdicts, NotHyperbolic
from .hyperbolic import (
    DEFAULT_DEPTH_CAP,
    GroupSpec,
    MobiusElement,
    _continuous_lift,
    enumerate_table,
    format_word,
    is_hyperbolic,
    real_axis_endpoints,
)
from .lozenges import SimplicityCertificate, Witness, chain_of_element, simplicity_check
from .orbit_space import PointPair, orbit_of_element, project_to_universal_circle


def _in_arc(x, start, end):
    """Whether x lies in the open arc from start to end in increasing angle."""
    return np.mod(x - start, 1.0) < np.mod(end - start, 1.0)


def linked(p: PointPair, q: PointPair) -> bool:
    """Whether the pairs separate each other on the circle."""
    pts = [p.a_plus.angle, p.a_minus.angle, q.a_plus.angle, q.a_minus.angle]
    eps = tolerance.eps()
    for i in range(4):
        for j in range(i + 1, 4):
            if tolerance.circle_distance(pts[i], pts[j]) <= eps:
                raise DegeneratePoints(f"circle points {pts[i]!r} and {pts[j]!r} are not separated")
    start, end = p.a_minus.angle, p.a_plus.angle
    return bool(_in_arc(q.a_plus.angle, start, end)) != bool(_in_arc(q.a_minus.angle, start, end))


@dataclass(frozen=True)
class LinkingWitness:
    element: MobiusElement
    pair: PointPair
    image_pair: PointPair

    def verify(self) -> bool:
        return linked(self.pair, self.image_pair)


@dataclass(frozen=True)
class LinkingResult:
    depth: int
    witness: Optional[LinkingWitness] = None

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> str:
        return "Witness" if self.witness else f"NoneUpTo({self.depth})"


def _pair_of(g: MobiusElement) -> PointPair:
    o, _ = orbit_of_element(g)
    return project_to_universal_circle(o)


def linking_scan(g: MobiusElement, G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP):
    """Linking flag for every enumerated element outside the centralizer of g.

    Returns ``(table, positions, flags)``; raises DegeneratePoints if an image
    point comes within tolerance of the pair.
    """
    pair = _pair_of(g)
    table = enumerate_table(G, depth, cap)
    positions = np.flatnonzero(~table.commuting_mask(g))
    alpha, beta = table.alpha[positions], table.beta[positions]
    ap, am = pair.a_plus.angle, pair.a_minus.angle
    hp = np.mod(_continuous_lift(alpha, beta, ap), 1.0)
    hm = np.mod(_continuous_lift(alpha, beta, am), 1.0)
    flags = _in_arc(hp, am, ap) != _in_arc(hm, am, ap)
    eps = tolerance.eps()
    close = np.zeros(len(positions), dtype=bool)
    for img in (hp, hm):
        for x in (ap, am):
            d = np.mod(img - x, 1.0)
            close |= np.minimum(d, 1.0 - d) <= eps
    if close.any():
        # circle angles cannot separate these; decide them in the axis frame
        idx = np.flatnonzero(close)
        exact, degenerate = _frame_linked(g, table.matrices[positions[idx]])
        if degenerate.any():
            bad = table.words[positions[idx[np.flatnonzero(degenerate)[0]]]]
            raise DegeneratePoints(f"image of the axis under {format_word(bad)} touches it")
        flags[idx] = exact
    return table, positions, flags


def _act_real_rows(m, x):
    a, b, c, d = m.T
    with np.errstate(divide="ignore", invalid="ignore"):
        if math.isinf(x):
            return np.where(c != 0, a / c, np.inf)
        den = c * x + d
        return np.where(den != 0, (a * x + b) / den, np.inf)


def _frame_linked(g: MobiusElement, matrices):
    """Linking of axis(g) with h.axis(g) for rows h, decided in the frame rep -> 0, att -> oo.

    Returns ``(linked, degenerate)``.  Points that are closer than the global
    tolerance on the circle but far apart relative to machine precision get a
    reliable sign here.
    """
    att, rep = real_axis_endpoints(g)
    y1 = _to_axis_frame(_act_real_rows(matrices, att), att, rep)
    y2 = _to_axis_frame(_act_real_rows(matrices, rep), att, rep)
    with np.errstate(invalid="ignore", over="ignore"):
        degenerate = _frame_degenerate(y1) | _frame_degenerate(y2)
        return (y1 * y2 < 0) & ~degenerate, degenerate


def _frame_degenerate(y, tiny=1e-13):
    return ~np.isfinite(y) | (np.abs(y) < tiny) | (np.abs(y) > 1.0 / tiny)


def linked_image(g: MobiusElement, h: MobiusElement, pair: Optional[PointPair] = None) -> bool:
    """Whether the endpoint pair of g and its image under h are linked.

    Falls back on the axis frame when the circle points are within tolerance.
    """
    pair = _pair_of(g) if pair is None else pair
    try:
        return linked(pair, pair.image(h))
    except DegeneratePoints:
        flags, degenerate = _frame_linked(g, np.array([h.matrix], dtype=float))
        if degenerate[0]:
            raise
        return bool(flags[0])


def find_linking_witness(g: MobiusElement, G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> LinkingResult:
    """First element (canonical order) moving the endpoint pair of g to a linked pair."""
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    table, positions, flags = linking_scan(g, G, depth, cap)
    hits = np.flatnonzero(flags)
    if not len(hits):
        return LinkingResult(depth)
    h = table.element(int(positions[hits[0]]))
    pair = _pair_of(g)
    return LinkingResult(depth, LinkingWitness(h, pair, pair.image(h)))


# independent oracle ---------------------------------------------------------


def _fixed_points_of_matrices(m):
    """(attracting, repelling) real fixed points of hyperbolic matrices, rows (a, b, c, d).

    ``inf`` marks the point at infinity.
    """
    a, b, c, d = m.T
    tr = a + d
    root = np.sqrt(np.maximum(tr * tr - 4.0, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        x1 = (a - d + root) / (2 * c)
        x2 = (a - d - root) / (2 * c)
        d1 = np.abs(c * x1 + d)
        att = np.where(d1 > 1.0, x1, x2)
        rep = np.where(d1 > 1.0, x2, x1)
        flat = c == 0
        fin = b / (d - a)
        att = np.where(flat, np.where(np.abs(a) < np.abs(d), fin, np.inf), att)
        rep = np.where(flat, np.where(np.abs(a) < np.abs(d), np.inf, fin), rep)
    return att, rep


def _to_axis_frame(x, att, rep):
    """The Mobius map sending rep -> 0 and att -> oo, applied to x (oo-aware)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if math.isinf(rep):
            return -1.0 / (x - att)
        if math.isinf(att):
            return x - rep
        y = (x - rep) / (x - att)
    y = np.where(np.isinf(x), 1.0, y)
    return y


def self_intersection_oracle(g: MobiusElement, G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> int:
    """Lower bound on the number of self-intersections of the closed geodesic of g.

    Conjugate axes h.axis(g) are read off the fixed points of the conjugate
    matrices h g h^-1 and normalized so that axis(g) is the imaginary axis;
    a crossing is a conjugate axis with endpoints of opposite sign.  Crossings
    are identified modulo the translation by g; each self-intersection point
    shows up as two such classes.
    """
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    table = enumerate_table(G, depth, cap)
    att, rep = real_axis_endpoints(g)
    gm = np.array(g.matrix).reshape(2, 2)
    h = table.matrices.reshape(-1, 2, 2)
    hinv = np.stack([h[:, 1, 1], -h[:, 0, 1], -h[:, 1, 0], h[:, 0, 0]], axis=1).reshape(-1, 2, 2)
    conj = (h @ gm @ hinv).reshape(-1, 4)
    catt, crep = _fixed_points_of_matrices(conj)
    y1 = _to_axis_frame(catt, att, rep)
    y2 = _to_axis_frame(crep, att, rep)
    eps = tolerance.eps()
    finite = np.isfinite(y1) & np.isfinite(y2)
    # conjugates sharing an endpoint with axis(g) lie in its stabilizer
    same_axis = ~finite | (np.abs(y1) < eps) | (np.abs(y2) < eps)
    with np.errstate(invalid="ignore"):
        crossing = finite & ~same_axis & (y1 * y2 < 0)
    if not crossing.any():
        return 0
    y1, y2 = y1[crossing], y2[crossing]
    # g acts on the frame as multiplication by its squared eigenvalue
    tr = abs(g.trace)
    ell = 2.0 * math.acosh(tr / 2.0)  # log of the multiplier
    height = 0.5 * np.log(np.abs(y1 * y2))  # log-height of the crossing point
    pos = np.mod(height, ell)
    pos = np.where(ell - pos < 1e-7, 0.0, pos)
    shape = np.log(np.abs(y1 / y2))  # scale invariant; pins down the crossing axis
    keys = set(zip(np.round(pos, 6).tolist(), np.round(shape, 6).tolist()))
    return math.ceil(len(keys) / 2)


# reports --------------------------------------------------------------------


@dataclass(frozen=True)
class CocylReport:
    word: str
    simple_verdict: SimplicityCertificate
    linking: LinkingResult
    partner_indices: frozenset
    oracle_crossings: int
    depths: dict = field(default_factory=dict)

    @property
    def non_simple(self) -> bool:
        return self.simple_verdict.non_simple

    @property
    def trivial_class(self) -> bool:
        """No co-cylindrical partner in range and a linking witness: a trivial class instance."""
        return not self.partner_indices and self.linking.found


def cocyl_report(
    g: MobiusElement,
    G: GroupSpec,
    depth: int,
    partner_range: int,
    lozenge_depth: Optional[int] = None,
    oracle_depth: Optional[int] = None,
) -> CocylReport:
    """Run the three simplicity criteria and collect the candidate partners.

    ``depth`` is the linking-search depth; the lozenge and oracle searches
    default to it.  Partners are the n in [1, partner_range] for which
    B(o, eta^n o) has no witness.
    """
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    lozenge_depth = depth if lozenge_depth is None else lozenge_depth
    oracle_depth = depth if oracle_depth is None else oracle_depth
    simple = simplicity_check(chain_of_element(g, 1), G, lozenge_depth)
    link = find_linking_witness(g, G, depth)
    crossings = self_intersection_oracle(g, G, oracle_depth)
    if not (simple.non_simple == link.found == (crossings >= 1)):
        raise InconsistentVerdicts(
            f"{format_word(g.word)}: lozenge {simple.verdict}, linking {link.verdict}, oracle {crossings}"
        )
    partners = partner_set(g, G, lozenge_depth, partner_range)
    return CocylReport(
        word=format_word(g.word),
        simple_verdict=simple,
        linking=link,
        partner_indices=frozenset(partners),
        oracle_crossings=crossings,
        depths={"lozenge": lozenge_depth, "linking": depth, "oracle": oracle_depth},
    )


def partner_set(g, G, depth, partner_range, shift=0):
    """{n : B(eta^shift o, eta^(shift+n) o) has no witness up to depth}."""
    out = set()
    for n in range(1, partner_range + 1):
        chain = chain_of_element(g, n).shifted(shift)
        if not simplicity_check(chain, G, depth).non_simple:
            out.add(n)
    return out


def shift_consistent(partner_sets, transported) -> bool:
    """All partner sets agree and every transported witness re-verified."""
    first = partner_sets[0]
    return all(s == first for s in partner_sets[1:]) and all(transported)


def cardinality_shift_check(g: MobiusElement, G: GroupSpec, depth: int, partner_range: int, shifts=(0, 1, 2)) -> bool:
    """Check that eta carries the partner structure of o to that of eta(o), eta^2(o).

    Besides comparing the partner sets, each witness found for base o is
    transported unchanged (same element, offset and indices) to the shifted
    chains and re-verified there, and the canonical witness of each shifted
    chain must coincide with it.
    """
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    sets = [partner_set(g, G, depth, partner_range, shift=m) for m in shifts]
    transported = []
    for n in range(1, partner_range + 1):
        base_chain = chain_of_element(g, n)
        cert = simplicity_check(base_chain, G, depth)
        if cert.witness is None:
            continue
        for m in shifts[1:]:
            shifted = base_chain.shifted(m)
            transported.append(cert.witness.verify(shifted))
            other = simplicity_check(shifted, G, depth).witness
            transported.append(other is not None and _same_witness(other, cert.witness))
    return shift_consistent(sets, transported)


def _same_witness(a: Witness, b: Witness) -> bool:
    return (
        a.element.word == b.element.word
        and a.offset == b.offset
        and a.corner_index == b.corner_index
        and a.lozenge_index == b.lozenge_index
    )
