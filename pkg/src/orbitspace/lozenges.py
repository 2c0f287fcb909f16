"""Lozenges, chains of lozenges and the bounded simplicity search."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import tolerance
from .errors import AmbiguousGeometry
from .hyperbolic import (
    DEFAULT_DEPTH_CAP,
    GroupSpec,
    LiftedCircleMap,
    MobiusElement,
    enumerate_table,
    lift,
)
from .orbit_space import OrbitPoint, act, act_arrays, eta, eta_power, orbit_of_element


class Membership(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY_AMBIGUOUS = "boundary-ambiguous"


_CODES = {0: Membership.OUTSIDE, 1: Membership.INSIDE, 2: Membership.BOUNDARY_AMBIGUOUS}


@dataclass(frozen=True)
class Lozenge:
    """Lozenge with corners ``corner`` and ``eta(corner)``.

    With both leaf spaces oriented by increasing coordinate every lozenge is
    of type (+,+,-,-) and its interior is the open rectangle
    ``u < u' < s``, ``s < s' < u + 1``.
    """

    corner: OrbitPoint
    # the far corner as computed by a chain, so that neighbours share it bit for bit
    top: Optional[OrbitPoint] = None

    @property
    def opposite(self) -> OrbitPoint:
        return self.top if self.top is not None else eta(self.corner)

    @property
    def u_range(self) -> tuple[float, float]:
        return (self.corner.u, self.opposite.u)

    @property
    def s_range(self) -> tuple[float, float]:
        return (self.corner.s, self.opposite.s)

    @property
    def center(self) -> OrbitPoint:
        (u0, u1), (s0, s1) = self.u_range, self.s_range
        return OrbitPoint((u0 + u1) / 2, (s0 + s1) / 2)

    def contains(self, p: OrbitPoint) -> Membership:
        return contains(self, p)


def lozenge_of(o: OrbitPoint) -> Lozenge:
    return Lozenge(o)


def _membership_codes(lo_u, hi_u, lo_s, hi_s, u, s):
    """Vectorized membership: 0 outside, 1 inside, 2 on a side (within eps)."""
    eps = tolerance.eps()
    du = np.minimum(u - lo_u, hi_u - u)
    ds = np.minimum(s - lo_s, hi_s - s)
    inside = (du > eps) & (ds > eps)
    outside = (du < -eps) | (ds < -eps)
    # corners are endpoints of the sides, not points of them
    near_corner = (
        (np.abs(u - lo_u) <= eps) & (np.abs(s - lo_s) <= eps)
        | (np.abs(u - hi_u) <= eps) & (np.abs(s - hi_s) <= eps)
    )
    codes = np.full(np.broadcast(u, s).shape, 2, dtype=np.int8)
    codes[outside | near_corner] = 0
    codes[inside] = 1
    return codes


def contains(L: Lozenge, p: OrbitPoint) -> Membership:
    (lu, hu), (ls, hs) = L.u_range, L.s_range
    code = int(_membership_codes(lu, hu, ls, hs, np.float64(p.u), np.float64(p.s)))
    return _CODES[code]


def check_stabilized(ghat: LiftedCircleMap, L: Lozenge) -> bool:
    """Whether the lift fixing one corner of L also fixes the other corner."""
    eps = tolerance.eps()
    o = L.corner
    if act(ghat, o).distance(o) >= eps:
        return False
    beta = L.opposite
    return act(ghat, beta).distance(beta) < eps


@dataclass(frozen=True)
class Chain:
    """The eta-chain of lozenges with corners eta^i(base), lo <= i < hi.

    ``element``, when known, is a hyperbolic element whose axis is the base
    orbit; its centralizer maps corners to corners and is skipped by the
    simplicity search.
    """

    base: OrbitPoint
    lo: int = 0
    hi: int = 1
    element: Optional[MobiusElement] = None

    def __post_init__(self):
        if self.hi <= self.lo:
            raise ValueError("a chain needs at least one lozenge")

    def __len__(self):
        return self.hi - self.lo

    def corner(self, i: int) -> OrbitPoint:
        return eta_power(self.base, i)

    @property
    def corner_indices(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def lozenge_indices(self) -> range:
        return range(self.lo, self.hi)

    def lozenge(self, j: int) -> Lozenge:
        return Lozenge(self.corner(j), self.corner(j + 1))

    @property
    def lozenges(self) -> list[Lozenge]:
        return [self.lozenge(j) for j in self.lozenge_indices]

    def shifted(self, m: int) -> "Chain":
        """The same chain with base eta^m(base)."""
        return Chain(eta_power(self.base, m), self.lo, self.hi, self.element)

    def sides_disjoint(self) -> bool:
        """Consecutive lozenges have disjoint u- and s-ranges (they share no side)."""
        ls = self.lozenges
        for a, b in zip(ls, ls[1:]):
            if not (a.u_range[1] <= b.u_range[0] and a.s_range[1] <= b.s_range[0]):
                return False
        return True


def chain_between(o: OrbitPoint, n: int, element: Optional[MobiusElement] = None) -> Chain:
    """B(o, eta^n(o))."""
    return Chain(o, 0, n, element)


def chain_of_element(g: MobiusElement, n: int = 1) -> Chain:
    o, _ = orbit_of_element(g)
    return chain_between(o, n, g)


@dataclass(frozen=True)
class Witness:
    element: MobiusElement
    offset: int
    corner_index: int
    lozenge_index: int

    def verify(self, chain: Chain) -> bool:
        """Re-check by direct membership with margin eps."""
        image = act(lift(self.element, self.offset), chain.corner(self.corner_index))
        return contains(chain.lozenge(self.lozenge_index), image) is Membership.INSIDE


@dataclass(frozen=True)
class SimplicityCertificate:
    depth: int
    witness: Optional[Witness] = None

    @property
    def non_simple(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> str:
        if self.witness is None:
            return f"NoWitnessUpTo({self.depth})"
        return "NonSimple"


def _offset_candidates(lo_u, hi_u, u):
    k0 = np.round((lo_u + hi_u) / 2 - u)
    return (k0 - 1, k0, k0 + 1)


def simplicity_check(C: Chain, G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> SimplicityCertificate:
    """Search for a group translate of a corner of C inside a lozenge of C.

    Every element of word length <= depth is tried against every corner and
    lozenge; the candidate offsets are the at most three integers that can put
    the image's u-coordinate near the lozenge's u-range.  The first hit in
    (element, corner, lozenge, offset) order is returned.  Any image landing
    on a side within tolerance aborts the search.
    """
    table = enumerate_table(G, depth, cap)
    active = np.ones(len(table), dtype=bool)
    if C.element is not None:
        active &= ~table.commuting_mask(C.element)
    idx = np.flatnonzero(active)
    alpha, beta = table.alpha[idx], table.beta[idx]

    hits = []  # (element position, corner, lozenge, offset) of insides
    ambiguous = []
    for i in C.corner_indices:
        c = C.corner(i)
        U, S, gap = act_arrays(alpha, beta, c.u, c.s)
        eps = tolerance.eps()
        bad = (gap < eps) | (gap > 1 - eps)
        if bad.any():
            raise AmbiguousGeometry(f"degenerate image of corner {i} under {int(bad.sum())} elements")
        for j in C.lozenge_indices:
            L = C.lozenge(j)
            (lu, hu), (ls, hs) = L.u_range, L.s_range
            for k in _offset_candidates(lu, hu, U):
                codes = _membership_codes(lu, hu, ls, hs, U + k, S + k)
                for pos in np.flatnonzero(codes == 1):
                    hits.append((int(pos), i, j, int(k[pos])))
                for pos in np.flatnonzero(codes == 2):
                    ambiguous.append((int(pos), i, j, int(k[pos])))
    if ambiguous:
        pos, i, j, k = min(ambiguous)
        h = table.element(int(idx[pos]))
        raise AmbiguousGeometry(
            f"{len(ambiguous)} boundary-ambiguous images; first: element {h.word}, "
            f"offset {k}, corner {i}, lozenge {j}"
        )
    if not hits:
        return SimplicityCertificate(depth)
    pos, i, j, k = min(hits)
    return SimplicityCertificate(depth, Witness(table.element(int(idx[pos])), k, i, j))
