"""SVG and CSV pictures of the strip, a chain of lozenges and witness points.

The horizontal axis is the stable leaf space (coordinate s), the vertical
axis the unstable one (coordinate u); the strip s - 1 < u < s is shaded.
Output is plain text assembled by hand so that it is byte-deterministic.
"""

from __future__ import annotations

import csv
import io

from .hyperbolic import lift
from .lozenges import Chain
from .orbit_space import OrbitPoint, act


def _num(x: float) -> str:
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


class _Frame:
    def __init__(self, points, width, height, margin=40):
        us = [p.u for p in points]
        ss = [p.s for p in points]
        span = max(max(ss) - min(ss), max(us) - min(us), 1.0) + 0.5
        self.s0 = (min(ss) + max(ss)) / 2 - span / 2
        self.u0 = (min(us) + max(us)) / 2 - span / 2
        self.span = span
        self.width, self.height, self.margin = width, height, margin

    def x(self, s):
        return self.margin + (s - self.s0) / self.span * (self.width - 2 * self.margin)

    def y(self, u):
        return self.height - self.margin - (u - self.u0) / self.span * (self.height - 2 * self.margin)


def chain_svg(chain: Chain, witnesses=(), width: int = 640, height: int = 640, title: str = "") -> str:
    """SVG 1.1 drawing of a chain; ``witnesses`` is a sequence of (label, OrbitPoint)."""
    corners = [chain.corner(i) for i in chain.corner_indices]
    f = _Frame(corners + [p for _, p in witnesses], width, height)
    s_lo, s_hi = f.s0, f.s0 + f.span
    band = [(s_lo, s_lo - 1), (s_hi, s_hi - 1), (s_hi, s_hi), (s_lo, s_lo)]
    m = f.margin
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{_escape(title)}</title>",
        "<defs>",
        f'<clipPath id="plot"><rect x="{m}" y="{m}" width="{width - 2 * m}" height="{height - 2 * m}"/></clipPath>',
        "</defs>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g clip-path="url(#plot)">',
        '<polygon class="strip" fill="#e8eef7" stroke="#9db0cc" stroke-dasharray="6 4" points="'
        + " ".join(f"{_num(f.x(s))},{_num(f.y(u))}" for s, u in band)
        + '"/>',
    ]
    for j in chain.lozenge_indices:
        L = chain.lozenge(j)
        (u_lo, u_hi), (s_lo_j, s_hi_j) = L.u_range, L.s_range
        x0, x1 = f.x(s_lo_j), f.x(s_hi_j)
        y0, y1 = f.y(u_hi), f.y(u_lo)
        out.append(
            f'<rect class="lozenge" data-index="{j}" x="{_num(x0)}" y="{_num(y0)}" '
            f'width="{_num(x1 - x0)}" height="{_num(y1 - y0)}" fill="#f4c27a" fill-opacity="0.55" '
            'stroke="#b5651d" stroke-width="1.5"/>'
        )
    for i, c in zip(chain.corner_indices, corners):
        out.append(
            f'<circle class="corner" data-index="{i}" cx="{_num(f.x(c.s))}" cy="{_num(f.y(c.u))}" r="4" fill="black"/>'
        )
    for label, p in witnesses:
        out.append(
            f'<circle class="witness" data-label="{_escape(label)}" cx="{_num(f.x(p.s))}" cy="{_num(f.y(p.u))}" '
            'r="5" fill="#c0392b"/>'
        )
    out.append("</g>")
    out.append(
        f'<line x1="{m}" y1="{height - m}" x2="{width - m}" y2="{height - m}" stroke="black"/>'
        f'<line x1="{m}" y1="{height - m}" x2="{m}" y2="{m}" stroke="black"/>'
    )
    out.append(f'<text x="{width - m}" y="{height - m + 24}" text-anchor="end" font-size="14">stable leaf s</text>')
    out.append(f'<text x="{m - 8}" y="{m - 12}" font-size="14">unstable leaf u</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def chain_csv(chain: Chain, witnesses=()) -> str:
    """RFC 4180 CSV of every drawn coordinate."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["kind", "index", "u", "s", "u_hi", "s_hi"])
    for i in chain.corner_indices:
        c = chain.corner(i)
        w.writerow(["corner", i, _num(c.u), _num(c.s), "", ""])
    for j in chain.lozenge_indices:
        L = chain.lozenge(j)
        w.writerow(["lozenge", j, _num(L.u_range[0]), _num(L.s_range[0]), _num(L.u_range[1]), _num(L.s_range[1])])
    for label, p in witnesses:
        w.writerow(["witness", label, _num(p.u), _num(p.s), "", ""])
    return buf.getvalue()


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def witness_point(chain: Chain, witness) -> OrbitPoint:
    return act(lift(witness.element, witness.offset), chain.corner(witness.corner_index))
