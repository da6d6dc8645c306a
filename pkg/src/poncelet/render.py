"""Deterministic SVG figures of scenarios and their chains.

Output depends only on the inputs: no timestamps, fixed element order and
every coordinate printed with six significant digits, so rendering the
same scene twice yields identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .chain import (
    BothSingular,
    ChainResult,
    Closed,
    ChainConfig,
    Exceptional,
    PonceletScenario,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
    admissible_starts,
    degenerate_special_chains,
    run_chain,
)
from .errors import ChainError, EmptyViewbox, NoneExists
from .projective import Conic, ProjLine, ProjPoint

SAMPLES_PER_BRANCH = 256


@dataclass(frozen=True)
class RenderSpec:
    """Viewbox in data coordinates (xmin, ymin, width, height) plus styling.

    Stroke widths and the dot radius are in output pixels; ``pixel_width``
    fixes the scale between data units and pixels.
    """

    viewbox: tuple[float, float, float, float] = (-2.0, -2.0, 4.0, 4.0)
    pixel_width: int = 600
    conic_stroke: float = 1.5
    chain_stroke: float = 1.0
    vertex_radius: float = 2.5
    show_conics: bool = True
    show_chain: bool = True
    show_special: bool = True
    show_labels: bool = True
    out: Optional[str] = None

    def __post_init__(self):
        x, y, w, h = self.viewbox
        if not (w > 0 and h > 0) or not all(math.isfinite(v) for v in self.viewbox):
            raise EmptyViewbox(f"viewbox {self.viewbox} has no area")


def _f(x: float) -> str:
    s = f"{x:.6g}"
    return "0" if s in ("-0", "0") else s


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.spec = spec
        x, y, w, h = spec.viewbox
        self.box = (x, y, x + w, y + h)
        self.unit = w / spec.pixel_width
        self.parts: list[str] = []

    def px(self, v: float) -> str:
        return _f(v * self.unit)

    def pt(self, x: float, y: float) -> str:
        # flip y so the figure reads with the usual orientation
        return f"{_f(x)},{_f(-y)}"

    def inside(self, x: float, y: float, margin: float = 0.0) -> bool:
        x0, y0, x1, y1 = self.box
        mx, my = margin * (x1 - x0), margin * (y1 - y0)
        return x0 - mx <= x <= x1 + mx and y0 - my <= y <= y1 + my

    def polyline(self, pts: Sequence[tuple[float, float]], cls: str, closed: bool = False):
        if len(pts) < 2:
            return
        d = "M" + " L".join(self.pt(x, y) for x, y in pts)
        if closed:
            d += " Z"
        self.parts.append(f'<path class="{cls}" d="{d}"/>')

    def segment(self, a, b, cls: str):
        clipped = _clip_segment(a, b, self.box)
        if clipped is not None:
            (x0, y0), (x1, y1) = clipped
            self.parts.append(
                f'<line class="{cls}" x1="{_f(x0)}" y1="{_f(-y0)}" x2="{_f(x1)}" y2="{_f(-y1)}"/>'
            )

    def dot(self, x: float, y: float, cls: str):
        if self.inside(x, y):
            r = self.px(self.spec.vertex_radius)
            self.parts.append(f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(-y)}" r="{r}"/>')

    def label(self, x: float, y: float, text: str):
        if self.inside(x, y):
            size = self.px(12)
            off = 4 * self.unit
            self.parts.append(
                f'<text x="{_f(x + off)}" y="{_f(-y - off)}" font-size="{size}">{text}</text>'
            )


def _clip_segment(a, b, box):
    """Liang-Barsky clipping of segment ab to an axis-aligned box."""
    x0, y0 = a
    dx, dy = b[0] - a[0], b[1] - a[1]
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0 - box[0]), (dx, box[2] - x0), (-dy, y0 - box[1]), (dy, box[3] - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    return (x0 + t0 * dx, y0 + t0 * dy), (x0 + t1 * dx, y0 + t1 * dy)


def _line_in_box(line: ProjLine, box):
    """The part of a line inside the box, as a segment, or None."""
    u, v, w = line.coeffs
    x0, y0, x1, y1 = box
    diag = math.hypot(x1 - x0, y1 - y0)
    n = math.hypot(u, v)
    if n == 0:
        return None
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    # foot of the perpendicular from the box centre, then extend both ways
    d = (u * cx + v * cy + w) / n
    fx, fy = cx - d * u / n, cy - d * v / n
    tx, ty = -v / n, u / n
    return _clip_segment((fx - diag * tx, fy - diag * ty), (fx + diag * tx, fy + diag * ty), box)


def _conic_branches(conic: Conic, box) -> list[tuple[list[tuple[float, float]], bool]]:
    """Affine polylines of a regular conic, one per branch, with a closed flag."""
    w, v = np.linalg.eigh(conic.m)
    if (w > 0).sum() == 1:
        w = -w
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    e1, e2, e3 = (v[:, i] / math.sqrt(abs(w[i])) for i in range(3))
    # z(theta) = a cos + b sin + c
    a, b, c = e1[2], e2[2], e3[2]
    r = math.hypot(a, b)
    if r <= abs(c):
        thetas = np.linspace(0.0, 2 * math.pi, SAMPLES_PER_BRANCH, endpoint=False)
        intervals = [(thetas, True)]
    else:
        phi = math.atan2(b, a)
        delta = math.acos(max(-1.0, min(1.0, -c / r)))
        z1, z2 = phi - delta, phi + delta
        eps = 1e-6
        intervals = [
            (np.linspace(z1 + eps, z2 - eps, SAMPLES_PER_BRANCH), False),
            (np.linspace(z2 + eps, z1 + 2 * math.pi - eps, SAMPLES_PER_BRANCH), False),
        ]
    out = []
    x0, y0, x1, y1 = box
    far = 4 * max(x1 - x0, y1 - y0)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    for thetas, closed in intervals:
        pts = np.outer(np.cos(thetas), e1) + np.outer(np.sin(thetas), e2) + e3
        run: list[tuple[float, float]] = []
        for p in pts:
            if abs(p[2]) < 1e-12:
                x, y = math.inf, math.inf
            else:
                x, y = p[0] / p[2], p[1] / p[2]
            if abs(x - cx) > far or abs(y - cy) > far:
                if len(run) > 1:
                    out.append((run, False))
                run = []
                closed = False
                continue
            run.append((float(x), float(y)))
        if len(run) > 1:
            out.append((run, closed))
    return out


def _affine(p: ProjPoint) -> Optional[tuple[float, float]]:
    if not p.is_finite:
        return None
    return p.xy()


def _draw_chain(cv: _Canvas, chain: ChainResult, cls: str):
    pts = [_affine(p) for p in chain.vertices]
    pairs = list(zip(pts, pts[1:]))
    if isinstance(chain.verdict, Closed) and len(pts) > 2:
        pairs.append((pts[-1], pts[0]))
    for a, b in pairs:
        if a is not None and b is not None:
            cv.segment(a, b, cls)
    for p in pts:
        if p is not None:
            cv.dot(*p, "vertex")


def _draw_special(cv: _Canvas, chain: ChainResult):
    pts = [_affine(p) for p in chain.vertices]
    if len(pts) >= 2:
        for a, b in zip(pts, pts[1:]):
            if a is not None and b is not None:
                cv.segment(a, b, "special")
    else:
        # a single vertex with its sides: draw the sides as full lines
        for line in chain.sides:
            seg = _line_in_box(line, cv.box)
            if seg is not None:
                cv.segment(*seg, "special")
    for p in pts:
        if p is not None:
            cv.dot(*p, "special-vertex")


_STYLE = (
    ".gamma{fill:none;stroke:#000000;stroke-width:%s}"
    ".c{fill:none;stroke:#1f4e9e;stroke-width:%s}"
    ".side{stroke:#c0392b;stroke-width:%s}"
    ".special{stroke:#555555;stroke-width:%s;stroke-dasharray:%s,%s}"
    ".vertex{fill:#c0392b}"
    ".special-vertex{fill:#555555}"
    ".center{fill:#1f4e9e}"
    "text{font-family:sans-serif;fill:#222222}"
)


def render_svg(
    s: PonceletScenario,
    chains: Iterable[ChainResult] = (),
    spec: Optional[RenderSpec] = None,
    special: Iterable[ChainResult] = (),
) -> bytes:
    """Standalone SVG 1.1 document for a scenario, its chains and exceptional chains.

    Chains whose verdict is :class:`Exceptional` are drawn dashed wherever
    they appear.
    """
    spec = spec or RenderSpec()
    cv = _Canvas(spec)
    x, y, w, h = spec.viewbox
    chains = list(chains)
    special = list(special) + [c for c in chains if isinstance(c.verdict, Exceptional)]
    chains = [c for c in chains if not isinstance(c.verdict, Exceptional)]

    if spec.show_conics:
        if isinstance(s, (SmoothSmooth, SingularInscribed)):
            for pts, closed in _conic_branches(s.gamma, cv.box):
                cv.polyline(pts, "gamma", closed)
        else:
            for line in s.gamma_lines.lines():
                seg = _line_in_box(line, cv.box)
                if seg is not None:
                    cv.segment(*seg, "gamma")
        if isinstance(s, (SmoothSmooth, SingularCircumscribed)):
            for pts, closed in _conic_branches(s.c, cv.box):
                cv.polyline(pts, "c", closed)
        else:
            for p in s.cstar.points():
                if p.is_finite:
                    cv.dot(*p.xy(), "center")
    if spec.show_special:
        for chain in special:
            _draw_special(cv, chain)
    if spec.show_chain:
        for chain in chains:
            _draw_chain(cv, chain, "side")
    if spec.show_labels:
        if isinstance(s, (SingularInscribed, BothSingular)):
            for name, p in zip(("C1", "C2"), s.cstar.points()):
                if p.is_finite:
                    cv.label(*p.xy(), name)
        for chain in chains:
            if chain.vertices and chain.vertices[0].is_finite:
                cv.label(*chain.vertices[0].xy(), "A0")

    dash = cv.px(4)
    style = _STYLE % (
        cv.px(spec.conic_stroke),
        cv.px(spec.conic_stroke),
        cv.px(spec.chain_stroke),
        cv.px(spec.chain_stroke),
        dash,
        dash,
    )
    px_h = spec.pixel_width * h / w
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(spec.pixel_width)}" height="{_f(px_h)}" '
        f'viewBox="{_f(x)} {_f(-(y + h))} {_f(w)} {_f(h)}">\n'
        f"<style>{style}</style>\n"
    )
    body = "\n".join(cv.parts)
    return (head + body + ("\n" if body else "") + "</svg>\n").encode("utf-8")


DEFAULT_VIEWBOX = (-2.0, -2.0, 4.0, 4.0)


def render_document(
    doc,
    cfg: Optional[ChainConfig] = None,
    start: Optional[ProjPoint] = None,
    viewbox: Optional[tuple[float, float, float, float]] = None,
) -> tuple[bytes, Optional[str]]:
    """Figure for a loaded scenario file: its chain plus any exceptional chains.

    The chain starts at ``start``, else the file's start, else the first
    admissible start.  Returns the SVG and a note when no chain could be
    drawn.
    """
    cfg = cfg or doc.config
    s = doc.scenario
    chains, note = [], None
    p = start or doc.start
    if p is None:
        found = admissible_starts(s, 1, cfg.seed)
        p = found[0] if found else None
    if p is None:
        note = "no admissible real start"
    else:
        try:
            chains.append(run_chain(s, p, cfg, doc.parity))
        except ChainError as exc:
            note = f"no chain drawn ({type(exc).__name__}: {exc})"
    try:
        special = degenerate_special_chains(s)
    except NoneExists:
        special = []
    box = viewbox or doc.viewbox or DEFAULT_VIEWBOX
    return render_svg(s, chains, RenderSpec(viewbox=tuple(box)), special), note
