"""Poncelet chains for the four regularity combinations of a conic pair.

A chain is inscribed in ``gamma`` (a regular conic or a pair of lines) and
circumscribed about ``c`` (a regular conic, or the dual degenerate conic of
all lines through C1 or C2).  ``run_chain`` iterates the construction and
returns a verdict: closed polygon, convergence to a point or a segment,
one-sided divergence, or an exhausted step budget.

The inner loop works on plain float triples scaled to unit length; the
public types are converted at the boundary only.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.stats import qmc

from .errors import (
    BadStart,
    ChainError,
    Coincident,
    NoneExists,
    NoRealTangent,
    NoSecondIntersection,
    TangentOnly,
)
from .projective import (
    Conic,
    ProjLine,
    ProjPoint,
    SingularConic,
    SingularDualConic,
    chordal,
    join,
    line_conic_intersect,
    meet,
    point_position,
    Position,
    tangents_from_point,
)

TOL_ENV = "PONCELET_CLOSURE_TOL"
# relative discriminant of the tangent quadratic treated as zero
TANGENT_DISC_TOL = 1e-15
CAPTURE_RADIUS = 1e-3
SAME_LIMIT_TOL = 1e-6


def default_closure_tol() -> float:
    return float(os.environ.get(TOL_ENV, "1e-8"))


# ----------------------------------------------------------------------------
# scenarios


@dataclass(frozen=True)
class SmoothSmooth:
    gamma: Conic
    c: Conic
    kind = "smooth_smooth"


@dataclass(frozen=True)
class SingularInscribed:
    gamma: Conic
    cstar: SingularDualConic
    kind = "singular_inscribed"


@dataclass(frozen=True)
class SingularCircumscribed:
    gamma_lines: SingularConic
    c: Conic
    kind = "singular_circumscribed"


@dataclass(frozen=True)
class BothSingular:
    gamma_lines: SingularConic
    cstar: SingularDualConic
    kind = "both_singular"


PonceletScenario = Union[SmoothSmooth, SingularInscribed, SingularCircumscribed, BothSingular]


@dataclass(frozen=True)
class ChainState:
    """Current vertex, the side that arrived at it, and the active index.

    For a dual singular conic ``parity`` is the index of the point
    C_parity on the incoming side, so the next side passes through
    C_{1-parity}.  For a line pair with a smooth conic it is the index of
    the line g_parity holding the vertex.
    """

    vertex: ProjPoint
    side: ProjLine
    parity: int = 0


@dataclass(frozen=True)
class ChainConfig:
    max_steps: int = 10000
    closure_tol: float = field(default_factory=default_closure_tol)
    convergence_window: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.max_steps < 3:
            raise ValueError("max_steps must be at least 3")
        if not self.closure_tol > 0:
            raise ValueError("closure_tol must be positive")
        if self.convergence_window < 4:
            raise ValueError("convergence_window must be at least 4")


# ----------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Closed:
    n: int
    residual: float = 0.0
    kind = "Closed"

    def __str__(self):
        return f"Closed({self.n})"


@dataclass(frozen=True)
class AsymptoticToPoint:
    p: ProjPoint
    tail_distance: float = 0.0
    kind = "AsymptoticToPoint"

    def __str__(self):
        return f"AsymptoticToPoint {_fmt_point(self.p)}"


@dataclass(frozen=True)
class AsymptoticToSegment:
    v: ProjPoint
    w: ProjPoint
    tail_distance: float = 0.0
    kind = "AsymptoticToSegment"

    def __str__(self):
        return f"AsymptoticToSegment {_fmt_point(self.v)} {_fmt_point(self.w)}"


@dataclass(frozen=True)
class DivergentToInfinity:
    """Sides approach ``segment`` in one direction and escape to infinity in the other."""

    segment: Optional[tuple[ProjPoint, ProjPoint]] = None
    kind = "DivergentToInfinity"

    def __str__(self):
        if self.segment is None:
            return "DivergentToInfinity"
        return "DivergentToInfinity (other direction approaches {} {})".format(
            *(_fmt_point(p) for p in self.segment)
        )


@dataclass(frozen=True)
class BudgetExhausted:
    kind = "BudgetExhausted"

    def __str__(self):
        return "BudgetExhausted"


@dataclass(frozen=True)
class Exceptional:
    """A finite degenerate chain (single segment or pair of tangent lines)."""

    description: str
    kind = "Exceptional"

    def __str__(self):
        return f"Exceptional({self.description})"


ClosureVerdict = Union[
    Closed, AsymptoticToPoint, AsymptoticToSegment, DivergentToInfinity, BudgetExhausted, Exceptional
]


def _num(x: float) -> str:
    s = f"{x:.6g}"
    return "0" if s == "-0" else s


def _fmt_point(p: ProjPoint) -> str:
    if p.is_finite:
        return "({}, {})".format(*map(_num, p.xy()))
    return "[{}:{}:{}]".format(*map(_num, p.coords))


@dataclass(frozen=True)
class ChainResult:
    vertices: tuple[ProjPoint, ...]
    sides: tuple[ProjLine, ...]
    verdict: ClosureVerdict
    residuals: tuple[float, ...]
    parities: tuple[int, ...] = ()

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


# ----------------------------------------------------------------------------
# float-triple kernel


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _mv(m, v):
    return (_dot(m[0], v), _dot(m[1], v), _dot(m[2], v))


def _qf(m, u, v):
    return _dot(u, _mv(m, v))


def _unitt(v):
    n = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    return (v[0] / n, v[1] / n, v[2] / n)


def _chord(a, b):
    d1 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2
    d2 = (a[0] + b[0]) ** 2 + (a[1] + b[1]) ** 2 + (a[2] + b[2]) ** 2
    return math.sqrt(min(d1, d2))


def _perp_basis(u):
    ax = (abs(u[0]), abs(u[1]), abs(u[2]))
    i = ax.index(min(ax))
    e = [0.0, 0.0, 0.0]
    e[i] = 1.0
    a = _unitt(_cross(u, e))
    b = _cross(u, a)
    return a, b


def _tuple_matrix(m) -> tuple:
    return tuple(tuple(float(x) for x in row) for row in np.asarray(m))


def _angular_sep(l1, l2):
    n1 = math.hypot(l1[0], l1[1])
    n2 = math.hypot(l2[0], l2[1])
    if n1 < 1e-12 or n2 < 1e-12:
        return None
    return abs(l1[0] * l2[1] - l1[1] * l2[0]) / (n1 * n2)


class _Kernel:
    """Per-scenario constants and the single-step map on unit triples."""

    def __init__(self, s: PonceletScenario):
        self.s = s
        if isinstance(s, (SmoothSmooth, SingularInscribed)):
            self.G = _tuple_matrix(s.gamma.m)
        else:
            self.glines = tuple(_unitt(g.coeffs) for g in s.gamma_lines.lines())
        if isinstance(s, (SmoothSmooth, SingularCircumscribed)):
            self.M = _tuple_matrix(s.c.m)
            adj = np.linalg.inv(s.c.m) * np.linalg.det(s.c.m)
            self.Madj = _tuple_matrix(adj / np.max(np.abs(adj)))
        else:
            self.centers = tuple(_unitt(p.coords) for p in s.cstar.points())

    # -- helpers
    def tangents(self, v):
        """The two tangent lines from v to c, with their contact points."""
        M = self.M
        pol = _mv(M, v)
        a, b = _perp_basis(_unitt(pol))
        A, B, C = _qf(M, a, a), _qf(M, a, b), _qf(M, b, b)
        scale = max(abs(A), abs(B), abs(C))
        A, B, C = A / scale, B / scale, C / scale
        disc = B * B - A * C
        if disc < -TANGENT_DISC_TOL:
            raise NoRealTangent("vertex lies inside the conic; no real tangent")
        if disc <= TANGENT_DISC_TOL:
            raise TangentOnly("vertex lies on the conic; the chain degenerates")
        q = -(B + math.copysign(math.sqrt(disc), B))
        out = []
        for s_, t_ in ((q, A), (C, q)):
            contact = _unitt((s_ * a[0] + t_ * b[0], s_ * a[1] + t_ * b[1], s_ * a[2] + t_ * b[2]))
            out.append((_unitt(_cross(v, contact)), contact))
        return out

    def pick_other(self, cands, incoming):
        seps = [_angular_sep(l, incoming) for l, _ in cands]
        if None in seps or abs(seps[0] - seps[1]) < 1e-9:
            seps = [_chord(l, incoming) for l, _ in cands]
        return cands[0] if seps[0] >= seps[1] else cands[1]

    def second_point(self, v, w):
        """Second intersection with gamma of the line through v (on gamma) and w."""
        G = self.G
        ww, vw = _qf(G, w, w), _qf(G, v, w)
        p = _unitt((ww * v[0] - 2 * vw * w[0], ww * v[1] - 2 * vw * w[1], ww * v[2] - 2 * vw * w[2]))
        if _chord(p, v) < 1e-12:
            raise NoSecondIntersection("side is tangent to the inscribed-in conic")
        # one Newton step along the side back onto gamma keeps rounding drift
        # from accumulating over long chains
        pw = _qf(G, p, w)
        if pw != 0.0:
            h = _qf(G, p, p) / (2.0 * pw)
            if abs(h) < 1e-6:
                p = _unitt((p[0] - h * w[0], p[1] - h * w[1], p[2] - h * w[2]))
        return p

    def line_index(self, v):
        d0, d1 = abs(_dot(v, self.glines[0])), abs(_dot(v, self.glines[1]))
        return 0 if d0 <= d1 else 1

    def tangency_residual(self, line):
        return abs(_qf(self.Madj, line, line))

    # -- the step
    def step(self, v, incoming, parity):
        s = self.s
        if isinstance(s, SmoothSmooth):
            side, contact = self.pick_other(self.tangents(v), incoming)
            nxt = self.second_point(v, contact)
            res = max(abs(_qf(self.G, nxt, nxt)), abs(_dot(side, nxt)), self.tangency_residual(side))
            return nxt, side, parity, res
        if isinstance(s, SingularInscribed):
            cp = self.centers[1 - parity]
            cr = _cross(v, cp)
            if math.sqrt(_dot(cr, cr)) < 1e-12:
                raise NoSecondIntersection("vertex coincides with the centre of the pencil")
            side = _unitt(cr)
            nxt = self.second_point(v, cp)
            res = max(abs(_qf(self.G, nxt, nxt)), abs(_dot(side, nxt)))
            return nxt, side, 1 - parity, res
        if isinstance(s, SingularCircumscribed):
            side, _ = self.pick_other(self.tangents(v), incoming)
            target = self.glines[1 - self.line_index(v)]
            x = _cross(side, target)
            if math.sqrt(_dot(x, x)) < 1e-12:
                raise NoSecondIntersection("tangent coincides with the other line")
            nxt = _unitt(x)
            res = max(abs(_dot(nxt, target)), abs(_dot(side, v)), self.tangency_residual(side))
            return nxt, side, 1 - parity, res
        cp = self.centers[1 - parity]
        cr = _cross(v, cp)
        if math.sqrt(_dot(cr, cr)) < 1e-12:
            raise NoSecondIntersection("vertex coincides with the centre of the pencil")
        side = _unitt(cr)
        target = self.glines[1 - self.line_index(v)]
        x = _cross(side, target)
        if math.sqrt(_dot(x, x)) < 1e-12:
            raise NoSecondIntersection("side coincides with the other line")
        nxt = _unitt(x)
        res = max(abs(_dot(nxt, target)), abs(_dot(side, cp)))
        return nxt, side, 1 - parity, res


_KERNELS: dict[int, _Kernel] = {}


def _kernel(s: PonceletScenario) -> _Kernel:
    k = _KERNELS.get(id(s))
    if k is None or k.s is not s:
        k = _Kernel(s)
        if len(_KERNELS) > 64:
            _KERNELS.clear()
        _KERNELS[id(s)] = k
    return k


def poncelet_step(s: PonceletScenario, state: ChainState) -> ChainState:
    """One step of the construction from ``state``."""
    k = _kernel(s)
    v, side, parity, _ = k.step(_unitt(state.vertex.coords), _unitt(state.side.coeffs), state.parity)
    return ChainState(ProjPoint(v), ProjLine(side), parity)


# ----------------------------------------------------------------------------
# starts


def _locus_residual(s: PonceletScenario, p: ProjPoint) -> tuple[float, int]:
    u = _unitt(p.coords)
    if isinstance(s, (SmoothSmooth, SingularInscribed)):
        return abs(_qf(_tuple_matrix(s.gamma.m), u, u)), 0
    d = [abs(_dot(u, _unitt(g.coeffs))) for g in s.gamma_lines.lines()]
    i = 0 if d[0] <= d[1] else 1
    return d[i], i


def initial_state(s: PonceletScenario, start: ProjPoint, parity: Optional[int] = None) -> ChainState:
    """State at ``start`` whose first step produces the chain's first side.

    The recorded incoming side is a placeholder that the first step must
    avoid: the lexicographically first tangent for tangent-based steps, or
    the line through C_parity for a dual singular conic (the first side then
    passes through the other centre).  The default parity sends the first
    side through C1, or pairs the start's line g_i with C_i when both
    conics are singular.
    """
    res, line_idx = _locus_residual(s, start)
    if res > 1e-9:
        raise BadStart(f"{start} is not on the inscribed-in locus (residual {res:.3g})")
    if isinstance(s, (SmoothSmooth, SingularCircumscribed)):
        if isinstance(s, SingularCircumscribed) and start.equiv(s.gamma_lines.vertex(), 1e-9):
            raise BadStart("start is the intersection point of the two lines")
        pos = point_position(s.c, start)
        if pos is Position.INSIDE:
            raise NoRealTangent(f"{start} lies inside the conic; no real tangent")
        if pos is Position.ON:
            raise BadStart(f"{start} lies on the conic; the chain degenerates")
        tangents = tangents_from_point(s.c, start)
        p = line_idx if isinstance(s, SingularCircumscribed) else 0
        return ChainState(start, tangents[0], p)
    if parity is None:
        parity = line_idx if isinstance(s, BothSingular) else 1
    centers = s.cstar.points()
    if any(start.equiv(c, 1e-12) for c in centers):
        raise BadStart("start coincides with a centre of the dual conic")
    return ChainState(start, join(start, centers[parity]), parity)


def reversed_state(s: PonceletScenario, state: ChainState, outgoing: ProjLine) -> ChainState:
    """State at ``state.vertex`` whose step retraces the chain backwards."""
    if isinstance(s, (SmoothSmooth, SingularCircumscribed)):
        return ChainState(state.vertex, outgoing, state.parity)
    return ChainState(state.vertex, outgoing, 1 - state.parity)


def _conic_point(conic: Conic, theta: float) -> np.ndarray:
    w, v = np.linalg.eigh(conic.m)
    if (w > 0).sum() == 1:
        w = -w
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    return (
        math.cos(theta) * v[:, 0] / math.sqrt(w[0])
        + math.sin(theta) * v[:, 1] / math.sqrt(w[1])
        + v[:, 2] / math.sqrt(-w[2])
    )


def conic_point(conic: Conic, theta: float) -> ProjPoint:
    """Point of a regular conic with a real locus; theta in [0, 2pi) covers it once."""
    return ProjPoint(_conic_point(conic, theta))


def line_point(line: ProjLine, theta: float) -> ProjPoint:
    """Point of a line; theta in [0, pi) covers it once."""
    a, b = _perp_basis(_unitt(line.coeffs))
    return ProjPoint(np.array(a) * math.cos(theta) + np.array(b) * math.sin(theta))


def fixed_points(s: PonceletScenario) -> list[ProjPoint]:
    """Points to which non-closing chains can accumulate."""
    from .pencil import classify_pair

    if isinstance(s, SmoothSmooth):
        info = classify_pair(s.c, s.gamma)
        # transversal base points are not fixed by the step; tangency points are
        return [p for p, k in info.real_base_points if k >= 2]
    if isinstance(s, SingularInscribed):
        return [p for p, _ in line_conic_intersect(s.cstar.axis(), s.gamma)]
    if isinstance(s, SingularCircumscribed):
        return [s.gamma_lines.vertex()]
    axis = s.cstar.axis()
    out = [s.gamma_lines.vertex()]
    for g in s.gamma_lines.lines():
        try:
            out.append(meet(g, axis))
        except Coincident:
            pass
    return out


def admissible_starts(s: PonceletScenario, n: int, seed: int = 0) -> list[ProjPoint]:
    """``n`` quasi-random starts on the inscribed-in locus from which a chain can begin."""
    sampler = qmc.Halton(d=1, scramble=True, seed=seed)
    avoid = fixed_points(s)
    out: list[ProjPoint] = []
    for _ in range(200):
        for u in sampler.random(max(n, 8))[:, 0]:
            if isinstance(s, (SmoothSmooth, SingularInscribed)):
                p = conic_point(s.gamma, 2 * math.pi * u)
            else:
                p = line_point(s.gamma_lines.g1, math.pi * u)
            if any(p.equiv(f, 1e-3) for f in avoid):
                continue
            try:
                st = initial_state(s, p)
                _kernel(s).step(_unitt(st.vertex.coords), _unitt(st.side.coeffs), st.parity)
            except ChainError:
                continue
            out.append(p)
            if len(out) == n:
                return out
    return out


# ----------------------------------------------------------------------------
# running


def _decreasing(ds: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(ds, ds[1:]))


class _Tracker:
    def __init__(self, s, cfg):
        self.s = s
        self.cfg = cfg
        self._fixed = None

    @property
    def fixed(self):
        if self._fixed is None:
            self._fixed = [_unitt(p.coords) for p in fixed_points(self.s)]
        return self._fixed

    def limit_of(self, seq):
        """Limit of a subsequence tail: numerically settled, or monotone towards a fixed point.

        Returns ``(limit, distance, captured)`` or None; ``captured`` marks a
        limit inferred from monotone approach rather than observed directly.
        """
        last = seq[-1]
        diam = max(_chord(x, last) for x in seq)
        if diam < self.cfg.closure_tol:
            for f in self.fixed:
                if _chord(f, last) < SAME_LIMIT_TOL:
                    return f, _chord(f, last), False
            return last, 0.0, False
        if not self.fixed:
            return None
        f = min(self.fixed, key=lambda f: _chord(f, last))
        ds = [_chord(f, x) for x in seq]
        if ds[-1] < CAPTURE_RADIUS and _decreasing(ds):
            return f, ds[-1], True
        return None

    def verdict(self, verts):
        """``(verdict, captured)`` for the trailing window, or None."""
        w = self.cfg.convergence_window
        tail = verts[-w:]
        a = self.limit_of(tail[0::2])
        b = self.limit_of(tail[1::2])
        if a is None or b is None:
            return None
        (la, da, ca), (lb, db, cb) = a, b
        dist = max(da, db)
        if _chord(la, lb) < SAME_LIMIT_TOL:
            return AsymptoticToPoint(ProjPoint(la), dist), ca or cb
        # order the pair by the parity of the global index
        if (len(verts) - 1) % 2 == 1:
            la, lb = lb, la
        return AsymptoticToSegment(ProjPoint(la), ProjPoint(lb), dist), ca or cb

    @staticmethod
    def still_approaching(verts, since, verdict):
        """Both subsequences kept moving strictly closer to the verdict's limit set."""
        if isinstance(verdict, AsymptoticToPoint):
            targets = [_unitt(verdict.p.coords)]
        else:
            targets = [_unitt(verdict.v.coords), _unitt(verdict.w.coords)]
        for parity in (0, 1):
            seq = verts[since + parity :: 2]
            ds = [min(_chord(t, x) for t in targets) for x in seq]
            if not _decreasing(ds):
                return False
        return True

    def stalled(self, verts):
        """Verdict when a step fails after the chain has settled onto fixed points."""
        if not self.fixed or len(verts) < 3:
            return None
        near = []
        for x in verts[-2:]:
            f = min(self.fixed, key=lambda f: _chord(f, x))
            if _chord(f, x) > CAPTURE_RADIUS:
                return None
            near.append((f, _chord(f, x)))
        (la, da), (lb, db) = near
        if _chord(la, lb) < SAME_LIMIT_TOL:
            return AsymptoticToPoint(ProjPoint(la), max(da, db))
        return AsymptoticToSegment(ProjPoint(la), ProjPoint(lb), max(da, db))


def _iterate(s, state: ChainState, cfg: ChainConfig, detect: bool = True):
    k = _kernel(s)
    tracker = _Tracker(s, cfg)
    tol = cfg.closure_tol
    v0 = _unitt(state.vertex.coords)
    s0 = _unitt(state.side.coeffs)
    p0 = state.parity
    v, side, parity = v0, s0, p0
    verts, sides, res, pars = [v0], [], [], [p0]
    w = cfg.convergence_window
    verdict = None
    pending = None
    diverge = isinstance(s, BothSingular)
    for step in range(1, cfg.max_steps + 1):
        try:
            v, side, parity, r = k.step(v, side, parity)
        except ChainError:
            if step == 1:
                raise
            verdict = tracker.stalled(verts) if detect else None
            if verdict is None:
                raise
            break
        verts.append(v)
        sides.append(side)
        res.append(r)
        pars.append(parity)
        if parity == p0 and _chord(v, v0) < tol and _chord(side, s0) < tol:
            verdict = Closed(step, _chord(v, v0))
            break
        if diverge and abs(v[2]) / max(abs(v[0]), abs(v[1]), abs(v[2])) < tol:
            verdict = DivergentToInfinity()
            break
        if detect and step % w == 0 and step >= 2 * w:
            found = tracker.verdict(verts)
            if found is None:
                pending = None
                continue
            candidate, captured = found
            if not captured:
                verdict = candidate
                break
            # an inferred limit is accepted only after the approach persists for
            # several times as many steps, which rejects slow orbits that merely
            # pass close to a fixed point
            if pending is None:
                pending = step
            elif step >= 4 * pending and tracker.still_approaching(verts, pending - w, candidate):
                verdict = candidate
                break
    if verdict is None and detect and pending is not None:
        found = tracker.verdict(verts)
        if found is not None and tracker.still_approaching(verts, pending - w, found[0]):
            verdict = found[0]
    if verdict is None:
        verdict = BudgetExhausted()
    return verts, sides, res, pars, verdict


def _to_result(verts, sides, res, pars, verdict) -> ChainResult:
    if isinstance(verdict, Closed):
        verts = verts[:-1]
    return ChainResult(
        tuple(ProjPoint(v) for v in verts),
        tuple(ProjLine(x) for x in sides),
        verdict,
        tuple(res),
        tuple(pars[: len(verts)]),
    )


def _is_infinite_limit(verdict, s) -> bool:
    if isinstance(verdict, DivergentToInfinity):
        return True
    if isinstance(verdict, AsymptoticToPoint):
        return not verdict.p.is_finite
    return False


def run_chain(
    s: PonceletScenario,
    start: ProjPoint | ChainState,
    cfg: Optional[ChainConfig] = None,
    parity: Optional[int] = None,
) -> ChainResult:
    """Iterate the Poncelet construction from ``start`` and classify the chain.

    For two singular conics whose vertex sequence heads to infinity in one
    direction and to the segment D1D2 in the other, the verdict is
    DivergentToInfinity carrying that segment; both directions are run to
    decide this.
    """
    cfg = cfg or ChainConfig()
    state = start if isinstance(start, ChainState) else initial_state(s, start, parity)
    verts, sides, res, pars, verdict = _iterate(s, state, cfg)
    if isinstance(s, BothSingular) and not isinstance(verdict, Closed):
        verdict = _both_singular_verdict(s, state, sides, cfg, verdict)
    return _to_result(verts, sides, res, pars, verdict)


def _both_singular_verdict(s: BothSingular, state, sides, cfg, forward):
    if not sides:
        return forward
    back_state = reversed_state(s, state, ProjLine(sides[0]))
    try:
        _, _, _, _, backward = _iterate(s, back_state, cfg)
    except ChainError:
        return forward
    axis = s.cstar.axis()
    seg = tuple(meet(g, axis) for g in s.gamma_lines.lines())
    inf_f, inf_b = _is_infinite_limit(forward, s), _is_infinite_limit(backward, s)
    if inf_f or inf_b:
        return DivergentToInfinity(seg)
    return forward


@dataclass(frozen=True)
class ProbeReport:
    verdicts: tuple[ClosureVerdict, ...]
    periods: tuple[int, ...]
    consistent: bool
    errors: tuple[str, ...] = ()


def porism_probe(s: PonceletScenario, cfg: Optional[ChainConfig] = None, n_starts: int = 20) -> ProbeReport:
    """Run chains from ``n_starts`` quasi-random starts and compare their periods."""
    cfg = cfg or ChainConfig()
    verdicts, errors = [], []
    for p in admissible_starts(s, n_starts, cfg.seed):
        try:
            verdicts.append(run_chain(s, p, cfg).verdict)
        except ChainError as exc:
            errors.append(f"{type(exc).__name__}: {exc}")
    periods = tuple(sorted(v.n for v in verdicts if isinstance(v, Closed)))
    return ProbeReport(tuple(verdicts), periods, len(set(periods)) <= 1, tuple(sorted(errors)))


def degenerate_special_chains(s: PonceletScenario) -> list[ChainResult]:
    """The finite exceptional chains of the asymptotic regimes."""
    if isinstance(s, SingularInscribed):
        axis = s.cstar.axis()
        pts = [p for p, _ in line_conic_intersect(axis, s.gamma)]
        if len(pts) == 2:
            return [ChainResult(tuple(pts), (axis,), Exceptional("segment VW"), (0.0,))]
    elif isinstance(s, SingularCircumscribed):
        vtx = s.gamma_lines.vertex()
        if point_position(s.c, vtx) is Position.OUTSIDE:
            t = tuple(tangents_from_point(s.c, vtx))
            return [ChainResult((vtx,), t, Exceptional("tangent pair from g1^g2"), (0.0, 0.0))]
    elif isinstance(s, BothSingular):
        axis = s.cstar.axis()
        d = tuple(meet(g, axis) for g in s.gamma_lines.lines())
        if not d[0].equiv(d[1]):
            return [ChainResult(d, (axis,), Exceptional("segment D1D2"), (0.0,))]
    raise NoneExists("configuration admits no exceptional chain")
