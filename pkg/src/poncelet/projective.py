"""Homogeneous-coordinate primitives for the real projective plane.

Points and lines are real triples defined up to a nonzero scale, conics are
symmetric 3x3 matrices defined up to scale.  Everything here is immutable.

Representatives are stored normalized: the largest-magnitude entry of a
triple is +1, and the largest-magnitude entry of a conic matrix has
absolute value 1 (its sign is kept, so that ``eval_point`` of the unit
circle at its centre is -1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    Coincident,
    DegenerateConic,
    EmptyRealLocus,
    InvalidConic,
    LineOnConic,
    NotCollinear,
    NotTwoLines,
    PolarUndefined,
    SingularTransform,
)

INCIDENCE_TOL = 1e-9
RANK_TOL = 1e-8
# relative discriminant below which two intersection points are merged
DISC_TOL = 1e-10


def _normalize_triple(v) -> tuple[float, float, float]:
    a = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite homogeneous coordinates {a!r}")
    i = int(np.argmax(np.abs(a)))
    if a[i] == 0.0:
        raise ValueError("homogeneous coordinates must not all be zero")
    a = a / a[i]
    return (float(a[0]), float(a[1]), float(a[2]))


def _g6(x: float) -> str:
    # six significant digits, never "-0"
    return f"{x + 0.0:.6g}" if x != 0 else "0"


def _unit(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    return a / np.linalg.norm(a)


def chordal(u, v) -> float:
    """Chordal distance between two projective triples.

    Both representatives are scaled to unit length and the distance is
    minimized over the sign ambiguity, so the result lies in [0, sqrt(2)].
    """
    a = _unit(u)
    b = _unit(v)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[float, float, float]

    def __init__(self, coords):
        object.__setattr__(self, "coords", _normalize_triple(coords))

    @classmethod
    def affine(cls, x: float, y: float) -> "ProjPoint":
        return cls((x, y, 1.0))

    @classmethod
    def direction(cls, dx: float, dy: float) -> "ProjPoint":
        """The point at infinity in direction (dx, dy)."""
        return cls((dx, dy, 0.0))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords)

    @property
    def is_finite(self) -> bool:
        return abs(self.coords[2]) > INCIDENCE_TOL

    def xy(self) -> tuple[float, float]:
        """Affine coordinates in the chart z = 1."""
        x, y, z = self.coords
        if abs(z) <= INCIDENCE_TOL:
            raise ValueError(f"{self} lies on the line at infinity")
        return (x / z, y / z)

    def equiv(self, other: "ProjPoint", tol: float = INCIDENCE_TOL) -> bool:
        return chordal(self.coords, other.coords) < tol

    def __repr__(self):
        return "ProjPoint[{}:{}:{}]".format(*map(_g6, self.coords))


@dataclass(frozen=True)
class ProjLine:
    coeffs: tuple[float, float, float]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _normalize_triple(coeffs))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def contains(self, p: ProjPoint, tol: float = INCIDENCE_TOL) -> bool:
        return abs(float(np.dot(_unit(self.coeffs), _unit(p.coords)))) < tol

    def equiv(self, other: "ProjLine", tol: float = INCIDENCE_TOL) -> bool:
        return chordal(self.coeffs, other.coeffs) < tol

    def __repr__(self):
        return "ProjLine[{}:{}:{}]".format(*map(_g6, self.coeffs))


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """Line through two distinct points."""
    v = np.cross(_unit(p.coords), _unit(q.coords))
    if np.linalg.norm(v) < INCIDENCE_TOL:
        raise Coincident(f"{p} and {q} coincide; the joining line is undefined")
    return ProjLine(v)


def meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """Intersection point of two distinct lines."""
    v = np.cross(_unit(l1.coeffs), _unit(l2.coeffs))
    if np.linalg.norm(v) < INCIDENCE_TOL:
        raise Coincident(f"{l1} and {l2} coincide; the meeting point is undefined")
    return ProjPoint(v)


def _lex_key(obj) -> tuple:
    v = obj.coords if isinstance(obj, ProjPoint) else obj.coeffs
    return tuple(round(c, 9) for c in v)


class ConicKind(enum.Enum):
    REGULAR = "Regular"
    TWO_LINES = "TwoLines"
    DOUBLE_LINE = "DoubleLine"
    POINT_OR_EMPTY = "PointOrEmpty"


def _classify_matrix(m: np.ndarray) -> ConicKind:
    s = np.linalg.svd(m, compute_uv=False)
    if s[2] > RANK_TOL * s[0]:
        return ConicKind.REGULAR
    if s[1] <= RANK_TOL * s[0]:
        return ConicKind.DOUBLE_LINE
    w = np.linalg.eigvalsh(m)
    big = w[np.abs(w) > RANK_TOL * s[0]]
    if big.min() < 0 < big.max():
        return ConicKind.TWO_LINES
    return ConicKind.POINT_OR_EMPTY


@dataclass(frozen=True, eq=False)
class Conic:
    m: np.ndarray
    kind: ConicKind

    def __init__(self, m):
        a = np.asarray(m, dtype=float).reshape(3, 3)
        a = 0.5 * (a + a.T)
        scale = np.max(np.abs(a))
        if not np.isfinite(scale) or scale == 0.0:
            raise InvalidConic("conic matrix must be finite and nonzero")
        a = a / scale
        a.setflags(write=False)
        object.__setattr__(self, "m", a)
        object.__setattr__(self, "kind", _classify_matrix(a))

    @property
    def is_regular(self) -> bool:
        return self.kind is ConicKind.REGULAR

    def coeffs(self) -> tuple[float, ...]:
        """Coefficients (a, b, c, d, e, f) of the normalized quadratic form."""
        m = self.m
        return (m[0, 0], 2 * m[0, 1], m[1, 1], 2 * m[0, 2], 2 * m[1, 2], m[2, 2])

    def equiv(self, other: "Conic", tol: float = 1e-9) -> bool:
        return chordal(self.m.ravel(), other.m.ravel()) < tol

    def __repr__(self):
        return "Conic({}, coeffs=[{}])".format(
            self.kind.value, ", ".join(map(_g6, self.coeffs()))
        )


def conic_from_coeffs(a, b, c, d, e, f) -> Conic:
    """Conic a x^2 + b xy + c y^2 + d xz + e yz + f z^2 = 0."""
    if not any((a, b, c, d, e, f)):
        raise InvalidConic("all conic coefficients are zero")
    return Conic([[a, b / 2, d / 2], [b / 2, c, e / 2], [d / 2, e / 2, f]])


def eval_point(conic: Conic, p: ProjPoint) -> float:
    v = p.array
    return float(v @ conic.m @ v)


def on_conic(conic: Conic, p: ProjPoint, tol: float = INCIDENCE_TOL) -> bool:
    return abs(eval_point(conic, p)) < tol


def polar_line(conic: Conic, p: ProjPoint) -> ProjLine:
    if not conic.is_regular:
        raise DegenerateConic(f"polar requires a regular conic, got {conic.kind.value}")
    v = conic.m @ p.array
    if np.linalg.norm(v) < INCIDENCE_TOL:
        raise PolarUndefined(f"polar of {p} is undefined")
    return ProjLine(v)


def line_basis(v) -> tuple[np.ndarray, np.ndarray]:
    """Two orthonormal triples spanning the orthogonal complement of ``v``.

    For a line this is a pair of points on it; for a point, a pair of lines
    through it.
    """
    u = _unit(v)
    e = np.zeros(3)
    e[int(np.argmin(np.abs(u)))] = 1.0
    a = np.cross(u, e)
    a /= np.linalg.norm(a)
    b = np.cross(u, a)
    return a, b


def _solve_binary_quadratic(A, B, C, tol=DISC_TOL):
    """Real roots (s, t) of A s^2 + 2B st + C t^2, with multiplicities."""
    scale = max(abs(A), abs(B), abs(C))
    A, B, C = A / scale, B / scale, C / scale
    disc = B * B - A * C
    if disc < -tol:
        return []
    if disc <= tol:
        # double root: the form is proportional to (C s - B t)^2 or (B s - A t)^2
        if abs(A) >= abs(C):
            return [((-B, A), 2)]
        return [((C, -B), 2)]
    q = -(B + math.copysign(math.sqrt(disc), B))
    # the two ratios s/t are q/A and C/q
    return [((q, A), 1), ((C, q), 1)]


def line_conic_intersect(line: ProjLine, conic: Conic) -> list[tuple[ProjPoint, int]]:
    """Real intersection points of a line and a conic, with multiplicities."""
    a, b = line_basis(line.coeffs)
    m = conic.m
    A, B, C = a @ m @ a, a @ m @ b, b @ m @ b
    if max(abs(A), abs(B), abs(C)) < INCIDENCE_TOL:
        raise LineOnConic(f"{line} is contained in {conic}")
    out = [(ProjPoint(s * a + t * b), k) for (s, t), k in _solve_binary_quadratic(A, B, C)]
    return sorted(out, key=lambda pk: _lex_key(pk[0]))


def _require_real_locus(conic: Conic) -> None:
    if not conic.is_regular:
        raise DegenerateConic(f"expected a regular conic, got {conic.kind.value}")
    w = np.linalg.eigvalsh(conic.m)
    if w.min() > 0 or w.max() < 0:
        raise EmptyRealLocus(f"{conic} has no real points")


def tangents_from_point(conic: Conic, p: ProjPoint) -> list[ProjLine]:
    """Tangent lines to a regular conic passing through ``p`` (0, 1 or 2)."""
    if not conic.is_regular:
        raise DegenerateConic(f"tangents require a regular conic, got {conic.kind.value}")
    if on_conic(conic, p):
        return [polar_line(conic, p)]
    contacts = line_conic_intersect(polar_line(conic, p), conic)
    lines = [join(p, t) for t, _ in contacts if not t.equiv(p)]
    return sorted(lines, key=_lex_key)


class Position(enum.Enum):
    INSIDE = "Inside"
    ON = "On"
    OUTSIDE = "Outside"


def point_position(conic: Conic, p: ProjPoint) -> Position:
    """Inside/On/Outside by the two-tangent criterion (scale independent)."""
    _require_real_locus(conic)
    if on_conic(conic, p):
        return Position.ON
    n = len(tangents_from_point(conic, p))
    return Position.OUTSIDE if n == 2 else Position.INSIDE


def split_two_lines(conic: Conic) -> tuple[ProjLine, ProjLine]:
    """Factor a rank-2 real line pair into its two lines."""
    if conic.kind is not ConicKind.TWO_LINES:
        raise NotTwoLines(f"expected TwoLines, got {conic.kind.value}")
    w, v = np.linalg.eigh(conic.m)
    ipos, ineg = int(np.argmax(w)), int(np.argmin(w))
    a = math.sqrt(w[ipos]) * v[:, ipos]
    b = math.sqrt(-w[ineg]) * v[:, ineg]
    g1, g2 = ProjLine(a + b), ProjLine(a - b)
    return tuple(sorted((g1, g2), key=_lex_key))


@dataclass(frozen=True)
class SingularDualConic:
    """Dual degenerate conic: all lines through c1 or through c2."""

    c1: ProjPoint
    c2: ProjPoint

    def __post_init__(self):
        if self.c1.equiv(self.c2):
            raise Coincident("points coincide")

    def points(self) -> tuple[ProjPoint, ProjPoint]:
        return (self.c1, self.c2)

    def axis(self) -> ProjLine:
        """The line C1C2."""
        return join(self.c1, self.c2)


@dataclass(frozen=True)
class SingularConic:
    """Point-conic made of two distinct real lines."""

    g1: ProjLine
    g2: ProjLine

    def __post_init__(self):
        if self.g1.equiv(self.g2):
            raise Coincident("lines coincide")

    def lines(self) -> tuple[ProjLine, ProjLine]:
        return (self.g1, self.g2)

    def vertex(self) -> ProjPoint:
        return meet(self.g1, self.g2)

    def to_conic(self) -> Conic:
        a, b = self.g1.array, self.g2.array
        return Conic(0.5 * (np.outer(a, b) + np.outer(b, a)))

    @classmethod
    def from_conic(cls, conic: Conic) -> "SingularConic":
        return cls(*split_two_lines(conic))


def _collinear_params(points: Sequence[ProjPoint], tol: float = INCIDENCE_TOL):
    u = np.array([_unit(p.coords) for p in points])
    _, s, vt = np.linalg.svd(u)
    if s[2] > tol * s[0] * 10:
        raise NotCollinear("points are not collinear")
    a, b = vt[0], vt[1]
    return [(float(x @ a), float(x @ b)) for x in u]


def _bracket(p, q) -> float:
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> float:
    """Cross ratio (p1, p2; p3, p4) of four collinear points.

    With affine parameters x_i this is (x1-x3)(x2-x4) / ((x1-x4)(x2-x3)).
    A vanishing denominator gives a signed infinity.
    """
    pts = (p1, p2, p3, p4)
    distinct = []
    for p in pts:
        if not any(p.equiv(q) for q in distinct):
            distinct.append(p)
    if len(distinct) < 3:
        raise Coincident("at least three of the four points must be distinct")
    t = _collinear_params(pts)
    num = _bracket(t[0], t[2]) * _bracket(t[1], t[3])
    den = _bracket(t[0], t[3]) * _bracket(t[1], t[2])
    if abs(den) < 1e-15:
        if abs(num) < 1e-15:
            raise Coincident("cross ratio is indeterminate")
        return math.copysign(math.inf, num)
    return num / den


def harmonic_conjugate(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> ProjPoint:
    """The point p4 with cross_ratio(p1, p2, p3, p4) = -1."""
    for x, y in ((p1, p2), (p1, p3), (p2, p3)):
        if x.equiv(y):
            raise Coincident("points must be pairwise distinct")
    _collinear_params((p1, p2, p3))
    a, b, c = _unit(p1.coords), _unit(p2.coords), _unit(p3.coords)
    (s, t), *_ = np.linalg.lstsq(np.column_stack([a, b]), c, rcond=None)
    return ProjPoint(s * a - t * b)


@dataclass(frozen=True, eq=False)
class ProjTransform:
    t: np.ndarray

    def __init__(self, t):
        a = np.asarray(t, dtype=float).reshape(3, 3)
        scale = np.max(np.abs(a))
        if scale == 0 or abs(np.linalg.det(a / scale)) < RANK_TOL:
            raise SingularTransform("projective transform must be invertible")
        a = a / scale
        a.setflags(write=False)
        object.__setattr__(self, "t", a)

    @classmethod
    def identity(cls) -> "ProjTransform":
        return cls(np.eye(3))

    @property
    def inverse(self) -> "ProjTransform":
        return ProjTransform(np.linalg.inv(self.t))

    def __matmul__(self, other: "ProjTransform") -> "ProjTransform":
        """Composition: (self @ other) applies ``other`` first."""
        return ProjTransform(self.t @ other.t)

    def __repr__(self):
        return f"ProjTransform({np.array2string(self.t, precision=6)})"


Transformable = Union[ProjPoint, ProjLine, Conic, SingularConic, SingularDualConic]


def apply_transform(t: ProjTransform, obj: Transformable) -> Transformable:
    """Push an object forward: points by t.p, lines by t^-T.l, conics by t^-T.m.t^-1."""
    if isinstance(obj, ProjPoint):
        return ProjPoint(t.t @ obj.array)
    tinv = np.linalg.inv(t.t)
    if isinstance(obj, ProjLine):
        return ProjLine(tinv.T @ obj.array)
    if isinstance(obj, Conic):
        return Conic(tinv.T @ obj.m @ tinv)
    if isinstance(obj, SingularConic):
        return SingularConic(apply_transform(t, obj.g1), apply_transform(t, obj.g2))
    if isinstance(obj, SingularDualConic):
        return SingularDualConic(apply_transform(t, obj.c1), apply_transform(t, obj.c2))
    raise TypeError(f"cannot transform {type(obj).__name__}")
