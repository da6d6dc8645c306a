"""Pencils of conics: characteristic cubic, intersection type and normal forms.

For two conics with matrices C and G the pencil C + lambda*G has the cubic
det(C + lambda*G).  Its root pattern, together with the rank of the
degenerate members, tells how the two conics meet.  The normal forms bring
a pair into the coordinate systems in which the closure conditions of
``poncelet.closure`` are stated.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    AlphaOutOfRange,
    ContactOrderTooHigh,
    DegenerateConfiguration,
    EmptyRealLocus,
    IdenticalConics,
    LineMeetsConic,
    NoDoubleContact,
    VertexNotInside,
    WrongMultiplicityPattern,
)
from .projective import (
    Conic,
    ConicKind,
    Position,
    ProjLine,
    ProjPoint,
    ProjTransform,
    SingularConic,
    SingularDualConic,
    apply_transform,
    cross_ratio,
    join,
    line_basis,
    line_conic_intersect,
    meet,
    point_position,
    split_two_lines,
)

ROOT_CLUSTER_TOL = 1e-6
TRIPLE_COEFF_TOL = 1e-9
BASE_POINT_MERGE_TOL = 1e-6

# y z = x^2, the reference parabola
REFERENCE_PARABOLA = np.array([[-1.0, 0.0, 0.0], [0.0, 0.0, 0.5], [0.0, 0.5, 0.0]])


def tangent_normal_form_matrices(alpha: float, beta: float, gamma: float):
    """Matrices of y = x^2 and alpha*y = x^2 + beta*xy + gamma*y^2."""
    g = np.array(
        [
            [-1.0, -beta / 2, 0.0],
            [-beta / 2, -gamma, alpha / 2],
            [0.0, alpha / 2, 0.0],
        ]
    )
    return REFERENCE_PARABOLA.copy(), g


def pencil_char_poly(c: Conic, g: Conic) -> np.ndarray:
    """Coefficients [k0, k1, k2, k3] of det(c.m + lambda*g.m), ascending in lambda.

    Exact expansion: the lambda^k coefficient is the sum of the
    determinants obtained by taking k columns from g.m and the rest from c.m.
    """
    a, b = c.m, g.m
    out = np.zeros(4)
    for k in range(4):
        for cols in itertools.combinations(range(3), k):
            mixed = a.copy()
            mixed[:, cols] = b[:, cols]
            out[k] += np.linalg.det(mixed)
    return out


@dataclass(frozen=True)
class PencilSpectrum:
    cubic: tuple[float, float, float, float]
    # (root, multiplicity); complex roots appear as a conjugate pair, inf for a dropped degree
    roots: tuple[tuple[complex | float, int], ...]

    def pattern(self) -> tuple[int, ...]:
        return tuple(sorted((k for _, k in self.roots), reverse=True))

    def real_roots(self) -> list[tuple[float, int]]:
        return [(r, k) for r, k in self.roots if isinstance(r, float) and math.isfinite(r)]


def _refine_double(desc: np.ndarray, guess: float) -> float:
    d = np.polyder(desc)
    crit = np.roots(d)
    crit = crit[np.abs(crit.imag) < 1e-6 * (1 + abs(guess))].real
    if crit.size == 0:
        return guess
    return float(crit[np.argmin(np.abs(crit - guess))])


def cluster_cubic_roots(coeffs) -> tuple[tuple[complex | float, int], ...]:
    """Roots of a polynomial of degree <= 3 (ascending coefficients) with multiplicities.

    A triple root is recognized from the coefficient identities of
    a3 (lambda - r)^3, since its floating-point roots spread like eps**(1/3);
    otherwise two roots merge when |l_i - l_j| < 1e-6 (1 + |l_i|).
    """
    a = np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(a))
    if scale == 0:
        raise ValueError("zero polynomial")
    a = a / scale
    deg = 3
    while deg > 0 and abs(a[deg]) < 1e-13:
        deg -= 1
    out: list[tuple[complex | float, int]] = []
    if deg < 3:
        out.append((math.inf, 3 - deg))
    if deg == 0:
        return tuple(out)
    desc = a[: deg + 1][::-1]
    if deg == 3:
        a3, a2, a1, a0 = desc
        r = -a2 / (3 * a3)
        if abs(a1 - 3 * a3 * r * r) < TRIPLE_COEFF_TOL and abs(a0 + a3 * r**3) < TRIPLE_COEFF_TOL:
            return tuple([(float(r), 3)] + out)
    roots = list(np.roots(desc))
    used = [False] * len(roots)
    found: list[tuple[complex | float, int]] = []
    for i, ri in enumerate(roots):
        if used[i]:
            continue
        used[i] = True
        mult = 1
        for j in range(i + 1, len(roots)):
            if not used[j] and abs(ri - roots[j]) < ROOT_CLUSTER_TOL * (1 + abs(ri)):
                used[j] = True
                mult += 1
        if mult > 1:
            found.append((_refine_double(desc, float(ri.real)), mult))
        elif abs(ri.imag) < 1e-12 * (1 + abs(ri)):
            found.append((float(ri.real), 1))
        else:
            found.append((complex(ri), 1))
    found.sort(key=lambda rk: (complex(rk[0]).real, complex(rk[0]).imag))
    return tuple(found + out)


def pencil_spectrum(c: Conic, g: Conic) -> PencilSpectrum:
    if c.equiv(g):
        raise IdenticalConics("the two conics coincide; every pencil member is the same conic")
    cubic = pencil_char_poly(c, g)
    return PencilSpectrum(tuple(float(x) for x in cubic), cluster_cubic_roots(cubic))


class IntersectionTag(enum.Enum):
    FOUR_SIMPLE = "FourSimple"
    TWO_SIMPLE_ONE_DOUBLE = "TwoSimpleOneDouble"
    TWO_DOUBLE = "TwoDouble"
    TRIPLE_SIMPLE = "TripleSimple"
    QUADRUPLE = "Quadruple"
    HAS_SINGULAR_MEMBER = "HasSingularMember"
    IDENTICAL = "Identical"


@dataclass(frozen=True)
class IntersectionType:
    tag: IntersectionTag
    real_base_points: tuple[tuple[ProjPoint, int], ...] = ()
    spectrum: Optional[PencilSpectrum] = None

    def points_of_order(self, k: int) -> list[ProjPoint]:
        return [p for p, o in self.real_base_points if o == k]


def _member(c: Conic, g: Conic, lam: float) -> Conic:
    return Conic(c.m + lam * g.m)


def _singular_point(m: np.ndarray) -> ProjPoint:
    _, _, vt = np.linalg.svd(m)
    return ProjPoint(vt[-1])


def _base_points_from_member(c: Conic, member: Conic) -> list[tuple[ProjPoint, int]]:
    """Real points of c on a degenerate pencil member, with intersection orders."""
    acc: list[list] = []

    def add(p: ProjPoint, k: int):
        for item in acc:
            if item[0].equiv(p, BASE_POINT_MERGE_TOL):
                item[1] += k
                return
        acc.append([p, k])

    if member.kind is ConicKind.TWO_LINES:
        for line in split_two_lines(member):
            for p, k in line_conic_intersect(line, c):
                add(p, k)
    elif member.kind is ConicKind.DOUBLE_LINE:
        w, v = np.linalg.eigh(member.m)
        line = ProjLine(v[:, int(np.argmax(np.abs(w)))])
        for p, k in line_conic_intersect(line, c):
            add(p, 2 * k)
    elif member.kind is ConicKind.POINT_OR_EMPTY:
        x = _singular_point(member.m)
        if abs(x.array @ c.m @ x.array) < 1e-9:
            add(x, 2)
    return [(p, k) for p, k in acc]


def real_base_points(c: Conic, g: Conic, spectrum: PencilSpectrum) -> list[tuple[ProjPoint, int]]:
    best: list[tuple[ProjPoint, int]] = []
    for lam, _ in spectrum.real_roots():
        pts = _base_points_from_member(c, _member(c, g, lam))
        if sum(k for _, k in pts) > sum(k for _, k in best):
            best = pts
    return sorted(best, key=lambda pk: tuple(round(x, 9) for x in pk[0].coords))


def classify_pair(c: Conic, g: Conic) -> IntersectionType:
    """Intersection configuration of two conics (tangency orders of base points)."""
    if c.equiv(g):
        return IntersectionType(IntersectionTag.IDENTICAL)
    spectrum = pencil_spectrum(c, g)
    if not (c.is_regular and g.is_regular):
        return IntersectionType(IntersectionTag.HAS_SINGULAR_MEMBER, spectrum=spectrum)
    pattern = spectrum.pattern()
    if pattern == (1, 1, 1):
        tag = IntersectionTag.FOUR_SIMPLE
    elif pattern == (2, 1):
        lam = next(r for r, k in spectrum.roots if k == 2)
        rank1 = _member(c, g, lam).kind is ConicKind.DOUBLE_LINE
        tag = IntersectionTag.TWO_DOUBLE if rank1 else IntersectionTag.TWO_SIMPLE_ONE_DOUBLE
    elif pattern == (3,):
        lam = spectrum.roots[0][0]
        rank1 = _member(c, g, lam).kind is ConicKind.DOUBLE_LINE
        tag = IntersectionTag.QUADRUPLE if rank1 else IntersectionTag.TRIPLE_SIMPLE
    else:
        raise WrongMultiplicityPattern(f"unexpected root pattern {pattern}")
    pts = real_base_points(c, g, spectrum)
    return IntersectionType(tag, tuple(pts), spectrum)


# ----------------------------------------------------------------------------
# tangent pairs


@dataclass(frozen=True)
class TangentPairNormalForm:
    alpha: float
    beta: float
    gamma: float
    transform: ProjTransform
    contact: ProjPoint

    def matrices(self):
        return tangent_normal_form_matrices(self.alpha, self.beta, self.gamma)

    @property
    def condition_b(self) -> float:
        """beta^2 - 4 gamma (1 - alpha); positive iff the two simple points are real."""
        return self.beta**2 - 4 * self.gamma * (1 - self.alpha)


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _read_tangent_form(h: np.ndarray, g: np.ndarray) -> tuple[float, float, float]:
    a = np.linalg.inv(h)
    gp = a.T @ g @ a
    gp = gp / -gp[0, 0]
    return 2 * gp[1, 2], -2 * gp[0, 1], -gp[1, 1]


def _frame_for_contact(m: np.ndarray, t: np.ndarray, a2: np.ndarray) -> np.ndarray:
    """Inverse of the matrix whose columns send e1, e2, e3 to a1, a2, t,
    chosen so that c becomes the reference parabola."""
    a1 = _unit(np.linalg.solve(m, np.cross(t, a2)))
    s = -(a1 @ m @ a1)
    k2 = s / (2 * (a2 @ m @ t))
    a = np.column_stack([a1, k2 * a2, t])
    return np.linalg.inv(a)


def _distance_to_identity(h: np.ndarray) -> float:
    h = h / np.max(np.abs(h))
    return min(np.linalg.norm(h - np.eye(3)), np.linalg.norm(h + np.eye(3)))


def normalize_tangent_pair(c: Conic, g: Conic) -> TangentPairNormalForm:
    """Coordinates with c: y = x^2 and g: alpha*y = x^2 + beta*xy + gamma*y^2.

    The contact point goes to the origin and the common tangent to y = 0.
    The remaining freedom is fixed as follows: if the two simple base
    points are real, one of them is sent to [0:1:0] and the x-scale makes
    beta = 1 (so gamma = 0); if they are complex, beta = 0 and |gamma| = 1;
    for two real contact points, beta = gamma = 0.  Among admissible
    choices the transform nearest the identity is returned.
    """
    info = classify_pair(c, g)
    if info.tag in (IntersectionTag.TRIPLE_SIMPLE, IntersectionTag.QUADRUPLE):
        raise ContactOrderTooHigh(f"contact of order > 2 ({info.tag.value})")
    if info.tag not in (IntersectionTag.TWO_SIMPLE_ONE_DOUBLE, IntersectionTag.TWO_DOUBLE):
        raise NoDoubleContact(f"pair has no contact of order 2 ({info.tag.value})")
    m = c.m
    spectrum = info.spectrum
    lam_d = next(r for r, k in spectrum.roots if k == 2)
    lam_s = next(r for r, k in spectrum.roots if k == 1)

    # (contact point, second frame point, mode)
    options: list[tuple[np.ndarray, np.ndarray, str]] = []
    if info.tag is IntersectionTag.TWO_DOUBLE:
        contacts = info.points_of_order(2)
        if len(contacts) < 2:
            raise NoDoubleContact("contact points are not real")
        for t, a2 in itertools.permutations(contacts, 2):
            options.append((_unit(t.array), _unit(a2.array), "double"))
    else:
        t = _unit(_singular_point(c.m + lam_d * g.m).array)
        simple = info.points_of_order(1)
        if simple:
            for p in simple:
                options.append((t, _unit(p.array), "real"))
        else:
            tangent = ProjLine(m @ t)
            others = [ln for ln in split_two_lines(_member(c, g, lam_s)) if not ln.equiv(tangent, 1e-6)]
            chord = others[0]
            a1 = meet(tangent, chord)
            contacts = [p for p, _ in line_conic_intersect(ProjLine(m @ a1.array), c)]
            a2 = max(contacts, key=lambda p: np.linalg.norm(np.cross(_unit(p.array), t)))
            options.append((t, _unit(a2.array), "complex"))

    best = None
    for t, a2, mode in options:
        h = _frame_for_contact(m, t, a2)
        alpha, beta, gamma = _read_tangent_form(h, g.m)
        if mode == "real":
            k = beta
        elif mode == "complex":
            k = math.sqrt(abs(gamma))
        else:
            k = 1.0
        h = np.diag([k, k * k, 1.0]) @ h
        h = h / np.max(np.abs(h))
        score = _distance_to_identity(h)
        if best is None or score < best[0] - 1e-12:
            best = (score, h, t)
    _, h, t = best
    alpha, beta, gamma = _read_tangent_form(h, g.m)
    if abs(alpha - 1) < 1e-9:
        raise ContactOrderTooHigh("alpha = 1 means contact of order > 2")
    return TangentPairNormalForm(alpha, beta, gamma, ProjTransform(h), ProjPoint(t))


@dataclass(frozen=True)
class SpectralCurve:
    """The curve mu^2 = 1/4 (1 + lambda)(1 + alpha*lambda)^2 and its normalization.

    The normalization mu1^2 = 1 + lambda1 maps down by lambda = lambda1,
    mu = mu1 (1 + alpha*lambda1) / 2.
    """

    alpha: float
    cubic: tuple[float, float, float, float]
    double_point: tuple[float, float]

    def mu_squared(self, lam: float) -> float:
        return float(np.polyval(self.cubic[::-1], lam))

    def project(self, lam1: complex, mu1: complex) -> tuple[complex, complex]:
        return lam1, 0.5 * mu1 * (1 + self.alpha * lam1)

    def double_point_preimages(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        lam = -1 / self.alpha
        r = complex(1 + lam) ** 0.5
        return (lam, r), (lam, -r)


def spectral_curve(form: TangentPairNormalForm | float) -> SpectralCurve:
    alpha = form if isinstance(form, (int, float)) else form.alpha
    if not alpha > 0 or abs(alpha - 1) < 1e-12:
        raise AlphaOutOfRange(f"alpha must be positive and different from 1, got {alpha}")
    # 1/4 (1 + l)(1 + a l)^2
    cubic = (0.25, 0.25 * (1 + 2 * alpha), 0.25 * (alpha**2 + 2 * alpha), 0.25 * alpha**2)
    return SpectralCurve(alpha, cubic, (-1 / alpha, 0.0))


def alpha_from_spectrum(s: PencilSpectrum) -> float:
    """alpha as the ratio of the simple root to the double root."""
    if s.pattern() != (2, 1):
        raise WrongMultiplicityPattern(f"expected one simple and one double root, got {s.pattern()}")
    lam_s = next(r for r, k in s.roots if k == 1)
    lam_d = next(r for r, k in s.roots if k == 2)
    if not (isinstance(lam_s, float) and math.isfinite(lam_s) and math.isfinite(lam_d)):
        raise WrongMultiplicityPattern("roots must be real and finite")
    if lam_s == 0 or lam_d == 0:
        raise WrongMultiplicityPattern("roots must be nonzero")
    return lam_s / lam_d


# ----------------------------------------------------------------------------
# singular members


def _send_line_to_infinity(line: ProjLine) -> np.ndarray:
    """A projective map whose third row is ``line``, so the line becomes z = 0."""
    u = _unit(line.array)
    if abs(abs(u[2]) - 1) < 1e-15:
        return np.diag([1.0, 1.0, u[2]])
    r1, r2 = line_basis(u)
    return np.vstack([r1, r2, u])


def _ellipse_to_unit_circle(m: np.ndarray) -> np.ndarray:
    """Affine map taking the ellipse with matrix m (line at infinity disjoint) to x^2 + y^2 = 1."""
    a, b, cc = m[:2, :2], m[:2, 2], m[2, 2]
    w = np.linalg.eigvalsh(a)
    if w.max() < 0:
        a, b, cc = -a, -b, -cc
        w = -w
    if w.min() <= 0:
        raise DegenerateConfiguration("conic is not an ellipse in this chart")
    x0 = -np.linalg.solve(a, b)
    k = b @ np.linalg.solve(a, b) - cc
    if k <= 0:
        raise EmptyRealLocus("ellipse has no real points")
    ew, ev = np.linalg.eigh(a)
    root = ev @ np.diag(np.sqrt(ew)) @ ev.T / math.sqrt(k)
    out = np.eye(3)
    out[:2, :2] = root
    out[:2, 2] = -root @ x0
    return out


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class SingularInscribedNormalForm:
    alpha: float
    transform: ProjTransform


def normalize_singular_inscribed(g: Conic, cstar: SingularDualConic) -> SingularInscribedNormalForm:
    """Chart with C1C2 at infinity, g the unit circle, C1 = [1:0:0], C2 = [alpha:1:0]."""
    axis = cstar.axis()
    if line_conic_intersect(axis, g):
        raise LineMeetsConic("line C1C2 meets the conic; chains are asymptotic")
    h = _send_line_to_infinity(axis)
    hinv = np.linalg.inv(h)
    h = _ellipse_to_unit_circle(hinv.T @ g.m @ hinv) @ h
    d1 = h @ cstar.c1.array
    h = _rotation(-math.atan2(d1[1], d1[0])) @ h
    d2 = h @ cstar.c2.array
    alpha = d2[0] / d2[1]
    if alpha < 0:
        h = np.diag([-1.0, 1.0, 1.0]) @ h
        alpha = -alpha
    return SingularInscribedNormalForm(float(alpha), ProjTransform(h))


@dataclass(frozen=True)
class SingularCircumscribedNormalForm:
    alpha: float
    transform: ProjTransform


def normalize_singular_circumscribed(c: Conic, gamma: SingularConic) -> SingularCircumscribedNormalForm:
    """Chart with c the unit circle and the two lines x = 0 and alpha*x + y = 0."""
    vertex = gamma.vertex()
    if point_position(c, vertex) is not Position.INSIDE:
        raise VertexNotInside("g1 and g2 do not meet inside the conic")
    from .projective import polar_line

    h = _send_line_to_infinity(polar_line(c, vertex))
    hinv = np.linalg.inv(h)
    h = _ellipse_to_unit_circle(hinv.T @ c.m @ hinv) @ h

    def line_image(t, line):
        return np.linalg.inv(t).T @ line.array

    n1 = line_image(h, gamma.g1)
    h = _rotation(-math.atan2(n1[1], n1[0])) @ h
    n2 = line_image(h, gamma.g2)
    alpha = n2[0] / n2[1]
    if alpha < 0:
        h = np.diag([1.0, -1.0, 1.0]) @ h
        alpha = -alpha
    return SingularCircumscribedNormalForm(float(alpha), ProjTransform(h))


@dataclass(frozen=True)
class BothSingularNormalForm:
    transform: ProjTransform
    d1: float
    d2: float
    D1: ProjPoint
    D2: ProjPoint
    cross_ratio: float

    @property
    def equidistant(self) -> bool:
        return abs(self.d1 - self.d2) < 1e-9 * max(1.0, self.d1, self.d2)


def normalize_both_singular(gamma: SingularConic, cstar: SingularDualConic) -> BothSingularNormalForm:
    """Chart in which g1 || g2 and C2 lies at infinity.

    D1, D2 are the points where g1, g2 meet the line C1C2 (original
    coordinates); d1, d2 are the affine distances from C1 to g1, g2 in the
    chart.  Only whether d1 = d2 is chart independent.
    """
    vertex = gamma.vertex()
    c1, c2 = cstar.c1, cstar.c2
    if c1.equiv(vertex):
        raise DegenerateConfiguration("C1 is the intersection point of g1 and g2")
    if c2.equiv(vertex):
        raise DegenerateConfiguration("C2 is the intersection point of g1 and g2")
    axis = join(vertex, c2)
    if axis.contains(c1):
        raise DegenerateConfiguration("line C1C2 passes through g1 ^ g2")
    h = _send_line_to_infinity(axis)
    tr = ProjTransform(h)
    x, y = apply_transform(tr, c1).xy()
    dists = []
    for line in gamma.lines():
        u, v, w = apply_transform(tr, line).coeffs
        dists.append(abs(u * x + v * y + w) / math.hypot(u, v))
    c1c2 = cstar.axis()
    d_1, d_2 = meet(gamma.g1, c1c2), meet(gamma.g2, c1c2)
    cr = cross_ratio(c1, c2, d_1, d_2)
    return BothSingularNormalForm(tr, dists[0], dists[1], d_1, d_2, cr)
