"""Closed-form closure conditions and a dispatcher over all pair types.

Every condition compares an invariant against a finite list of rational
angles (all pairs with denominator up to ``n_max``), so the outcome is a
transparent table lookup rather than a continued-fraction guess.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from .chain import (
    BothSingular,
    ChainConfig,
    ChainResult,
    Closed,
    PonceletScenario,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
    admissible_starts,
    run_chain,
)
from .errors import (
    AlphaDegenerate,
    ChainError,
    LineMeetsConic,
    NegativeAlpha,
    UnsupportedConfiguration,
    VertexNotInside,
    WrongType,
)
from .pencil import (
    BothSingularNormalForm,
    IntersectionTag,
    IntersectionType,
    alpha_from_spectrum,
    classify_pair,
    normalize_both_singular,
    normalize_singular_circumscribed,
    normalize_singular_inscribed,
    normalize_tangent_pair,
)

N_MAX = 64
RECOGNITION_TOL = 1e-9


class Reason(enum.Enum):
    NOT_ROOT_OF_UNITY = "NotRootOfUnity"
    CONDITION_B_FAILS = "ConditionBFails"
    HIGH_ORDER_CONTACT = "HighOrderContact"
    ODD_EXCLUDED = "OddExcluded"
    CROSS_RATIO_NOT_HARMONIC = "CrossRatioNotHarmonic"
    ASYMPTOTIC_REGIME = "AsymptoticRegime"


@dataclass(frozen=True)
class ClosesAt:
    """Closed polygons with ``n`` sides; ``m`` is the rotation numerator when known."""

    n: int
    m: Optional[int] = None

    def __str__(self):
        return f"ClosesAt({self.n})"


@dataclass(frozen=True)
class NeverCloses:
    reason: Reason

    def __str__(self):
        return f"NeverCloses({self.reason.value})"


AnalyticVerdict = Union[ClosesAt, NeverCloses]


def _check_n_max(n_max: int) -> None:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")


def _cos2_rational(alpha: float, n_max: int, tol: float) -> Optional[tuple[int, int]]:
    """Smallest (n, m) with 2m < n and alpha = cos^2(pi m / n), if any."""
    for n in range(3, n_max + 1):
        for m in range(1, (n - 1) // 2 + 1):
            if abs(alpha - math.cos(math.pi * m / n) ** 2) < tol:
                return n, m
    return None


def tangent_pair_condition(
    alpha: float, beta: float, gamma: float, n_max: int = N_MAX, tol: float = RECOGNITION_TOL
) -> AnalyticVerdict:
    """Closure for the pair y = x^2, alpha*y = x^2 + beta*xy + gamma*y^2.

    Polygons close with n sides iff alpha = cos^2(pi m / n) for some
    1 <= m < n/2 and beta^2 - 4 gamma (1 - alpha) > 0.  The smallest such n
    is reported.

    Raises:
        AlphaDegenerate: alpha is 0 or 1 (contact of the wrong order).
    """
    _check_n_max(n_max)
    if abs(alpha) < tol or abs(alpha - 1) < tol:
        raise AlphaDegenerate(f"alpha = {alpha:g} does not describe a simple tangency")
    hit = _cos2_rational(alpha, n_max, tol)
    if hit is None:
        return NeverCloses(Reason.NOT_ROOT_OF_UNITY)
    if beta * beta - 4 * gamma * (1 - alpha) <= 0:
        return NeverCloses(Reason.CONDITION_B_FAILS)
    return ClosesAt(*hit)


def high_order_condition(t: IntersectionType | IntersectionTag) -> AnalyticVerdict:
    """Pairs with a contact point of order 3 or 4 admit no closed polygons."""
    tag = t.tag if isinstance(t, IntersectionType) else t
    if tag not in (IntersectionTag.TRIPLE_SIMPLE, IntersectionTag.QUADRUPLE):
        raise WrongType(f"expected TripleSimple or Quadruple, got {tag.value}")
    return NeverCloses(Reason.HIGH_ORDER_CONTACT)


def _angle(alpha: float) -> float:
    if alpha < 0:
        raise NegativeAlpha(f"alpha must be non-negative, got {alpha:g}")
    return math.pi / 2 if alpha == 0 else math.atan(1 / alpha)


def _mod_pi_distance(a: float, b: float) -> float:
    d = (a - b) % math.pi
    return min(d, math.pi - d)


def singular_inscribed_condition(alpha: float, n_max: int = N_MAX, tol: float = RECOGNITION_TOL) -> AnalyticVerdict:
    """Closure when the circumscribed conic degenerates to two points.

    With theta = arctan(1/alpha), polygons close with 2n sides iff
    theta = k pi / n with gcd(k, n) = 1.  Side counts are always even.
    """
    _check_n_max(n_max)
    theta = _angle(alpha)
    for n in range(2, n_max + 1):
        for k in range(1, n):
            if math.gcd(k, n) == 1 and abs(theta - k * math.pi / n) < tol:
                return ClosesAt(2 * n, k)
    return NeverCloses(Reason.NOT_ROOT_OF_UNITY)


def singular_circumscribed_condition(
    alpha: float, n_max: int = N_MAX, tol: float = RECOGNITION_TOL
) -> AnalyticVerdict:
    """Literal dual criterion: theta = arctan(1/alpha) in {2 k pi / n}, modulo pi.

    Under the polarity that exchanges the two singular cases the dual
    normal form maps onto the inscribed one with the same alpha, so the
    minimal side count is the one from :func:`singular_inscribed_condition`;
    this criterion returns a multiple of it (twice as large).  ``predict``
    uses the polarity route; this function is kept so the two can be
    compared.
    """
    _check_n_max(n_max)
    theta = _angle(alpha)
    for n in range(2, n_max + 1):
        for k in range(1, n):
            if math.gcd(k, n) == 1 and _mod_pi_distance(theta, 2 * k * math.pi / n) < tol:
                return ClosesAt(2 * n, k)
    return NeverCloses(Reason.NOT_ROOT_OF_UNITY)


def both_singular_condition(form: BothSingularNormalForm, tol: float = RECOGNITION_TOL) -> AnalyticVerdict:
    """Two singular conics close (always as quadrilaterals) iff (C1, C2; D1, D2) = -1."""
    if abs(form.cross_ratio + 1) < tol:
        return ClosesAt(4)
    return NeverCloses(Reason.CROSS_RATIO_NOT_HARMONIC)


def _smooth_prediction(s: SmoothSmooth, n_max: int, tol: float) -> AnalyticVerdict:
    info = classify_pair(s.c, s.gamma)
    tag = info.tag
    if tag in (IntersectionTag.TRIPLE_SIMPLE, IntersectionTag.QUADRUPLE):
        return high_order_condition(info)
    if tag is IntersectionTag.TWO_SIMPLE_ONE_DOUBLE:
        form = normalize_tangent_pair(s.c, s.gamma)
        if not 0 < form.alpha < 1:
            # real chains exist and converge to the contact point
            return NeverCloses(Reason.ASYMPTOTIC_REGIME)
        return tangent_pair_condition(form.alpha, form.beta, form.gamma, n_max, tol)
    if tag is IntersectionTag.TWO_DOUBLE:
        alpha = alpha_from_spectrum(info.spectrum)
        if info.points_of_order(2):
            # real contact points: chains either accumulate there or do not exist
            return NeverCloses(Reason.ASYMPTOTIC_REGIME if not 0 < alpha < 1 else Reason.CONDITION_B_FAILS)
        if not 0 < alpha < 1:
            return NeverCloses(Reason.CONDITION_B_FAILS)
        # double contact at complex points: the step is a rotation with the same alpha
        hit = _cos2_rational(alpha, n_max, tol)
        return ClosesAt(*hit) if hit else NeverCloses(Reason.NOT_ROOT_OF_UNITY)
    raise UnsupportedConfiguration(f"closure conditions for {tag.value} pairs are not implemented")


def predict(s: PonceletScenario, n_max: int = N_MAX, tol: float = RECOGNITION_TOL) -> AnalyticVerdict:
    """Analytic closure verdict for any supported scenario.

    Raises:
        UnsupportedConfiguration: four transversal intersection points, or
            identical conics.
    """
    if isinstance(s, SmoothSmooth):
        return _smooth_prediction(s, n_max, tol)
    if isinstance(s, SingularInscribed):
        try:
            form = normalize_singular_inscribed(s.gamma, s.cstar)
        except LineMeetsConic:
            return NeverCloses(Reason.ASYMPTOTIC_REGIME)
        return singular_inscribed_condition(form.alpha, n_max, tol)
    if isinstance(s, SingularCircumscribed):
        try:
            form = normalize_singular_circumscribed(s.c, s.gamma_lines)
        except VertexNotInside:
            return NeverCloses(Reason.ASYMPTOTIC_REGIME)
        return singular_inscribed_condition(form.alpha, n_max, tol)
    form = normalize_both_singular(s.gamma_lines, s.cstar)
    verdict = both_singular_condition(form, tol)
    if isinstance(verdict, NeverCloses) and not form.equidistant:
        return NeverCloses(Reason.ASYMPTOTIC_REGIME)
    return verdict


def dual_literal_prediction(s: SingularCircumscribed, n_max: int = N_MAX) -> Optional[AnalyticVerdict]:
    """The literal {2k pi/n} criterion for a line-pair scenario, or None outside its domain."""
    try:
        form = normalize_singular_circumscribed(s.c, s.gamma_lines)
    except VertexNotInside:
        return None
    return singular_circumscribed_condition(form.alpha, n_max)


@dataclass(frozen=True)
class CrossCheck:
    analytic: AnalyticVerdict
    numeric: Optional[ChainResult]
    note: str
    agree: bool

    @property
    def numeric_label(self) -> str:
        return str(self.numeric.verdict) if self.numeric is not None else self.note


def verdicts_agree(analytic: AnalyticVerdict, numeric: Optional[ChainResult]) -> bool:
    """Closed(n') agrees with ClosesAt(n) iff n' divides n; any non-closure agrees with NeverCloses."""
    closed = numeric is not None and isinstance(numeric.verdict, Closed)
    if isinstance(analytic, ClosesAt):
        return closed and analytic.n % numeric.verdict.n == 0
    return not closed


def cross_check(
    s: PonceletScenario,
    start=None,
    cfg: Optional[ChainConfig] = None,
    n_max: int = N_MAX,
) -> CrossCheck:
    """Compare :func:`predict` with a numeric chain from ``start`` (or the first admissible start)."""
    cfg = cfg or ChainConfig()
    analytic = predict(s, n_max)
    if start is None:
        starts = admissible_starts(s, 1, cfg.seed)
        if not starts:
            return CrossCheck(analytic, None, "no real chain", verdicts_agree(analytic, None))
        start = starts[0]
    try:
        result = run_chain(s, start, cfg)
    except ChainError as exc:
        return CrossCheck(analytic, None, f"{type(exc).__name__}: {exc}", verdicts_agree(analytic, None))
    return CrossCheck(analytic, result, str(result.verdict), verdicts_agree(analytic, result))

