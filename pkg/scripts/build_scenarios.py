"""Regenerate the bundled figure scenarios in src/poncelet/scenarios/.

Parameters that the figures only show to a few digits (tangency radii,
the position of C1 or the slope of g2 that makes a hexagon close) are
solved for here so the files encode the intended configuration exactly.

Run from the repository root:  python3 scripts/build_scenarios.py
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from poncelet.chain import (
    BothSingular,
    ChainConfig,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
    initial_state,
)
from poncelet.pencil import normalize_singular_circumscribed, normalize_singular_inscribed
from poncelet.projective import ProjLine, ProjPoint, SingularConic, SingularDualConic, conic_from_coeffs
from poncelet.scenario_io import ScenarioDocument, parse_scenario, serialize_scenario

OUT = Path(__file__).resolve().parents[1] / "src" / "poncelet" / "scenarios"


def circle(cx, cy, r):
    return conic_from_coeffs(1.0, 0.0, 1.0, -2 * cx, -2 * cy, cx * cx + cy * cy - r * r)


def axis_ellipse(a2, b2):
    """x^2/a2 + y^2/b2 = 1."""
    return conic_from_coeffs(1 / a2, 0.0, 1 / b2, 0.0, 0.0, -1.0)


def extreme_distance(center, a, b, largest):
    """Largest or smallest distance from ``center`` to the ellipse with semi-axes a, b."""
    sign = -1.0 if largest else 1.0

    def f(t):
        return sign * math.hypot(a * math.cos(t) - center[0], b * math.sin(t) - center[1])

    grid = np.linspace(0, 2 * math.pi, 4001)
    t0 = grid[np.argmin([f(t) for t in grid])]
    res = minimize_scalar(f, bracket=(t0 - 1e-3, t0, t0 + 1e-3), tol=1e-14)
    t = res.x
    return abs(res.fun), (a * math.cos(t), b * math.sin(t))


def on_circle(cx, cy, r, angle):
    return ProjPoint.affine(cx + r * math.cos(angle), cy + r * math.sin(angle))


def cusp_figures():
    a, b = 0.7695, 0.657366
    c = axis_ellipse(a * a, b * b)
    out = {}
    center = (0.1, 0.3)
    r, t = extreme_distance(center, a, b, largest=True)
    ang = math.atan2(t[1] - center[1], t[0] - center[0])
    out["fig_cusp"] = (SmoothSmooth(circle(*center, r), c), on_circle(*center, r, ang + 0.8 * math.pi), (-1.5, -1.5, 3.2, 3.2))
    center = (1.15921, 1.25382)
    r, t = extreme_distance(center, a, b, largest=False)
    ang = math.atan2(t[1] - center[1], t[0] - center[0])
    out["fig_cusp2"] = (SmoothSmooth(circle(*center, r), c), on_circle(*center, r, ang + 0.6 * math.pi), (-1.2, -1.0, 4.0, 4.0))
    return out


def double_triangle():
    k = 1 - 1 / math.sqrt(2)
    gamma = circle(0.0, k, 1.0)
    c = axis_ellipse(2 * math.sqrt(2), 0.5)
    ang = math.atan2(1.27296 - k, -0.198669)
    return SmoothSmooth(gamma, c), on_circle(0.0, k, 1.0, ang), (-2.0, -1.5, 4.0, 3.2)


def triple():
    gamma = circle(0.0, 1.0, 1.0)
    # ellipse centred at (-2/3, 4/3), semi-axes^2 8/3 and 8/9, rotated by -45 degrees
    rot = -math.pi / 4
    cr, sr = math.cos(rot), math.sin(rot)
    r = np.array([[cr, -sr], [sr, cr]])
    q = r @ np.diag([3 / 8, 9 / 8]) @ r.T
    x0 = np.array([-2 / 3, 4 / 3])
    m = np.zeros((3, 3))
    m[:2, :2] = q
    m[:2, 2] = m[2, :2] = -q @ x0
    m[2, 2] = x0 @ q @ x0 - 1
    c = conic_from_coeffs(m[0, 0], 2 * m[0, 1], m[1, 1], 2 * m[0, 2], 2 * m[1, 2], m[2, 2])
    return SmoothSmooth(gamma, c), on_circle(0.0, 1.0, 1.0, 0.25 * math.pi), (-3.0, -1.0, 5.0, 4.0)


def c_singular():
    gamma = axis_ellipse(2.0, 1.0)
    c2 = ProjPoint.affine(3.0, 1.0)

    def gap(x):
        cstar = SingularDualConic(ProjPoint.affine(x, 3.0), c2)
        return normalize_singular_inscribed(gamma, cstar).alpha - 1 / math.sqrt(3)

    x = brentq(gap, 0.5, 0.9, xtol=1e-15)
    cstar = SingularDualConic(ProjPoint.affine(x, 3.0), c2)
    return SingularInscribed(gamma, cstar), ProjPoint.affine(math.sqrt(2) * math.cos(2.0), math.sin(2.0)), (-2.0, -1.5, 5.5, 5.0)


def asymp():
    gamma = axis_ellipse(2.0, 1.0)
    cstar = SingularDualConic(ProjPoint.affine(0.1, 0.2), ProjPoint.affine(3.0, 1.0))
    return SingularInscribed(gamma, cstar), ProjPoint.affine(math.sqrt(2) * math.cos(1.0), math.sin(1.0)), (-2.0, -1.5, 5.5, 3.0)


def asym():
    c = axis_ellipse(0.5, 1.0)
    lines = SingularConic(ProjLine([0.5, 1.0, 5.0]), ProjLine([3.0, 1.0, 1.0]))
    return SingularCircumscribed(lines, c), ProjPoint.affine(-1.0, -4.5), (-3.0, -7.0, 6.0, 9.0)


def gama_singular():
    c = axis_ellipse(0.5, 1.0)
    g1 = ProjLine([3.0, 1.0, 0.0])

    def g2(s):
        return ProjLine([-s, 1.0, 1 / 3])

    def gap(s):
        return normalize_singular_circumscribed(c, SingularConic(g1, g2(s))).alpha - 1 / math.sqrt(3)

    s = brentq(gap, -0.15, 0.0, xtol=1e-15)
    return SingularCircumscribed(SingularConic(g1, g2(s)), c), ProjPoint.affine(-0.8, 2.4), (-3.0, -3.0, 6.0, 6.0)


def harmonic():
    lines = SingularConic(ProjLine([0.5, 1.0, -2.0]), ProjLine([-9.0, 1.0, 0.0]))
    cstar = SingularDualConic(ProjPoint.affine(1.0, 0.0), ProjPoint.affine(-2.0, 0.0))
    return BothSingular(lines, cstar), ProjPoint.affine(2.0, 1.0), (-3.0, -2.0, 8.0, 5.0)


def equal():
    lines = SingularConic(ProjLine([0.0, 1.0, -1.0]), ProjLine([0.0, 1.0, 1.0]))
    cstar = SingularDualConic(ProjPoint.affine(0.0, 0.0), ProjPoint([2.5, 2.0, 0.0]))
    return BothSingular(lines, cstar), ProjPoint.affine(-0.5, 1.0), (-3.0, -1.5, 6.0, 3.0)


def not_center():
    lines = SingularConic(ProjLine([0.0, 1.0, -1.0]), ProjLine([0.0, 1.0, 1.0]))
    cstar = SingularDualConic(ProjPoint.affine(0.0, 0.2), ProjPoint([1.0, 1.0, 0.0]))
    return BothSingular(lines, cstar), ProjPoint.affine(0.3, 1.0), (-3.0, -1.5, 6.0, 3.0)


def main() -> None:
    figures = dict(cusp_figures())
    figures["fig_double_triangle"] = double_triangle()
    figures["fig_triple"] = triple()
    figures["fig_C_singular"] = c_singular()
    figures["fig_asymp"] = asymp()
    figures["fig_asym"] = asym()
    figures["fig_Gama_singular"] = gama_singular()
    figures["fig_harmonic"] = harmonic()
    figures["fig_equal"] = equal()
    figures["fig_not_center"] = not_center()
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (scenario, start, viewbox) in sorted(figures.items()):
        initial_state(scenario, start)
        doc = ScenarioDocument(scenario, ChainConfig(), name, start, None, viewbox)
        text = serialize_scenario(doc)
        # one parse/serialize pass so the file is in canonical form
        text = serialize_scenario(parse_scenario(text))
        (OUT / f"{name}.json").write_text(text)
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
