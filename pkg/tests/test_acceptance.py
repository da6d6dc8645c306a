"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N PASS/FAIL`` line (also repeated in
the pytest terminal summary) with its wall-clock time.
"""

import math

import numpy as np
import pytest

from conftest import GOLDEN_DIR, inscribed_scenario, tangent_scenario
from poncelet.chain import (
    AsymptoticToPoint,
    AsymptoticToSegment,
    BothSingular,
    ChainConfig,
    Closed,
    DivergentToInfinity,
    admissible_starts,
    conic_point,
    fixed_points,
    porism_probe,
    run_chain,
)
from poncelet.closure import (
    ClosesAt,
    NeverCloses,
    Reason,
    both_singular_condition,
    predict,
    tangent_pair_condition,
)
from poncelet.errors import BadStart, ChainError, NoRealTangent
from poncelet.oracle import alpha_set_bridge, pell_certificate
from poncelet.pencil import classify_pair, normalize_both_singular
from poncelet.projective import ProjPoint, SingularConic, chordal, join, line_conic_intersect
from poncelet.render import render_document
from poncelet.scenario_io import FIGURES, bundled_scenario

CLOSING_TANGENT = [(3, 1), (4, 1), (5, 1), (5, 2), (7, 2)]
INSCRIBED_CASES = [(0.0, 4), (1.0, 8), (1 / math.sqrt(3), 6)]
LONG = ChainConfig(max_steps=10_000)


def _closes(s, start, cfg=LONG) -> bool:
    """True when the chain closes; a chain that breaks down counts as not closing."""
    try:
        return isinstance(run_chain(s, start, cfg).verdict, Closed)
    except ChainError:
        return False


def _forbidden_alpha(alpha: float) -> bool:
    return any(
        abs(alpha - math.cos(math.pi * m / n) ** 2) < 1e-6 for n in range(3, 65) for m in range(1, n)
    )


def _tangency_point(s):
    (t,) = [p for p, k in classify_pair(s.c, s.gamma).real_base_points if k >= 2]
    return t


def _same_points(found, expected, tol=1e-6) -> bool:
    return len(found) == len(expected) and all(
        min(chordal(p.coords, q.coords) for q in expected) < tol for p in found
    )


def _closing_scenarios():
    for n, m in CLOSING_TANGENT:
        yield f"tangent n={n} m={m}", tangent_scenario(math.cos(math.pi * m / n) ** 2), n
    for alpha, n in INSCRIBED_CASES:
        yield f"inscribed alpha={alpha:.4g}", inscribed_scenario(alpha), n
    for name in ("fig_harmonic", "fig_equal"):
        yield name, bundled_scenario(name).scenario, 4


def test_criterion_01_tangent_pair_closure(criterion):
    with criterion(1, "tangent-pair closure at alpha = cos^2(pi m/n), 20 starts each") as c:
        worst = 0.0
        for n, m in CLOSING_TANGENT:
            s = tangent_scenario(math.cos(math.pi * m / n) ** 2)
            assert predict(s) == ClosesAt(n, m)
            starts = admissible_starts(s, 20)
            assert len(starts) == 20
            for p in starts:
                v = run_chain(s, p).verdict
                assert isinstance(v, Closed) and v.n == n, f"(n, m) = ({n}, {m}): {v}"
                assert v.residual < 1e-7
                worst = max(worst, v.residual)
        c.note(f"worst closure residual {worst:.2e}")
    assert c.elapsed < 5.0


def test_criterion_02_no_closure_off_the_closing_set(criterion):
    with criterion(2, "50 generic alphas never close within 1e4 steps") as c:
        rng = np.random.default_rng(2024)
        alphas = []
        while len(alphas) < 50:
            a = float(rng.uniform(0.0, 1.0))
            if 0 < a < 1 and not _forbidden_alpha(a):
                alphas.append(a)
        broke = 0
        for a in alphas:
            s = tangent_scenario(a)
            (start,) = admissible_starts(s, 1)
            try:
                v = run_chain(s, start, LONG).verdict
            except ChainError:
                broke += 1
                continue
            assert not isinstance(v, Closed), f"alpha = {a!r} closed: {v}"
        c.note(f"{broke} chains broke down numerically near the contact point")
    assert c.elapsed < 30.0


def test_criterion_03_condition_b_gate(criterion):
    with criterion(3, "condition (b) fails: analytic NeverCloses and no real chain") as c:
        s = tangent_scenario(0.25, 0.0, 1.0)
        assert tangent_pair_condition(0.25, 0.0, 1.0) == NeverCloses(Reason.CONDITION_B_FAILS)
        assert predict(s) == NeverCloses(Reason.CONDITION_B_FAILS)
        assert admissible_starts(s, 1) == []
        kinds = set()
        for theta in np.linspace(0.0, 2 * math.pi, 64, endpoint=False):
            with pytest.raises((BadStart, NoRealTangent)) as info:
                run_chain(s, conic_point(s.gamma, float(theta)))
            kinds.add(type(info.value).__name__)
        c.note("64 starts raised " + ", ".join(sorted(kinds)))


@pytest.mark.parametrize("name", ["fig_cusp", "fig_cusp2"])
def test_criterion_04_asymptotic_to_tangency(criterion, name):
    with criterion(4, f"{name} converges to the tangency point") as c:
        doc = bundled_scenario(name)
        s = doc.scenario
        t = _tangency_point(s)
        r = run_chain(s, doc.start, LONG)
        assert isinstance(r.verdict, AsymptoticToPoint)
        assert len(r.vertices) <= 10_001
        assert chordal(r.verdict.p.coords, t.coords) < 1e-6
        d = [chordal(v.coords, t.coords) for v in r.vertices]
        assert len(d) > 10
        assert all(b < a for a, b in zip(d[10:], d[11:]))
        c.note(f"{len(d)} vertices, final distance {d[-1]:.1e}")


def test_criterion_05_high_order_contact(criterion):
    with criterion(5, "triple and quadruple contact never close") as c:
        quadruple = tangent_scenario(1.0, 0.0, -1.0)
        cases = {"fig_triple": bundled_scenario("fig_triple").scenario, "quadruple": quadruple}
        for name, s in cases.items():
            assert predict(s) == NeverCloses(Reason.HIGH_ORDER_CONTACT), name
            starts = admissible_starts(s, 10)
            assert len(starts) == 10
            assert not any(_closes(s, p) for p in starts), name
        c.note("10 starts each")


def test_criterion_06_singular_inscribed(criterion):
    with criterion(6, "point-pair case closes at 4, 8, 6 and never with odd period") as c:
        for alpha, n in INSCRIBED_CASES:
            s = inscribed_scenario(alpha)
            assert predict(s).n == n
            for p in admissible_starts(s, 5):
                v = run_chain(s, p).verdict
                assert isinstance(v, Closed) and v.n == n, f"alpha = {alpha}: {v}"
        s = inscribed_scenario(2.0)
        assert isinstance(predict(s), NeverCloses)
        assert not any(_closes(s, p) for p in admissible_starts(s, 3))
        # sweep every closing angle k pi / q with q <= 9: all periods are even
        periods = set()
        for q in range(2, 10):
            for k in range(1, q):
                if math.gcd(k, q) != 1:
                    continue
                s = inscribed_scenario(1 / math.tan(k * math.pi / q))
                for p in admissible_starts(s, 3):
                    v = run_chain(s, p).verdict
                    assert isinstance(v, Closed)
                    periods.add(v.n)
        assert all(n % 2 == 0 for n in periods)
        c.note("periods seen " + ",".join(map(str, sorted(periods))))


def test_criterion_07_asymptotic_singular_regimes(criterion):
    with criterion(7, "segment, vertex and one-sided divergence limits") as c:
        doc = bundled_scenario("fig_asymp")
        s = doc.scenario
        v = run_chain(s, doc.start, LONG).verdict
        assert isinstance(v, AsymptoticToSegment)
        vw = [p for p, _ in line_conic_intersect(s.cstar.axis(), s.gamma)]
        assert _same_points([v.v, v.w], vw)

        doc = bundled_scenario("fig_asym")
        s = doc.scenario
        v = run_chain(s, doc.start, LONG).verdict
        assert isinstance(v, AsymptoticToPoint)
        assert chordal(v.p.coords, s.gamma_lines.vertex().coords) < 1e-6

        doc = bundled_scenario("fig_not_center")
        v = run_chain(doc.scenario, doc.start, LONG).verdict
        assert isinstance(v, DivergentToInfinity)
        c.note(f"fig_not_center: {v}")


def _perturb_d2(s: BothSingular, shift: float) -> BothSingular:
    form = normalize_both_singular(s.gamma_lines, s.cstar)
    u, v, _ = s.cstar.axis().coeffs
    axis_dir = np.array([-v, u]) / math.hypot(u, v)
    d2 = np.array(form.D2.xy()) + shift * axis_dir
    g2 = join(s.gamma_lines.vertex(), ProjPoint([d2[0], d2[1], 1.0]))
    return BothSingular(SingularConic(s.gamma_lines.g1, g2), s.cstar)


def test_criterion_08_both_singular(criterion):
    with criterion(8, "harmonic line pairs close at 4; a 0.01 shift of D2 breaks closure") as c:
        for name in ("fig_harmonic", "fig_equal"):
            s = bundled_scenario(name).scenario
            form = normalize_both_singular(s.gamma_lines, s.cstar)
            assert both_singular_condition(form) == ClosesAt(4)
            assert predict(s) == ClosesAt(4)
            probe = porism_probe(s, n_starts=10)
            assert len(probe.verdicts) == 10 and probe.periods == (4,) * 10, name

            bent = _perturb_d2(s, 0.01)
            bent_form = normalize_both_singular(bent.gamma_lines, bent.cstar)
            assert abs(bent_form.cross_ratio + 1) > 1e-4
            assert both_singular_condition(bent_form) == NeverCloses(Reason.CROSS_RATIO_NOT_HARMONIC)
            assert isinstance(predict(bent), NeverCloses)
            starts = admissible_starts(bent, 10)
            assert starts and not any(_closes(bent, p) for p in starts), name
            c.note(f"{name} shifted cross ratio {bent_form.cross_ratio:.4f}")


def test_criterion_09_extremal_oracle(criterion):
    with criterion(9, "Pell residuals, bridge identity and closure of every bridge alpha") as c:
        worst = max(pell_certificate(n).max_residual for n in range(2, 13))
        assert worst < 1e-6
        chains = 0
        for n in range(3, 21):
            report = alpha_set_bridge(n)
            assert report.match and report.max_error < 1e-12
            for m in range(1, (n - 1) // 2 + 1):
                alpha = math.cos(math.pi * m / n) ** 2
                s = tangent_scenario(alpha)
                (p,) = admissible_starts(s, 1)
                v = run_chain(s, p).verdict
                assert isinstance(v, Closed) and v.n == n // math.gcd(n, m), (n, m, v)
                chains += 1
        c.note(f"max Pell residual {worst:.1e}, {chains} bridge chains closed")
    assert c.elapsed < 2.0


def test_criterion_10_porism(criterion):
    with criterion(10, "period independent of the start for every closing scenario") as c:
        for label, s, n in _closing_scenarios():
            probe = porism_probe(s, n_starts=20)
            assert not probe.errors, label
            assert probe.consistent and probe.periods == (n,) * len(probe.verdicts), label
            assert len(probe.verdicts) == 20, label
        c.note("11 scenarios x 20 starts")


def test_criterion_11_figure_goldens(criterion):
    with criterion(11, "SVG figures byte-stable and equal to the goldens") as c:
        for name in FIGURES:
            doc = bundled_scenario(name)
            first, _ = render_document(doc)
            second, _ = render_document(bundled_scenario(name))
            assert first == second, name
            golden = GOLDEN_DIR / f"{name}.svg"
            assert golden.read_bytes() == first, f"{name} differs from its golden file"
        c.note(f"{len(FIGURES)} figures")
