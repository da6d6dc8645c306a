import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import inscribed_scenario, tangent_scenario
from poncelet.chain import (
    TOL_ENV,
    AsymptoticToPoint,
    BothSingular,
    BudgetExhausted,
    ChainConfig,
    ChainState,
    Closed,
    Exceptional,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
    admissible_starts,
    conic_point,
    default_closure_tol,
    degenerate_special_chains,
    initial_state,
    poncelet_step,
    porism_probe,
    reversed_state,
    run_chain,
)
from poncelet.errors import BadStart, NoneExists, NoRealTangent
from poncelet.projective import (
    Conic,
    ProjLine,
    ProjPoint,
    SingularConic,
    SingularDualConic,
    chordal,
    conic_from_coeffs,
    eval_point,
    join,
    line_conic_intersect,
    meet,
    tangents_from_point,
)
from poncelet.scenario_io import FIGURES, bundled_scenario

UNIT = conic_from_coeffs(1, 0, 1, 0, 0, -1)
SHORT = ChainConfig(max_steps=400)


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def tangency_residual(conic: Conic, line: ProjLine) -> float:
    """|l^T adj(M) l| for unit l and normalized adj(M): zero iff l touches the conic."""
    adj = np.linalg.inv(conic.m) * np.linalg.det(conic.m)
    adj /= np.max(np.abs(adj))
    l = _unit(line.coeffs)
    return abs(l @ adj @ l)


def incidence_residual(s, result) -> float:
    """Independent recomputation of every constraint along a chain."""
    worst = 0.0
    verts, sides = result.vertices, result.sides
    for k, side in enumerate(sides):
        a, b = verts[k], verts[(k + 1) % len(verts)]
        if k + 1 == len(verts) and not isinstance(result.verdict, Closed):
            break
        for p in (a, b):
            worst = max(worst, abs(float(_unit(side.coeffs) @ _unit(p.coords))))
        if isinstance(s, (SmoothSmooth, SingularCircumscribed)):
            worst = max(worst, tangency_residual(s.c, side))
        else:
            worst = max(worst, min(abs(float(_unit(side.coeffs) @ _unit(c.coords))) for c in s.cstar.points()))
    for p in verts:
        if isinstance(s, (SmoothSmooth, SingularInscribed)):
            worst = max(worst, abs(eval_point(s.gamma, ProjPoint(_unit(p.coords)))))
        else:
            worst = max(worst, min(abs(float(_unit(g.coeffs) @ _unit(p.coords))) for g in s.gamma_lines.lines()))
    return worst


def circumscribed_scenario(alpha):
    """Unit circle with the lines x = 0 and alpha*x + y = 0."""
    return SingularCircumscribed(SingularConic(ProjLine([1, 0, 0]), ProjLine([alpha, 1, 0])), UNIT)


class TestStep:
    def test_figure_triangle_step(self):
        s = bundled_scenario("fig_double_triangle").scenario
        start = ProjPoint.affine(-0.198669, 1.27296)
        start = min((p for p, _ in _gamma_points_near(s, start)), key=lambda p: chordal(p.coords, start.coords))
        target = ProjPoint.affine(0.933866, 0.650516)
        nexts = [poncelet_step(s, ChainState(start, t)).vertex for t in tangents_from_point(s.c, start)]
        assert min(chordal(n.coords, target.coords) for n in nexts) < 1e-4

    def test_point_pair_symmetric_step(self):
        s = SingularInscribed(UNIT, _dual([1, 0, 0], [0, 1, 0]))
        # incoming side x = 1 passes through C2 = [0:1:0]; the next side goes through C1
        st_ = ChainState(ProjPoint.affine(1, 0), ProjLine([1, 0, -1]), parity=1)
        nxt = poncelet_step(s, st_)
        assert nxt.side.equiv(ProjLine([0, 1, 0]))
        assert nxt.vertex.equiv(ProjPoint.affine(-1, 0))
        assert nxt.parity == 0

    def test_concentric_square(self):
        caustic = conic_from_coeffs(1, 0, 1, 0, 0, -0.5)
        s = SmoothSmooth(UNIT, caustic)
        nxt = poncelet_step(s, initial_state(s, ProjPoint.affine(1, 0)))
        assert nxt.vertex.equiv(ProjPoint.affine(0, 1), 1e-12) or nxt.vertex.equiv(ProjPoint.affine(0, -1), 1e-12)
        assert tangency_residual(caustic, nxt.side) < 1e-12
        r = run_chain(s, ProjPoint.affine(1, 0))
        assert r.verdict.n == 4


def _gamma_points_near(s, p):
    # snap a rounded figure coordinate onto the conic along the vertical line
    x, _ = p.xy()
    return line_conic_intersect(ProjLine([1, 0, -x]), s.gamma)


def _dual(c1, c2):
    return SingularDualConic(ProjPoint(c1), ProjPoint(c2))


class TestRunChain:
    def test_figure_triangle_closes_from_every_start(self):
        s = bundled_scenario("fig_double_triangle").scenario
        starts = admissible_starts(s, 20, seed=7)
        assert len(starts) == 20
        for p in starts:
            r = run_chain(s, p)
            assert r.verdict.n == 3
            assert len(r.vertices) == len(r.sides) == 3

    def test_open_chain_shapes(self):
        s = tangent_scenario(0.3)
        r = run_chain(s, admissible_starts(s, 1)[0], SHORT)
        assert isinstance(r.verdict, BudgetExhausted)
        assert len(r.sides) == len(r.vertices) - 1 == 400
        assert len(r.residuals) == len(r.sides)

    def test_bad_starts(self):
        s = tangent_scenario(0.25)
        with pytest.raises(BadStart):
            run_chain(s, ProjPoint.affine(5, 5))
        # a point on gamma lying inside c
        inner = SmoothSmooth(UNIT, conic_from_coeffs(1, 0, 1, 0, 0, -4))
        with pytest.raises(NoRealTangent):
            run_chain(inner, ProjPoint.affine(1, 0))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ChainConfig(max_steps=2)
        with pytest.raises(ValueError):
            ChainConfig(closure_tol=0)
        with pytest.raises(ValueError):
            ChainConfig(convergence_window=3)

    def test_tolerance_from_environment(self, monkeypatch):
        monkeypatch.setenv(TOL_ENV, "1e-6")
        assert default_closure_tol() == 1e-6
        assert ChainConfig().closure_tol == 1e-6
        monkeypatch.delenv(TOL_ENV)
        assert ChainConfig().closure_tol == 1e-8

    def test_cusp_limit(self):
        doc = bundled_scenario("fig_cusp")
        r = run_chain(doc.scenario, doc.start)
        assert isinstance(r.verdict, AsymptoticToPoint)
        assert "AsymptoticToPoint" in str(r.verdict)

    def test_not_center_divergence_carries_the_segment(self):
        doc = bundled_scenario("fig_not_center")
        v = run_chain(doc.scenario, doc.start).verdict
        seg = sorted(p.xy() for p in v.segment)
        assert seg == [pytest.approx((-1.2, -1.0)), pytest.approx((0.8, 1.0))]


class TestInvariants:
    @pytest.mark.parametrize("name", FIGURES)
    def test_incidence_on_every_figure_chain(self, name):
        doc = bundled_scenario(name)
        r = run_chain(doc.scenario, doc.start)
        assert r.max_residual < 1e-8
        assert incidence_residual(doc.scenario, r) < 1e-8

    @pytest.mark.parametrize(
        "scenario",
        [
            tangent_scenario(0.3),
            inscribed_scenario(2.0),
            circumscribed_scenario(2.0),
            bundled_scenario("fig_asymp").scenario,
            bundled_scenario("fig_not_center").scenario,
        ],
        ids=["tangent", "point-pair", "line-pair", "asymptotic", "both-singular"],
    )
    def test_reversibility(self, scenario):
        s = scenario
        (p,) = admissible_starts(s, 1)
        r = run_chain(s, p, ChainConfig(max_steps=12))
        k = 8
        state = ChainState(r.vertices[k], r.sides[k - 1], r.parities[k])
        back = reversed_state(s, state, r.sides[k])
        for j in range(k - 1, 0, -1):
            back = poncelet_step(s, back)
            assert chordal(back.vertex.coords, r.vertices[j].coords) < 1e-8

    def test_point_pair_sides_alternate(self):
        s = inscribed_scenario(2.0)
        r = run_chain(s, admissible_starts(s, 1)[0], ChainConfig(max_steps=50))
        through = [
            [k for k, c in enumerate(s.cstar.points()) if side.contains(c, 1e-9)] for side in r.sides
        ]
        assert all(len(t) == 1 for t in through)
        assert all(a != b for a, b in zip(through, through[1:]))

    def test_line_pair_vertices_alternate(self):
        s = circumscribed_scenario(2.0)
        r = run_chain(s, admissible_starts(s, 1)[0], ChainConfig(max_steps=50))
        on = [[k for k, g in enumerate(s.gamma_lines.lines()) if g.contains(v, 1e-9)] for v in r.vertices]
        assert all(len(o) == 1 for o in on)
        assert all(a != b for a, b in zip(on, on[1:]))

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(2, 9), st.integers(1, 8), st.booleans())
    def test_odd_periods_never_occur(self, q, k, dual):
        if k >= q or math.gcd(k, q) != 1:
            return
        alpha = 1 / math.tan(k * math.pi / q)
        if dual:
            if alpha <= 0:
                return
            s = circumscribed_scenario(alpha)
        else:
            s = inscribed_scenario(alpha)
        for p in admissible_starts(s, 2):
            v = run_chain(s, p, SHORT).verdict
            if isinstance(v, Closed):
                assert v.n % 2 == 0

    def test_singular_chains_never_close_oddly_over_a_grid(self):
        for alpha in np.linspace(0.0, 3.0, 13):
            for s in (inscribed_scenario(alpha), circumscribed_scenario(alpha)):
                for p in admissible_starts(s, 2):
                    v = run_chain(s, p, SHORT).verdict
                    assert not (isinstance(v, Closed) and v.n % 2)


class TestPorismProbe:
    def test_closing_scenario_is_consistent(self):
        rep = porism_probe(tangent_scenario(0.25), n_starts=20)
        assert rep.periods == (3,) * 20 and rep.consistent and not rep.errors

    def test_non_closing_scenario(self):
        rep = porism_probe(tangent_scenario(0.3), ChainConfig(max_steps=10_000), n_starts=20)
        assert rep.periods == () and len(rep.verdicts) + len(rep.errors) == 20

    def test_single_start(self):
        rep = porism_probe(tangent_scenario(0.5), n_starts=1)
        assert rep.consistent and rep.periods == (4,)

    def test_same_seed_same_report(self):
        s = tangent_scenario(0.3)
        a = porism_probe(s, SHORT, n_starts=5)
        b = porism_probe(s, SHORT, n_starts=5)
        assert a == b


class TestSpecialChains:
    def test_segment_of_point_pair(self):
        s = bundled_scenario("fig_asymp").scenario
        (chain,) = degenerate_special_chains(s)
        assert isinstance(chain.verdict, Exceptional)
        expected = [p for p, _ in line_conic_intersect(s.cstar.axis(), s.gamma)]
        assert len(chain.vertices) == 2
        for v in chain.vertices:
            assert min(chordal(v.coords, e.coords) for e in expected) < 1e-12

    def test_tangent_pair_from_line_vertex(self):
        s = bundled_scenario("fig_asym").scenario
        (chain,) = degenerate_special_chains(s)
        (vertex,) = chain.vertices
        assert vertex.equiv(s.gamma_lines.vertex())
        assert len(chain.sides) == 2
        for side in chain.sides:
            assert side.contains(vertex) and tangency_residual(s.c, side) < 1e-12

    def test_segment_of_two_line_pairs(self):
        s = bundled_scenario("fig_not_center").scenario
        (chain,) = degenerate_special_chains(s)
        axis = s.cstar.axis()
        expected = {meet(ProjLine([0, 1, -1]), axis).xy(), meet(ProjLine([0, 1, 1]), axis).xy()}
        assert {tuple(round(c, 9) for c in v.xy()) for v in chain.vertices} == {
            tuple(round(c, 9) for c in e) for e in expected
        }

    def test_smooth_pair_has_none(self):
        with pytest.raises(NoneExists):
            degenerate_special_chains(tangent_scenario(0.25))


def test_starts_are_reproducible_and_on_the_locus():
    s = tangent_scenario(0.25)
    a, b = admissible_starts(s, 10, seed=3), admissible_starts(s, 10, seed=3)
    assert a == b
    assert admissible_starts(s, 10, seed=4) != a
    for p in a:
        assert abs(eval_point(s.gamma, p)) < 1e-9


def test_conic_point_covers_the_circle():
    pts = [conic_point(UNIT, t) for t in np.linspace(0, 2 * math.pi, 7)]
    for p in pts:
        assert abs(eval_point(UNIT, p)) < 1e-12


def test_both_singular_start_pairs_line_with_centre():
    s = bundled_scenario("fig_harmonic").scenario
    p = meet(s.gamma_lines.g2, join(ProjPoint.affine(0, 3), ProjPoint.affine(1, 3)))
    st_ = initial_state(s, p)
    assert st_.parity == 1
    assert isinstance(s, BothSingular)
