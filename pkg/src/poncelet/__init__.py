"""Projective tools for Poncelet polygons inscribed in one conic and circumscribed about another.

The package covers both smooth conics and their degenerate forms (line
pairs and point pairs).  It classifies the pencil a pair of conics spans,
iterates chains of tangent lines numerically, predicts closure in closed
form, and checks those predictions against Chebyshev/Pell polynomials.
"""

from .chain import (
    AsymptoticToPoint,
    AsymptoticToSegment,
    BothSingular,
    BudgetExhausted,
    ChainConfig,
    ChainResult,
    ChainState,
    Closed,
    DivergentToInfinity,
    Exceptional,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
    admissible_starts,
    degenerate_special_chains,
    initial_state,
    poncelet_step,
    porism_probe,
    run_chain,
)
from .closure import ClosesAt, NeverCloses, Reason, cross_check, predict
from .errors import PonceletError
from .oracle import alpha_set_bridge, pell_certificate, pell_failure_at_alpha_one
from .pencil import (
    IntersectionTag,
    classify_pair,
    normalize_both_singular,
    normalize_singular_circumscribed,
    normalize_singular_inscribed,
    normalize_tangent_pair,
)
from .projective import Conic, ProjLine, ProjPoint, SingularConic, SingularDualConic, conic_from_coeffs
from .render import RenderSpec, render_svg
from .scenario_io import bundled_scenario, load_scenario, parse_scenario, serialize_scenario

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
