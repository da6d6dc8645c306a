"""Iterate Poncelet chains and watch the porism at work.

A closing configuration closes from every start with the same period;
a non-closing one never does.  The cusp figure shows the asymptotic
behaviour when both conics share a higher-order contact.
"""

import math

from poncelet import ChainConfig, admissible_starts, bundled_scenario, porism_probe, run_chain
from poncelet.pencil import tangent_normal_form_matrices
from poncelet.projective import Conic
from poncelet.chain import SmoothSmooth

doc = bundled_scenario("fig_double_triangle")
result = run_chain(doc.scenario, doc.start, doc.config)
print("double triangle:", result.verdict)
for v in result.vertices:
    print("   ", v)

report = porism_probe(doc.scenario, n_starts=10)
print("periods from 10 different starts:", report.periods, "consistent:", report.consistent)


def tangent_pair(alpha):
    c, g = tangent_normal_form_matrices(alpha, 1.0, 0.0)
    return SmoothSmooth(Conic(g), Conic(c))


cfg = ChainConfig(max_steps=2000)
for alpha in (math.cos(math.pi / 5) ** 2, math.cos(2 * math.pi / 7) ** 2, 0.3):
    s = tangent_pair(alpha)
    start = admissible_starts(s, 1)[0]
    print(f"alpha = {alpha:.6f}: {run_chain(s, start, cfg).verdict}")

cusp = bundled_scenario("fig_cusp")
tail = run_chain(cusp.scenario, cusp.start, cusp.config)
print("cusp:", tail.verdict)
