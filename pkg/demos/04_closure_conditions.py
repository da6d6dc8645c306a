"""Predict closure analytically and confirm it numerically.

Every bundled figure is checked twice: once from its normal form alone and
once by running a chain.  The two answers must agree.
"""

import math

from poncelet import cross_check, predict
from poncelet.closure import singular_inscribed_condition, tangent_pair_condition
from poncelet.scenario_io import FIGURES, bundled_scenario

print("Tangent pairs close exactly when alpha = cos^2(pi m / n):")
for alpha in (0.25, 0.5, math.cos(math.pi / 5) ** 2, 0.3):
    print(f"  alpha = {alpha:.6f}: {tangent_pair_condition(alpha, 1.0, 0.0)}")
print("  alpha = 0.25 with beta = 0, gamma = 1:", tangent_pair_condition(0.25, 0.0, 1.0))

print()
print("A circle with a pair of points closes only with an even period:")
for alpha in (0.0, 1.0, 1 / math.sqrt(3), 2.0):
    print(f"  alpha = {alpha:.6f}: {singular_inscribed_condition(alpha)}")

print()
print("Analytic and numeric verdicts for every bundled figure:")
for name in FIGURES:
    doc = bundled_scenario(name)
    cc = cross_check(doc.scenario, doc.start)
    flag = "agree" if cc.agree else "DISAGREE"
    print(f"  {name:20s} {str(predict(doc.scenario)):36s} {cc.numeric_label:28s} {flag}")
