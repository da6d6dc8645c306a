"""Classify how two conics meet and bring tangent pairs to their normal form.

The pencil ``c + lambda * gamma`` has a cubic determinant whose root
pattern tells how the two conics intersect.  When they touch at one point
and cross at two more, a projective change of coordinates brings them to
``y = x^2`` and ``alpha y = x^2 + beta x y + gamma y^2``.
"""

from poncelet import bundled_scenario, classify_pair, normalize_tangent_pair

for name in ("fig_double_triangle", "fig_cusp", "fig_triple"):
    s = bundled_scenario(name).scenario
    info = classify_pair(s.c, s.gamma)
    roots = ", ".join(f"{r.real:.4g} (x{k})" for r, k in info.spectrum.roots)
    print(f"{name}: {info.tag.value}")
    print(f"  pencil roots: {roots}")
    for p, k in info.real_base_points:
        print(f"  base point {p} of order {k}")

s = bundled_scenario("fig_double_triangle").scenario
nf = normalize_tangent_pair(s.c, s.gamma)
print()
print("Normal form of the double-triangle pair:")
print(f"  alpha = {nf.alpha:.12g}, beta = {nf.beta:.6g}, gamma = {nf.gamma:.6g}")
print(f"  closure needs alpha = cos^2(pi m / n); cos^2(pi / 3) = 0.25")
