"""Projective building blocks: points, lines, conics, polars and cross ratios.

Run with ``python3 demos/01_projective_toolkit.py``.
"""

from poncelet.projective import (
    ProjLine,
    ProjPoint,
    conic_from_coeffs,
    cross_ratio,
    harmonic_conjugate,
    join,
    line_conic_intersect,
    meet,
    point_position,
    polar_line,
    tangents_from_point,
)

circle = conic_from_coeffs(1, 0, 1, 0, 0, -1)
p = ProjPoint.affine(2.0, 0.0)

print("The point (2, 0) lies", point_position(circle, p).value.lower(), "the unit circle.")
tangents = tangents_from_point(circle, p)
print("Two tangents pass through it:")
for t in tangents:
    touch = line_conic_intersect(t, circle)[0]
    print(f"  {t}  touching at {touch[0]} with multiplicity {touch[1]}")

# the chord joining the two contact points is the polar of p
polar = polar_line(circle, p)
print("Its polar line is", polar, "which is the vertical line x = 1/2.")

# parallel lines meet at infinity
a, b = ProjLine([0, 1, 0]), ProjLine([0, 1, -1])
print("The lines y = 0 and y = 1 meet at", meet(a, b))

# cross ratio of four collinear points and the harmonic conjugate
x = [ProjPoint.affine(t, 0.0) for t in (0.0, 1.0, 3.0)]
h = harmonic_conjugate(*x)
print("Harmonic conjugate of (3, 0) with respect to (0, 0), (1, 0):", h)
print("Cross ratio of the four points:", round(cross_ratio(x[0], x[1], x[2], h), 12))
print("Line through (0, 0) and (1, 1):", join(ProjPoint.affine(0, 0), ProjPoint.affine(1, 1)))
