"""An independent oracle for the closing values of alpha.

The Pell-type identity ``R^2 - x (x + 1) S^2 = 1`` is solved by shifted
Chebyshev polynomials.  Their roots reproduce the set of closing alphas
without any geometry, which makes them a useful cross-check.
"""

from poncelet import alpha_set_bridge, pell_certificate, pell_failure_at_alpha_one

for n in (2, 3, 5):
    cert = pell_certificate(n)
    coeffs = ", ".join(f"{c:g}" for c in cert.R.coef)
    print(f"n = {n}: R has ascending coefficients [{coeffs}]")
    print(f"  worst Pell residual on [-1, 0]: {cert.max_residual:.2e}")
    print(f"  alpha roots: {', '.join(f'{a:.6f}' for a in cert.alpha_roots)}")

print()
for n in range(3, 9):
    b = alpha_set_bridge(n)
    print(f"n = {n}: closure alphas {', '.join(f'{a:.4f}' for a in b.theorem_set)}  match = {b.match}")

print()
w = pell_failure_at_alpha_one(3)
print("At alpha = 1 the identity breaks down:")
print(f"  R(-1) = {w.r_at_minus_one:g}, R'(-1) = {w.r_prime_at_minus_one:g}, value below one: {w.lhs:.10f}")
