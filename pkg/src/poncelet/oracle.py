"""Chebyshev polynomials and the polynomial Pell equation on [-1, 0].

This module is an independent check on the closure values of alpha: the
roots of the Pell partner polynomial S reproduce the set cos^2(pi m / n)
without iterating any chain.

Polynomials are :class:`numpy.polynomial.Polynomial` objects (ascending
coefficients); :func:`trim` drops negligible leading terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from .errors import DegreeOutOfRange, WitnessNotFound

Poly = Polynomial

TRIM_TOL = 1e-12
GRID_POINTS = 1001
PELL_WEIGHT = Polynomial([0.0, 1.0, 1.0])  # x (x + 1)


def trim(p: Polynomial, tol: float = TRIM_TOL) -> Polynomial:
    """Drop trailing (highest-degree) coefficients below ``tol`` in absolute value."""
    c = np.array(p.coef, dtype=float)
    while len(c) > 1 and abs(c[-1]) < tol:
        c = c[:-1]
    return Polynomial(c)


def chebyshev_T(n: int) -> Polynomial:
    """First-kind Chebyshev polynomial from T_{k+1} = 2x T_k - T_{k-1}."""
    if n < 0:
        raise DegreeOutOfRange(f"n must be non-negative, got {n}")
    prev, cur = Polynomial([1.0]), Polynomial([0.0, 1.0])
    if n == 0:
        return prev
    x2 = Polynomial([0.0, 2.0])
    for _ in range(n - 1):
        prev, cur = cur, x2 * cur - prev
    return cur


def chebyshev_Q(n: int) -> Polynomial:
    """Second-kind polynomial Q_{n-1} = T_n' / n, of degree n - 1."""
    if n < 1:
        raise DegreeOutOfRange(f"n must be at least 1, got {n}")
    return trim(chebyshev_T(n).deriv() / n)


def _affine(p: Polynomial, a: float, b: float) -> Polynomial:
    """p(a + b x)."""
    return p(Polynomial([a, b]))


@dataclass(frozen=True)
class PellCertificate:
    """Solution of R^2 - x(x+1) S^2 = 1 with R = T_n(2x + 1).

    ``alpha_roots`` holds the values alpha with S(-alpha) = 0, ascending.
    """

    n: int
    R: Polynomial
    S: Polynomial
    weight: Polynomial
    max_residual: float
    alpha_roots: tuple[float, ...]


def pell_residual(R, S, weight=PELL_WEIGHT, points: int = GRID_POINTS) -> float:
    """max |R^2 - w S^2 - 1| over an even grid on [-1, 0]."""
    x = np.linspace(-1.0, 0.0, points)
    return float(np.max(np.abs(R(x) ** 2 - weight(x) * S(x) ** 2 - 1.0)))


def pell_certificate(n: int) -> PellCertificate:
    """Build R = T_n(2x + 1) and its Pell partner S on [-1, 0].

    S is Q_{n-1}(2x + 1) scaled by the least-squares factor that makes the
    grid residual smallest (analytically the factor is 2).  Values and roots
    are computed in the Chebyshev basis on [-1, 0], where they stay
    well conditioned up to n = 32; the returned R and S are the same
    polynomials in monomial form.
    """
    if not 2 <= n <= 32:
        raise DegreeOutOfRange(f"n must be in [2, 32], got {n}")
    r_cheb = Chebyshev.basis(n, domain=[-1.0, 0.0])
    # d/dx T_n(2x + 1) = 2 T_n'(2x + 1) = 2n Q_{n-1}(2x + 1)
    q_cheb = r_cheb.deriv() / (2 * n)
    x = np.linspace(-1.0, 0.0, GRID_POINTS)
    wq2 = PELL_WEIGHT(x) * q_cheb(x) ** 2
    scale = math.sqrt(float(np.dot(r_cheb(x) ** 2 - 1.0, wq2) / np.dot(wq2, wq2)))
    s_cheb = q_cheb * scale
    roots = q_cheb.roots()
    real = sorted(-float(r.real) for r in roots if abs(r.imag) < 1e-9 and -1.0 < r.real < 0.0)
    return PellCertificate(
        n,
        trim(r_cheb.convert(kind=Polynomial, domain=Polynomial.domain, window=Polynomial.window)),
        trim(s_cheb.convert(kind=Polynomial, domain=Polynomial.domain, window=Polynomial.window)),
        PELL_WEIGHT,
        pell_residual(r_cheb, s_cheb),
        tuple(real),
    )


@dataclass(frozen=True)
class BridgeReport:
    n: int
    pell_set: tuple[float, ...]
    theorem_set: tuple[float, ...]
    match: bool
    max_error: float


def alpha_set_bridge(n: int, tol: float = 1e-12) -> BridgeReport:
    """Check that every cos^2(pi m/n) with 2m < n is the Pell root with k = n - 2m."""
    if n < 3:
        raise DegreeOutOfRange(f"n must be at least 3, got {n}")
    pell = sorted((1 - math.cos(k * math.pi / n)) / 2 for k in range(1, n))
    theorem = sorted(math.cos(math.pi * m / n) ** 2 for m in range(1, (n - 1) // 2 + 1))
    err = 0.0
    for m in range(1, (n - 1) // 2 + 1):
        a = math.cos(math.pi * m / n) ** 2
        k = n - 2 * m
        err = max(err, abs(a - (1 - math.cos(k * math.pi / n)) / 2))
        err = max(err, min(abs(a - p) for p in pell))
    return BridgeReport(n, tuple(pell), tuple(theorem), err < tol, err)


@dataclass(frozen=True)
class PellFailure:
    """Witness that no Pell solution exists in the alpha = 1 limit.

    ``R`` is T_n composed with x -> 1 + (1 - cos(pi/n)) x, which sends -1 to
    an interior extremum of T_n, so R(-1) = -1 and R'(-1) = 0.  Just left of
    -1 the weight x(x+1) is positive and R^2 < 1, so the Pell left side is
    below 1.  ``standard_r_prime`` is R'(-1) for T_n(2x+1), which is not zero.
    """

    n: int
    xi: float
    lhs: float
    r_at_minus_one: float
    r_prime_at_minus_one: float
    standard_r_prime: float


def pell_failure_at_alpha_one(n: int, eps: float = 1e-4) -> PellFailure:
    if n < 2:
        raise DegreeOutOfRange(f"n must be at least 2, got {n}")
    shift = 1 - math.cos(math.pi / n)
    R = _affine(chebyshev_T(n), 1.0, shift)
    S = 2 * _affine(chebyshev_Q(n), 1.0, shift)
    r1, dr1 = float(R(-1.0)), float(R.deriv()(-1.0))
    xi = -1.0 - eps
    lhs = float(R(xi) ** 2 - PELL_WEIGHT(xi) * S(xi) ** 2)
    scale = max(1.0, float(np.max(np.abs(R.deriv().coef))))
    if abs(r1 + 1) > 1e-9 or abs(dr1) > 1e-9 * scale or not R(xi) ** 2 < 1 or not lhs < 1:
        raise WitnessNotFound(f"no witness for n = {n}: R(-1) = {r1}, R'(-1) = {dr1}, lhs = {lhs}")
    standard = float(_affine(chebyshev_T(n), 1.0, 2.0).deriv()(-1.0))
    return PellFailure(n, xi, lhs, r1, dr1, standard)
