"""Bargmann–Radon transform on the Segal–Bargmann space of entire
polynomials.

Fock elements are holomorphic BiPoly values (no zbar terms); the Gaussian
inner product coincides with the differentiation pairing on polynomials, so
production code never integrates — the Gaussian integral appears once, as a
Monte-Carlo validation in the test suite.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .core import DimensionError
from .bipoly import BiPoly, fischer
from .results import ContractViolation, ProjectionResult
from .ball import invert_holomorphic, plane_wave, dual_monte_carlo


def require_entire(f):
    bad = [key for key in f.terms if any(key[1])]
    if bad:
        raise ContractViolation(f"not an entire polynomial: zbar term {bad[0]}")
    return f


def entire_wave(tpl, p):
    """Degree-p entire plane wave of the tuple (the q=0 harmonic wave)."""
    return plane_wave(tpl, p, 0)


def mu_p(p):
    """Squared Fock norm of the degree-p entire wave: 2^p p!."""
    return 2 ** p * math.factorial(p)


def fock_inner(P, Q):
    """Gaussian inner product of entire polynomials = differentiation pairing."""
    require_entire(P)
    require_entire(Q)
    return fischer(P, Q)


def bargmann_kernel(tpl, z, w):
    """Exponential reproducing kernel exp(x/2) with x the wave pairing of
    (z, w); equals the series sum_p wave_p(z) conj(wave_p(w)) / mu_p."""
    from .ball import _kernel_args
    x, _ = _kernel_args(tpl, z, w)
    return cmath.exp(x / 2.0)


def bargmann_radon(f, tpl, check=True, tol=0.0):
    """Projection onto the tuple's entire-wave span:
    c_p = <wave_p, f>_F / (2^p p!).  Exact on polynomials."""
    require_entire(f)
    if f.n != tpl.n:
        raise DimensionError("polynomial and tuple dimensions differ")
    dp, _ = f.degrees()
    coeffs = {}
    rec = BiPoly.zero(f.n)
    for p in range(dp + 1):
        wave = entire_wave(tpl, p)
        c = fischer(wave, f) * Fraction(1, mu_p(p))
        if c:
            coeffs[p] = c
            rec = rec + wave.scale_left(c)
    return ProjectionResult(coeffs, rec, space="fock")


def fock_dual_factor(p, n):
    """Exact dual-composition scaling on degree p: (n-1)! p! / (n+p-1)!."""
    return Fraction(math.factorial(n - 1) * math.factorial(p), math.factorial(n + p - 1))


def fock_dual_exact(f, n=None):
    """Stiefel-averaged dual∘projection: degree-p components scale by
    (n-1)! p! / (n+p-1)!."""
    require_entire(f)
    n = f.n if n is None else n
    out = BiPoly.zero(f.n)
    for (p, _q), part in f.bidegree_split().items():
        out = out + part.scale_left(fock_dual_factor(p, n))
    return out


def fock_dual_monte_carlo(f, n, samples, seed):
    """Monte-Carlo Stiefel average of single-tuple Bargmann projections."""
    require_entire(f)
    return dual_monte_carlo(f, n, samples, seed, project=bargmann_radon)


def fock_invert(g, n=None):
    """Euler-ladder inversion; composed with fock_dual_exact∘bargmann_radon
    it is the identity on entire polynomials."""
    require_entire(g)
    return invert_holomorphic(g, n)


def wave_series_kernel(tpl, z, w, terms=60):
    """Truncated sum_p wave_p(z) conj(wave_p(w)) / mu_p (series oracle for the
    exponential closed form)."""
    from .ball import _kernel_args
    x, _ = _kernel_args(tpl, z, w)
    total, term = 0.0, 1.0
    for p in range(terms):
        total += term
        term *= x / (2.0 * (p + 1))
    return total
