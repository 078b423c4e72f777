"""Independent oracles used by the test suite.

Everything here recomputes expected values by a route different from the
production code: literal repeated differentiation for the closed pairing
form, brute-force double sums for kernels, Monte-Carlo integration for
measure normalizations, and symbolic Gaussian calculus for the oscillator.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from unitary_radon.exact import QC, to_complex
from unitary_radon.bipoly import BiPoly, dz, dzbar
from unitary_radon.core import gamma_pq


# ---------------------------------------------------------------------------
# literal-differentiation pairing (the defining form, exponential-cost)

def fischer_by_derivatives(P, Q):
    """[conj(P)(d) Q](0): substitute z->d/dzbar, zbar->d/dz in P, conjugate
    (which swaps the two derivative species and conjugates coefficients),
    apply to Q, take the constant term."""
    total = QC(0)
    for (a, b), c in P.terms.items():
        work = Q
        for j, e in enumerate(a):
            for _ in range(e):
                work = dz(work, j)
        for j, e in enumerate(b):
            for _ in range(e):
                work = dzbar(work, j)
        const = work.terms.get(((0,) * Q.n, (0,) * Q.n))
        if const is not None:
            total = total + _conj(c) * const
    return total


def _conj(c):
    return c.conjugate() if hasattr(c, "conjugate") else c


# ---------------------------------------------------------------------------
# brute-force kernel sums (independent of the library's table recurrences)

def kernel_pair_args(tpl, z, u):
    a = [to_complex(x) for x in tpl.wave_coeffs_z()]
    b = [to_complex(x) for x in tpl.wave_coeffs_zbar()]
    wz = sum(zi * ai for zi, ai in zip(z, a))
    wu = sum(ui * ai for ui, ai in zip(u, a))
    mz = sum(zi.conjugate() * bi for zi, bi in zip(z, b))
    mu = sum(ui.conjugate() * bi for ui, bi in zip(u, b))
    return wz * wu.conjugate(), mz * mu.conjugate()


def brute_kernel_sum(tpl, z, u, n, limit, predicate=lambda p, q: True):
    x, y = kernel_pair_args(tpl, z, u)
    total = 0.0
    for p in range(limit + 1):
        for q in range(limit + 1):
            if predicate(p, q):
                total += float(1 / gamma_pq(p, q, n)) * x ** p * y ** q
    return total


def brute_horn_h3(alpha, beta, gamma, z, w, terms=80):
    total = 0.0
    for m in range(terms):
        for k in range(terms):
            c = _poch(alpha, 2 * m + k) * _poch(beta, k) / (
                _poch(gamma, m + k) * math.factorial(m) * math.factorial(k))
            total += float(c) * z ** m * w ** k
    return total


def _poch(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(a) + i
    return out


# ---------------------------------------------------------------------------
# Monte-Carlo measure oracles

def sphere_points(n, count, seed):
    """Uniform points on the unit sphere of C^n (rows)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def mc_sphere_inner(P, Q, count=200000, seed=0):
    """Monte-Carlo estimate of the normalized sphere pairing, with the
    standard error of the mean.  Validates the exact moment rule."""
    pts = sphere_points(P.n, count, seed)
    vals = eval_poly_vec(P.adjoint() * Q, pts)
    mean = vals.mean()
    se = vals.std() / math.sqrt(count)
    return mean, float(se)


def eval_poly_vec(P, pts):
    """Vectorized pointwise evaluation of a scalar-coefficient polynomial."""
    out = np.zeros(len(pts), dtype=complex)
    conj = pts.conj()
    for (a, b), c in P.terms.items():
        term = np.full(len(pts), to_complex(c))
        for j, e in enumerate(a):
            if e:
                term *= pts[:, j] ** e
        for j, e in enumerate(b):
            if e:
                term *= conj[:, j] ** e
        out += term
    return out


def mc_gaussian_inner(P, Q, count=1000000, seed=0):
    """Monte-Carlo estimate of (1/pi^n) integral conj(P) Q exp(-|z|^2) over
    C^n: sampling z from the complex normal with density exp(-|z|^2)/pi^n."""
    rng = np.random.default_rng(seed)
    n = P.n
    pts = (rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))) / math.sqrt(2)
    vals = eval_poly_vec(P.adjoint() * Q, pts)
    return vals.mean(), float(vals.std() / math.sqrt(count))


def gauss_laguerre_scaling(poly_degree, weight_power=0, nodes=64):
    """integral_0^inf t^degree t^weight e^-t dt by 64-node Gauss-Laguerre —
    the literal form of the inversion operators' Laplace integrals."""
    x, w = np.polynomial.laguerre.laggauss(nodes)
    return float(np.sum(w * x ** (poly_degree + weight_power)))


# ---------------------------------------------------------------------------
# symbolic polynomial-times-Gaussian calculus (oscillator oracle)

class GaussPoly:
    """P(x) * exp(-c |x|^2) with exact coefficients (P a real-variable
    polynomial stored as a z-only BiPoly; c an exact Fraction)."""

    def __init__(self, poly, c):
        self.poly = poly
        self.c = Fraction(c)

    def ddx(self, j):
        # d/dx_j (P e^{-c r^2}) = (dP/dx_j - 2 c x_j P) e^{-c r^2}
        xj = BiPoly.variable(self.poly.n, j)
        return GaussPoly(dz(self.poly, j) - xj * self.poly * QC(2 * self.c), self.c)

    def laplacian(self):
        out = BiPoly.zero(self.poly.n)
        for j in range(self.poly.n):
            out = out + self.ddx(j).ddx(j).poly
        return GaussPoly(out, self.c)

    def times_r2(self):
        n = self.poly.n
        r2 = BiPoly.zero(n)
        for j in range(n):
            r2 = r2 + BiPoly.variable(n, j) ** 2
        return GaussPoly(r2 * self.poly, self.c)

    def scale(self, s):
        return GaussPoly(self.poly.scale_left(QC(Fraction(s))), self.c)

    def __add__(self, other):
        assert self.c == other.c
        return GaussPoly(self.poly + other.poly, self.c)

    def __sub__(self, other):
        assert self.c == other.c
        return GaussPoly(self.poly - other.poly, self.c)

    def __eq__(self, other):
        return self.c == other.c and self.poly == other.poly


def hermite_poly_exact(k, n=1, coord=0):
    """He_k(x_coord) as an exact z-only BiPoly in n variables."""
    from unitary_radon.realspace import hermite
    x = BiPoly.variable(n, coord)
    out = BiPoly.zero(n)
    for power, coef in enumerate(hermite(k)):
        if coef:
            out = out + (x ** power).scale_left(QC(coef))
    return out


def psi_alpha_gauss(alpha, c):
    """prod_j He_{alpha_j}(x_j) * exp(-c |x|^2) as a GaussPoly."""
    n = len(alpha)
    poly = BiPoly.one(n)
    for j, k in enumerate(alpha):
        poly = poly * hermite_poly_exact(k, n, j)
    return GaussPoly(poly, c)


def oscillator_apply(gp, kinetic_scale, potential_scale, constant):
    """(-(kinetic) Delta + (potential) |x|^2 + constant)/2  applied to gp."""
    out = (gp.laplacian().scale(-Fraction(kinetic_scale))
           + gp.times_r2().scale(Fraction(potential_scale))
           + gp.scale(Fraction(constant)))
    return out.scale(Fraction(1, 2))


def hermite_phys_poly(k, n=1, coord=0):
    """Physicists' Hermite polynomial (H_{k+1} = 2x H_k - 2k H_{k-1}) as an
    exact BiPoly; the eigenbasis of the oscillator written with e^{-|x|^2/2}."""
    x = BiPoly.variable(n, coord)
    prev, cur = BiPoly.one(n), x.scale_left(QC(2))
    if k == 0:
        return prev
    for m in range(1, k):
        prev, cur = cur, (x * cur).scale_left(QC(2)) - prev.scale_left(QC(2 * m))
    return cur


def phys_alpha_gauss(alpha):
    """prod_j H_{alpha_j}(x_j) * exp(-|x|^2/2), physicists' normalization."""
    n = len(alpha)
    poly = BiPoly.one(n)
    for j, k in enumerate(alpha):
        poly = poly * hermite_phys_poly(k, n, j)
    return GaussPoly(poly, Fraction(1, 2))


def rodrigues_hermite(k):
    """(-1)^k e^{x^2/2} d^k/dx^k e^{-x^2/2}, exact coefficient list."""
    gp = GaussPoly(BiPoly.one(1), Fraction(1, 2))
    for _ in range(k):
        gp = gp.ddx(0)
    sign = -1 if k % 2 else 1
    coeffs = [0] * (k + 1)
    for (a, _b), c in gp.poly.terms.items():
        assert isinstance(c, QC) and c.im == 0 and c.re.denominator == 1
        coeffs[a[0]] = sign * int(c.re)
    return coeffs
