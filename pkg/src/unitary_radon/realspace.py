"""Radon-type transform on L2(R^n) through the oscillator/Hermite picture.

Inputs are finite expansions over the tensor basis psi_alpha(x) =
prod_j He_{alpha_j}(x_j) exp(-|x|^2/4) with <psi_a, psi_b> = delta a!.
The basis exchange psi_alpha <-> z^alpha realizes the correspondence with the
entire-polynomial space, and the tuple projection, dual and inversion are all
diagonal in coefficients.

The pointwise kernel is defined by its truncated series (always finite and
well defined); the product/Mehler-style closed form is a validation target
only and refuses near its rho_j = 1 singularities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (DimensionError, compositions, multi_factorial, multi_total,
                   multinomial, vec_add)
from .bipoly import BiPoly
from .exact import QC, to_complex
from .results import ContractViolation, ProjectionResult, TruncatedSum
from .fock import bargmann_radon, fock_dual_factor
from .ball import invert_holomorphic


# ---------------------------------------------------------------------------
# Hermite polynomials (probabilists' normalization)

def hermite(k):
    """Coefficient list (index = power, exact ints) of He_k, satisfying the
    Rodrigues form (-1)^k e^{x^2/2} d^k/dx^k e^{-x^2/2} and the recurrence
    He_{k+1} = x He_k - k He_{k-1}."""
    if k < 0:
        raise ValueError("order must be non-negative")
    prev, cur = [1], [0, 1]
    if k == 0:
        return prev
    for m in range(1, k):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= m * c
        prev, cur = cur, nxt
    return cur


def hermite_values(kmax, x):
    """He_0(x)..He_kmax(x) by the recurrence (stable for desk-scale orders)."""
    vals = [1.0]
    if kmax >= 1:
        vals.append(x)
    for m in range(1, kmax):
        vals.append(x * vals[m] - m * vals[m - 1])
    return vals


def mehler_series(rho, x, y, terms=60):
    """sum_k rho^k/k! He_k(x) He_k(y) — the normalization oracle."""
    hx = hermite_values(terms - 1, x)
    hy = hermite_values(terms - 1, y)
    total, w = 0.0, 1.0
    for k in range(terms):
        total += w * hx[k] * hy[k]
        w *= rho / (k + 1)
    return total


def mehler_closed(rho, x, y):
    """(1-rho^2)^(-1/2) exp((2 rho x y - rho^2 (x^2+y^2)) / (2(1-rho^2)))."""
    d = 1.0 - rho * rho
    return math.exp((2 * rho * x * y - rho * rho * (x * x + y * y)) / (2 * d)) / math.sqrt(d)


# ---------------------------------------------------------------------------
# expansions

@dataclass
class HermiteExpansion:
    """Finite expansion f = sum_alpha c_alpha psi_alpha over C^?-valued
    coefficients (QC or complex)."""

    n: int
    coeffs: dict

    def __post_init__(self):
        clean = {}
        for alpha, c in self.coeffs.items():
            alpha = tuple(alpha)
            if len(alpha) != self.n:
                raise ValueError("index length must equal n")
            if c:
                clean[alpha] = c
        self.coeffs = clean

    @staticmethod
    def basis(n, alpha, coeff=None):
        return HermiteExpansion(n, {tuple(alpha): QC(1) if coeff is None else coeff})

    def __add__(self, other):
        if self.n != other.n:
            raise DimensionError("dimension mismatch")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HermiteExpansion(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return HermiteExpansion(self.n, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, HermiteExpansion) and self.n == other.n
                and self.coeffs == other.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self):
        return max((multi_total(a) for a in self.coeffs), default=0)

    def norm_squared(self):
        total = 0
        for a, c in self.coeffs.items():
            total = total + _abs2(c) * multi_factorial(a)
        return total

    def to_float(self):
        return HermiteExpansion(self.n, {k: to_complex(c) for k, c in self.coeffs.items()})

    def max_abs_diff(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(to_complex(self.coeffs.get(k, 0)) - to_complex(other.coeffs.get(k, 0)))
                    for k in keys), default=0.0)

    def evaluate(self, x):
        """Pointwise value at the real vector x."""
        if len(x) != self.n:
            raise ValueError("point dimension mismatch")
        kmax = self.degree()
        tables = [hermite_values(kmax, float(xj)) for xj in x]
        gauss = math.exp(-sum(float(xj) ** 2 for xj in x) / 4.0)
        total = 0.0
        for alpha, c in self.coeffs.items():
            m = 1.0
            for j, e in enumerate(alpha):
                m *= tables[j][e]
            total = total + to_complex(c) * m
        return total * gauss


def _abs2(c):
    if isinstance(c, QC):
        return c.re * c.re + c.im * c.im
    c = complex(c)
    return c.real * c.real + c.imag * c.imag


def l2_inner(f, g):
    """<f, g> = sum conj(c_alpha) d_alpha alpha!; conjugate-linear in f."""
    if f.n != g.n:
        raise DimensionError("dimension mismatch")
    small, big = (f.coeffs, g.coeffs) if len(f.coeffs) <= len(g.coeffs) else (g.coeffs, f.coeffs)
    total = 0
    for key, c in small.items():
        d = big.get(key)
        if d is None:
            continue
        cf, cg = (c, d) if small is f.coeffs else (d, c)
        total = total + _conj(cf) * cg * multi_factorial(key)
    return total


def _conj(c):
    return c.conjugate() if hasattr(c, "conjugate") else c


# ---------------------------------------------------------------------------
# basis exchange with the entire-polynomial space

def segal_bargmann(f):
    """Coefficient-wise basis exchange psi_alpha -> z^alpha (isometric:
    both sides weigh the basis by alpha!)."""
    zero = (0,) * f.n
    return BiPoly(f.n, {(alpha, zero): c for alpha, c in f.coeffs.items()})


def segal_bargmann_inv(F):
    """Inverse exchange z^alpha -> psi_alpha; input must be holomorphic."""
    bad = [key for key in F.terms if any(key[1])]
    if bad:
        raise ContractViolation(f"not holomorphic: zbar term {bad[0]}")
    return HermiteExpansion(F.n, {a: c for (a, _b), c in F.terms.items()})


# ---------------------------------------------------------------------------
# tuple waves and the projection

def tuple_wave(tpl, k):
    """The tuple-adapted oscillator function of excitation k: the multinomial
    expansion sum_{|kappa|=k} C(k;kappa) prod_j conj((s+t)_j)^{kappa_j}
    psi_kappa.  Agrees exactly with pulling the degree-k entire wave back
    through the basis exchange (tested)."""
    if k < 0:
        raise ValueError("excitation must be non-negative")
    a = tpl.wave_coeffs_z()          # conj(s+t)
    coeffs = {}
    for kappa in compositions(k, tpl.n):
        c = multinomial(k, kappa)
        for j, e in enumerate(kappa):
            if e:
                c = c * a[j] ** e
        if c:
            coeffs[kappa] = c
    return HermiteExpansion(tpl.n, coeffs)


def l2_radon(f, tpl, check_square=False):
    """Projection onto the tuple-wave span: c_k = <wave_k, f> / (2^k k!).

    With check_square=True the same projection is recomputed through the
    entire-polynomial side and the coefficient tables are required to agree
    exactly (the commuting-square diagnostic)."""
    if f.n != tpl.n:
        raise DimensionError("expansion and tuple dimensions differ")
    coeffs = {}
    rec = HermiteExpansion(f.n, {})
    for k in range(f.degree() + 1):
        wave = tuple_wave(tpl, k)
        c = l2_inner(wave, f) * Fraction(1, 2 ** k * math.factorial(k))
        if c:
            coeffs[k] = c
            rec = rec + wave.scale(c)
    result = ProjectionResult(coeffs, rec, space="l2")
    if check_square:
        fock_side = bargmann_radon(segal_bargmann(f), tpl)
        back = segal_bargmann_inv(fock_side.reconstructed)
        if back.coeffs != rec.coeffs:
            raise AssertionError("commuting square violated")
    return result


def l2_kernel_series(tpl, x, y, kmax):
    """Truncated kernel sum_k wave_k(x) conj(wave_k(y)) / (2^k k!) evaluated
    pointwise.  Always defined (finite sum); see l2_kernel_closed for the
    singular closed form."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    total = 0.0
    last = 0.0
    for k in range(kmax + 1):
        wave = tuple_wave(tpl, k).to_float()
        term = wave.evaluate(x) * wave.evaluate(y).conjugate() / (2 ** k * math.factorial(k))
        total += term
        last = abs(term)
    return TruncatedSum(total, last)


def wave_overlaps(tpl):
    """rho_j = |(t+s)_j|^2 per coordinate; these sum to 2."""
    a = vec_add(tpl.t, tpl.s)
    return [abs(to_complex(v)) ** 2 for v in a]


def l2_kernel_closed(tpl, x, y):
    """Product-form closed kernel (validation target, not the production
    path): prod_j (1-rho_j^2)^(-1/2) exp(-((1+rho_j^2)(x_j^2+y_j^2)
    - 4 rho_j x_j y_j) / (2(1-rho_j^2))).

    Refuses within 1e-8 of any rho_j = 1 (Dirac-delta degeneration there);
    use the coefficient-space projection instead, which stays well defined.
    """
    rhos = wave_overlaps(tpl)
    for j, rho in enumerate(rhos):
        if abs(rho - 1.0) < 1e-8:
            raise ValueError(
                f"rho_{j} = {rho} is degenerate; the pointwise closed form is "
                "distributional there — use the coefficient-space projection")
        if rho > 1.0:
            # the overlaps sum to 2, so this happens for every n=2 tuple
            raise ValueError(
                f"rho_{j} = {rho} > 1: sqrt(1-rho^2) is imaginary and the "
                "product form cannot be evaluated; the series kernel remains "
                "well defined")
    total = 1.0
    for j, rho in enumerate(rhos):
        d = 1.0 - rho * rho
        xj, yj = float(x[j]), float(y[j])
        total *= math.exp(-((1 + rho * rho) * (xj * xj + yj * yj) - 4 * rho * xj * yj)
                          / (2 * d)) / math.sqrt(d)
    return total


# ---------------------------------------------------------------------------
# dual and inversion

def l2_dual_exact(f, n=None):
    """Stiefel-averaged dual∘projection, mirrored through the basis exchange:
    excitation-k components scale by (n-1)! k! / (n+k-1)!."""
    n = f.n if n is None else n
    out = HermiteExpansion(f.n, {})
    for alpha, c in f.coeffs.items():
        out = out + HermiteExpansion(f.n, {alpha: c * fock_dual_factor(multi_total(alpha), n)})
    return out


def l2_invert(g, n=None):
    """Oscillator-ladder inversion, diagonal with factor (k+1)_(n-1)/(n-1)!
    on excitation k (the number operator acts as |alpha| on psi_alpha)."""
    n = g.n if n is None else n
    back = invert_holomorphic(segal_bargmann(g), n)
    return segal_bargmann_inv(back)


# ---------------------------------------------------------------------------
# approximate grid fitter (CLI convenience; clearly approximate)

def fit_hermite(points, values, n, kmax):
    """Least-squares fit of samples onto the psi_alpha basis, |alpha| <= kmax.

    Returns (HermiteExpansion with complex coefficients, rms residual).
    Approximate by construction — the quality depends entirely on the grid.
    """
    alphas = [a for k in range(kmax + 1) for a in compositions(k, n)]
    pts = [tuple(float(v) for v in p) for p in points]
    design = np.empty((len(pts), len(alphas)), dtype=complex)
    for i, p in enumerate(pts):
        tables = [hermite_values(kmax, xj) for xj in p]
        gauss = math.exp(-sum(xj * xj for xj in p) / 4.0)
        for c, alpha in enumerate(alphas):
            m = 1.0
            for j, e in enumerate(alpha):
                m *= tables[j][e]
            design[i, c] = m * gauss
    rhs = np.asarray([complex(v) for v in values])
    sol, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    resid = float(np.linalg.norm(design @ sol - rhs) / max(math.sqrt(len(pts)), 1.0))
    coeffs = {alpha: complex(sol[i]) for i, alpha in enumerate(alphas) if abs(sol[i]) > 0}
    return HermiteExpansion(n, coeffs), resid
