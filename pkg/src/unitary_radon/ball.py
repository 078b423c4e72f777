"""Szegő–Radon transform on the unit ball for complex-harmonic and
holomorphic functions: plane waves, the projection and its split, kernel
evaluation (closed form, double series, restricted branch sums and their
hypergeometric closed forms), the Stiefel-averaged dual, and the inversion
operators.

Branch convention: the index set splits into "p>=q" (ties included) and
"p<q".
"""

from __future__ import annotations

import math
import os
import warnings
from fractions import Fraction

import numpy as np

from .core import (DimensionError, StiefelTuple, bilinear_pair, dim_H, gamma_pq,
                   lambda_pq, pochhammer, sample_stiefel, vec_conj)
from .bipoly import BiPoly, laplace_z, sphere_inner
from .exact import to_complex
from .results import (ContractViolation, MonteCarloEstimate, ProjectionResult,
                      SingularKernelError, TruncatedSum)

BRANCH_GE = "p>=q"
BRANCH_LT = "p<q"
DEFAULT_TRUNC = 40


class HornDomainWarning(UserWarning):
    """Horn series evaluated outside its convergence domain."""


def _check_branch(branch):
    if branch not in (BRANCH_GE, BRANCH_LT):
        raise ValueError(f"branch must be {BRANCH_GE!r} or {BRANCH_LT!r}, got {branch!r}")


def _in_branch(p, q, branch):
    return (p >= q) if branch == BRANCH_GE else (p < q)


# ---------------------------------------------------------------------------
# plane waves

def plane_wave(tpl: StiefelTuple, p, q):
    """The bi-degree (p, q) harmonic wave of the tuple:
    (sum_j conj(s+t)_j z_j)^p (sum_j (s-t)_j zbar_j)^q, expanded."""
    if p < 0 or q < 0:
        raise ValueError("wave degrees must be non-negative")
    out = BiPoly.one(tpl.n)
    if p:
        out = out * BiPoly.linear(tpl.wave_coeffs_z()) ** p
    if q:
        out = out * BiPoly.linear(tpl.wave_coeffs_zbar(), conjugated=True) ** q
    return out


def plane_wave_norm_check(tpl, p, q, w, v):
    """Spherical pairing of the (p,q) and (w,v) waves of one tuple; equals
    gamma_pq on the diagonal and 0 off it."""
    return sphere_inner(plane_wave(tpl, p, q), plane_wave(tpl, w, v))


def harmonicity_residual(f):
    """Max coefficient magnitude of laplace_z(f); exactly 0 for harmonics."""
    return laplace_z(f).max_abs()


def _require_harmonic(f, tol):
    res = laplace_z(f)
    if res:
        if res.max_abs() > tol:
            raise ContractViolation(
                f"input is not harmonic: laplace residual {res.max_abs():.3e}",
                residual=res)


# ---------------------------------------------------------------------------
# kernels (pointwise, float)

def _kernel_args(tpl, z, u):
    """The two scalar products x, y carrying all tuple/point dependence of
    every unit-ball kernel."""
    a = tpl.wave_coeffs_z()
    b = tpl.wave_coeffs_zbar()
    wz = to_complex(bilinear_pair(z, a))
    wu = to_complex(bilinear_pair(u, a))
    mz = to_complex(bilinear_pair(vec_conj(z), b))
    mu = to_complex(bilinear_pair(vec_conj(u), b))
    return wz * wu.conjugate(), mz * mu.conjugate()


def szego_kernel_closed(tpl, z, u):
    """Closed form (2 / (2 - x - y))^n of the full harmonic kernel."""
    x, y = _kernel_args(tpl, z, u)
    den = 2.0 - x - y
    if abs(den) < 1e-14:
        raise SingularKernelError("kernel denominator vanished")
    return (2.0 / den) ** tpl.n


def holo_kernel_closed(tpl, z, u):
    """Holomorphic restriction: (2 / (2 - x))^n."""
    x, _ = _kernel_args(tpl, z, u)
    den = 2.0 - x
    if abs(den) < 1e-14:
        raise SingularKernelError("kernel denominator vanished")
    return (2.0 / den) ** tpl.n


def _inv_gamma_table(n, pmax, qmax):
    """Floats 1/gamma_pq for p<=pmax, q<=qmax, built by recurrence."""
    table = [[0.0] * (qmax + 1) for _ in range(pmax + 1)]
    table[0][0] = 1.0
    for p in range(pmax + 1):
        if p:
            # 1/gamma_{p,q} = (n)_{p+q} / (2^{p+q} p! q!)
            table[p][0] = table[p - 1][0] * (n + p - 1) / (2.0 * p)
        for q in range(1, qmax + 1):
            table[p][q] = table[p][q - 1] * (n + p + q - 1) / (2.0 * q)
    return table


def szego_kernel_series(tpl, z, u, pmax=DEFAULT_TRUNC, qmax=DEFAULT_TRUNC):
    """Truncated double series sum_{p,q} x^p y^q / gamma_pq.

    Returns a TruncatedSum whose last_shell aggregates the magnitude of the
    outermost row and column, a cheap truncation-error proxy.
    """
    if pmax < 0 or qmax < 0:
        raise ValueError("truncation bounds must be >= 0")
    x, y = _kernel_args(tpl, z, u)
    inv_gamma = _inv_gamma_table(tpl.n, pmax, qmax)
    total = 0.0
    shell = 0.0
    xp = 1.0
    for p in range(pmax + 1):
        yq = 1.0
        for q in range(qmax + 1):
            term = inv_gamma[p][q] * xp * yq
            total += term
            if p == pmax or q == qmax:
                shell += abs(term)
            yq *= y
        xp *= x
    return TruncatedSum(total, shell)


def split_kernel(tpl, z, u, branch, max_degree=DEFAULT_TRUNC):
    """Restricted double sum over one branch of the index split.

    This direct sum is the authoritative value; the hypergeometric closed
    forms are comparison targets (see split_kernel_closed).
    """
    _check_branch(branch)
    x, y = _kernel_args(tpl, z, u)
    inv_gamma = _inv_gamma_table(tpl.n, max_degree, max_degree)
    total = 0.0
    shell = 0.0
    xp = 1.0
    for p in range(max_degree + 1):
        yq = 1.0
        for q in range(max_degree + 1):
            if _in_branch(p, q, branch):
                term = inv_gamma[p][q] * xp * yq
                total += term
                if p == max_degree or q == max_degree:
                    shell += abs(term)
            yq *= y
        xp *= x
    return TruncatedSum(total, shell)


def split_kernel_closed(tpl, z, u, branch, variant="derived", max_terms=80):
    """Hypergeometric closed form of one branch kernel.

    branch p>=q: H3(n,1,1; xy/4, x/2) (exact, both variants agree).
    branch p<q:
      variant="derived": H3(n,1,1; xy/4, y/2) - 2F1(n/2,(1+n)/2;1;xy), which
      matches the defining restricted sum (the k=0 stratum of that H3 is
      exactly the 2F1 subtrahend);
      variant="printed": H3(n,2,2; xy/4, y/2) - 2F1(...), the published
      parameterization, retained for comparison — the verify suite reports
      its deviation from the series instead of patching it.
    """
    _check_branch(branch)
    if variant not in ("derived", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    x, y = _kernel_args(tpl, z, u)
    n = tpl.n
    if branch == BRANCH_GE:
        return horn_h3(n, 1, 1, x * y / 4.0, x / 2.0, max_terms=max_terms).value
    beta = 2 if variant == "printed" else 1
    h = horn_h3(n, beta, beta, x * y / 4.0, y / 2.0, max_terms=max_terms).value
    return h - hyp2f1(Fraction(n, 2), Fraction(1 + n, 2), 1, x * y)


# ---------------------------------------------------------------------------
# hypergeometric series

def horn_h3(alpha, beta, gamma, z, w, max_terms=80):
    """Second-order Horn series sum_{m,k} (alpha)_{2m+k} (beta)_k z^m w^k
    / ((gamma)_{m+k} m! k!), truncated rectangularly.

    Outside the convergence region (|w| < 1 and |z| < 1/4 - (max(|w|,1/2) -
    1/2)^2) a HornDomainWarning is emitted but the value is still returned.
    """
    gamma = Fraction(gamma)
    if gamma <= 0 and gamma.denominator == 1:
        raise ValueError(f"gamma = {gamma} is a non-positive integer (pole)")
    if not _horn_in_domain(z, w):
        warnings.warn(f"point (|z|={abs(z):.3f}, |w|={abs(w):.3f}) is outside "
                      "the Horn series domain", HornDomainWarning, stacklevel=2)
    alpha, beta = float(Fraction(alpha)), float(Fraction(beta))
    gamma = float(gamma)
    total = 0.0
    shell = 0.0
    row = 1.0  # term at (m, 0)
    for m in range(max_terms):
        term = row
        for k in range(max_terms):
            total += term
            if m == max_terms - 1 or k == max_terms - 1:
                shell += abs(term)
            term *= (alpha + 2 * m + k) * (beta + k) / ((gamma + m + k) * (k + 1)) * w
        row *= (alpha + 2 * m) * (alpha + 2 * m + 1) / ((gamma + m) * (m + 1)) * z
    return TruncatedSum(total, shell)


def _horn_in_domain(z, w):
    if abs(w) >= 1.0:
        return False
    s = max(abs(w), 0.5)
    return abs(z) < 0.25 - (s - 0.5) ** 2


def hyp2f1(a, b, c, x, max_terms=200):
    """Gauss series sum_k (a)_k (b)_k x^k / ((c)_k k!), |x| < 1."""
    if abs(x) >= 1.0:
        raise ValueError(f"|x| = {abs(x):.4f} >= 1 outside the series domain")
    a, b, c = (float(Fraction(v)) for v in (a, b, c))
    total = 0.0
    term = 1.0
    for k in range(max_terms):
        total += term
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
    return total


# ---------------------------------------------------------------------------
# projection

def szego_radon(f, tpl, check=True, tol=1e-10):
    """Orthogonal projection of a harmonic polynomial onto the tuple's wave
    span, computed coefficient-wise: c_{p,q} = <wave_{p,q}, f>_S / gamma_pq.

    Exact (no quadrature) — rational inputs give rational coordinates.
    """
    return _project(f, tpl, None, check, tol)


def szego_radon_split(f, tpl, branch, check=True, tol=1e-10):
    """One branch of the split projection; the two branches sum to the full
    projection by construction."""
    _check_branch(branch)
    return _project(f, tpl, branch, check, tol)


def _project(f, tpl, branch, check, tol):
    if f.n != tpl.n:
        raise DimensionError("polynomial and tuple dimensions differ")
    if check:
        _require_harmonic(f, tol)
    dp, dq = f.degrees()
    coeffs = {}
    rec = BiPoly.zero(f.n)
    for p in range(dp + 1):
        for q in range(dq + 1):
            if branch is not None and not _in_branch(p, q, branch):
                continue
            wave = plane_wave(tpl, p, q)
            c = sphere_inner(wave, f) * (1 / gamma_pq(p, q, tpl.n))
            if c:
                coeffs[(p, q)] = c
                rec = rec + wave.scale_left(c)
    return ProjectionResult(coeffs, rec, space="ball-harmonic")


def branch_restrict(f, branch):
    """Keep only the bi-degree components lying in one branch."""
    _check_branch(branch)
    out = BiPoly.zero(f.n)
    for (p, q), part in f.bidegree_split().items():
        if _in_branch(p, q, branch):
            out = out + part
    return out


# ---------------------------------------------------------------------------
# dual transform

def dual_composition_factor(p, q, n):
    """Exact scaling the Stiefel-averaged dual applies to a bi-degree
    component: 1 / (gamma_pq lambda_pq dim_H)."""
    return 1 / (gamma_pq(p, q, n) * lambda_pq(p, q, n) * dim_H(p, q, n))


def dual_exact(f, n=None, check=True, tol=1e-10):
    """Stiefel-averaged composition dual∘projection, acting diagonally on
    bi-degree components.

    Accepts a harmonic polynomial or a ProjectionResult (its reconstruction
    is used).  The Monte-Carlo twin `dual_monte_carlo` estimates the same
    operator by averaging actual single-tuple projections.
    """
    if isinstance(f, ProjectionResult):
        f = f.reconstructed
    n = f.n if n is None else n
    if check:
        _require_harmonic(f, tol)
    out = BiPoly.zero(f.n)
    for (p, q), part in f.bidegree_split().items():
        out = out + part.scale_left(dual_composition_factor(p, q, n))
    return out


def worker_count():
    """Worker cap from UNITARY_RADON_THREADS (default 1, serial)."""
    try:
        return max(1, int(os.environ.get("UNITARY_RADON_THREADS", "1")))
    except ValueError:
        return 1


def dual_monte_carlo(f, n, samples, seed, project=szego_radon):
    """Monte-Carlo Stiefel average of single-tuple projections of f.

    Tuple i is drawn from the Haar 2-frame with the counter-based seed
    (seed, i), so the sample stream is independent of chunking/worker count;
    partial sums combine associatively in index order.

    Returns a MonteCarloEstimate whose mean is a float BiPoly and whose
    stderr maps term keys to standard errors of the mean.
    """
    if samples < 100:
        raise ValueError("fewer than 100 samples is statistically meaningless")
    f = f.to_float()
    workers = worker_count()
    bounds = np.linspace(0, samples, workers + 1).astype(int)
    chunks = [(f, n, seed, int(lo), int(hi), project)
              for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    if len(chunks) == 1:
        results = [_mc_chunk(chunks[0])]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(_mc_chunk, chunks))
    sums, sqs = {}, {}
    for csum, csq in results:
        for k, v in csum.items():
            sums[k] = sums.get(k, 0.0) + v
        for k, v in csq.items():
            sqs[k] = sqs.get(k, 0.0) + v
    mean_terms = {}
    stderr = {}
    for k, v in sums.items():
        mean = v / samples
        var = max(sqs[k] / samples - abs(mean) ** 2, 0.0)
        mean_terms[k] = mean
        stderr[k] = math.sqrt(var / max(samples - 1, 1))
    poly = BiPoly(f.n, {k: v for k, v in mean_terms.items() if v != 0})
    return MonteCarloEstimate(poly, stderr, samples)


def _mc_chunk(args):
    f, n, seed, lo, hi, project = args
    sums, sqs = {}, {}
    for i in range(lo, hi):
        tpl = sample_stiefel(n, seed=[seed, i])
        rec = project(f, tpl, check=False).reconstructed
        for key, c in rec.terms.items():
            c = to_complex(c)
            sums[key] = sums.get(key, 0.0) + c
            sqs[key] = sqs.get(key, 0.0) + abs(c) ** 2
    return sums, sqs


# ---------------------------------------------------------------------------
# inversion operators

def invert_holomorphic(g, n=None):
    """Euler-operator inversion for holomorphic inputs: degree-p components
    scale by (p+1)_(n-1) / (n-1)!, undoing the dual composition exactly."""
    n = g.n if n is None else n
    bad = [key for key in g.terms if any(key[1])]
    if bad:
        raise ContractViolation(f"input has zbar terms, e.g. {bad[0]}")
    out = BiPoly.zero(g.n)
    for (p, _q), part in g.bidegree_split().items():
        out = out + part.scale_left(pochhammer(p + 1, n - 1) / math.factorial(n - 1))
    return out


def general_inversion_factor(p, q, n, branch):
    """Exact eigenvalue of the branch inversion operator on a (p,q)
    component: the Laplace-integral Gamma factor (Gamma(q+1) on p>=q,
    Gamma(p+1) on p<q) times the Euler ladder
    (p+q+n-1)(p+1)_(n-2)(q+1)_(n-2) / ((n-1)!(n-2)!)."""
    _check_branch(branch)
    gamma_factor = math.factorial(q) if branch == BRANCH_GE else math.factorial(p)
    ladder = (Fraction(p + q + n - 1) * pochhammer(p + 1, n - 2) * pochhammer(q + 1, n - 2)
              / (math.factorial(n - 1) * math.factorial(n - 2)))
    return gamma_factor * ladder


def invert_general(g, n=None, branch=BRANCH_GE, check=True, tol=1e-10):
    """Branch inversion for harmonic inputs.

    The Laplace-type integrals act on polynomials as exact Gamma factors
    (the literal 64-node Gauss-Laguerre integral is kept as a test oracle);
    composed with dual_exact of the branch-restricted input this is the
    identity."""
    n = g.n if n is None else n
    if check:
        _require_harmonic(g, tol)
    out = BiPoly.zero(g.n)
    for (p, q), part in g.bidegree_split().items():
        out = out + part.scale_left(general_inversion_factor(p, q, n, branch))
    return out


def kernel_polynomial(tpl, u, pmax, qmax):
    """Truncated kernel K(., u) as a polynomial in z; exact for exact tuples
    and QC points u (used by the semigroup identity tests)."""
    out = BiPoly.zero(tpl.n)
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            wave = plane_wave(tpl, p, q)
            uval = wave.evaluate_exact(u) if tpl.exact else wave.evaluate(u)
            c = coeff_value_conj(uval) * (1 / gamma_pq(p, q, tpl.n))
            if c:
                out = out + wave.scale_left(c)
    return out


def coeff_value_conj(v):
    return v.conjugate() if hasattr(v, "conjugate") else complex(v).conjugate()
