"""Deterministic generators of exact random test inputs.

Everything here is driven by ``random.Random(seed)`` and produces QC
coefficients, so identity checks downstream can assert with ``==``.
"""

from __future__ import annotations

import random

from .exact import QC
from .core import rational_stiefel
from .bipoly import BiPoly, harmonic_basis
from .realspace import HermiteExpansion
from .clifford import grade_project, hmono_wave, random_spinor


def rng_for(seed):
    return random.Random(seed)


def random_harmonic(n, max_degree, rng, density=1.0):
    """Random harmonic polynomial: an integer combination of the exact
    harmonic basis over all bi-degrees with p+q <= max_degree."""
    out = BiPoly.zero(n)
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            for H in harmonic_basis(p, q, n):
                if rng.random() > density:
                    continue
                c = QC(rng.randint(-3, 3), rng.randint(-3, 3))
                if c:
                    out = out + H.scale_left(c)
    return out


def random_entire(n, max_degree, rng, density=1.0):
    """Random holomorphic polynomial with Gaussian-integer coefficients."""
    from .core import compositions
    terms = {}
    zero = (0,) * n
    for k in range(max_degree + 1):
        for alpha in compositions(k, n):
            if rng.random() > density:
                continue
            c = QC(rng.randint(-3, 3), rng.randint(-3, 3))
            if c:
                terms[(alpha, zero)] = c
    return BiPoly(n, terms)


def random_expansion(n, max_degree, rng, density=1.0):
    """Random finite oscillator expansion with Gaussian-integer coefficients."""
    from .core import compositions
    coeffs = {}
    for k in range(max_degree + 1):
        for alpha in compositions(k, n):
            if rng.random() > density:
                continue
            c = QC(rng.randint(-3, 3), rng.randint(-3, 3))
            if c:
                coeffs[alpha] = c
    return HermiteExpansion(n, coeffs)


def random_hmono(n, max_degree, grade, rng, tuples=2):
    """Random grade-pure Hermitian-monogenic polynomial: spinor-weighted
    monogenic waves over several exact tuples, then beta-grade projected
    (the Dirac operators shift grade homogeneously, so projection preserves
    monogenicity)."""
    out = BiPoly.zero(n)
    for _ in range(tuples):
        tpl = rational_stiefel(n, rng.randrange(10 ** 6))
        p = rng.randint(0, max_degree)
        q = rng.randint(0, max_degree - p)
        out = out + hmono_wave(tpl, p, q).scale_right(random_spinor(n, rng))
    return out.map_coefficients(lambda c: grade_project(c, grade))
