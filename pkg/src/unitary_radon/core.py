"""Complex vector geometry, Stiefel tuples and the combinatorial constants.

Vectors are plain tuples of scalars (QC for exact work, ``complex`` for
sampled/float work).  All constants are exact ``Fraction``s.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import QC, to_complex

DEFAULT_TOL = 1e-12
#: rejection threshold for non-orthonormal tuples at construction
TUPLE_TOL = 1e-10


class DimensionError(ValueError):
    """Vector lengths disagree or the ambient dimension is too small."""


# ---------------------------------------------------------------------------
# pairings

def herm(z, u):
    """Hermitian inner product sum(z_j * conj(u_j)); conjugate-linear in u."""
    if len(z) != len(u):
        raise DimensionError(f"length mismatch: {len(z)} vs {len(u)}")
    total = 0
    for a, b in zip(z, u):
        total = total + a * _conj(b)
    return total


def bilinear_pair(a, b):
    """Plain bilinear pairing sum(a_j * b_j), no conjugation; symmetric."""
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    total = 0
    for x, y in zip(a, b):
        total = total + x * y
    return total


def _conj(x):
    return x.conjugate() if hasattr(x, "conjugate") else x


def vec_conj(v):
    return tuple(_conj(x) for x in v)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Stiefel tuples

@dataclass(frozen=True)
class StiefelTuple:
    """Two Hermitian-orthonormal vectors (t, s) in C^n, n >= 2.

    Entries may be QC (exactly orthonormal, used by the exact identity suite)
    or complex floats (Haar samples; orthonormality enforced to TUPLE_TOL).
    Degenerate tuples are rejected here rather than re-orthonormalized inside
    transforms.
    """

    t: tuple
    s: tuple

    def __post_init__(self):
        t, s = tuple(self.t), tuple(self.s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)
        if len(t) != len(s):
            raise DimensionError("t and s must have equal length")
        if len(t) < 2:
            raise DimensionError("tuples need n >= 2")
        for label, value, want in (("herm(t,t)", herm(t, t), 1),
                                   ("herm(s,s)", herm(s, s), 1),
                                   ("herm(t,s)", herm(t, s), 0)):
            if abs(to_complex(value) - want) > TUPLE_TOL:
                raise ValueError(f"degenerate tuple: {label} = {value!r}, expected {want}")

    @property
    def n(self):
        return len(self.t)

    @property
    def exact(self):
        return all(isinstance(x, QC) for x in self.t + self.s)

    def wave_coeffs_z(self):
        """Coefficient vector conj(s+t) of the holomorphic wave factor."""
        return vec_conj(vec_add(self.s, self.t))

    def wave_coeffs_zbar(self):
        """Coefficient vector (s-t) of the antiholomorphic wave factor."""
        return vec_sub(self.s, self.t)


def axis_tuple(n, i, j):
    """The exact tuple t = e_i, s = e_j (0-based), i != j."""
    if not (0 <= i < n and 0 <= j < n):
        raise DimensionError(f"axis indices out of range for n={n}")
    if i == j:
        raise ValueError("axis tuple needs distinct indices")
    t = tuple(QC(1) if k == i else QC(0) for k in range(n))
    s = tuple(QC(1) if k == j else QC(0) for k in range(n))
    return StiefelTuple(t, s)


def sample_stiefel(n, seed):
    """Haar-distributed (t, s): the first two columns of a Haar unitary.

    Draws a 2-column complex Ginibre matrix and orthonormalizes under herm;
    deterministic for a given seed.
    """
    if n < 2:
        raise DimensionError("sampling needs n >= 2")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    t = g[:, 0] / np.linalg.norm(g[:, 0])
    s = g[:, 1] - np.vdot(t, g[:, 1]) * t
    s = s / np.linalg.norm(s)
    return StiefelTuple(tuple(complex(x) for x in t), tuple(complex(x) for x in s))


# (cos, sin) pairs with cos^2 + sin^2 = 1 and Gaussian-rational unit phases:
# the building blocks of exactly-unitary pseudo-random rotations.
_PYTHAGOREAN = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)),
                (Fraction(8, 17), Fraction(15, 17)), (Fraction(20, 29), Fraction(21, 29)),
                (Fraction(7, 25), Fraction(24, 25)), (Fraction(9, 41), Fraction(40, 41))]
_UNIT_PHASES = [QC(1), QC(-1), QC(0, 1), QC(0, -1),
                QC(Fraction(3, 5), Fraction(4, 5)), QC(Fraction(3, 5), Fraction(-4, 5)),
                QC(Fraction(5, 13), Fraction(12, 13)), QC(Fraction(-8, 17), Fraction(15, 17))]


def rational_stiefel(n, seed):
    """Pseudo-random tuple that is *exactly* orthonormal over the Gaussian
    rationals: the axis tuple pushed through random Pythagorean Givens
    rotations and unit phases.  Not Haar; used wherever identities are
    asserted exactly on "random" tuples.
    """
    if n < 2:
        raise DimensionError("n >= 2 required")
    rng = random.Random(seed)
    cols = [list(axis_tuple(n, 0, 1).t), list(axis_tuple(n, 0, 1).s)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c, s = rng.choice(_PYTHAGOREAN)
        u1, u2, lam = (rng.choice(_UNIT_PHASES) for _ in range(3))
        a, b = u1 * c, u2 * s
        # unitary 2x2 block [[a, b], [-conj(b)*lam, conj(a)*lam]]
        for col in cols:
            xi, xj = col[i], col[j]
            col[i] = a * xi + b * xj
            col[j] = -b.conjugate() * lam * xi + a.conjugate() * lam * xj
    for k in range(n):
        # diagonal unitary: the same phase must hit coordinate k of both columns
        phase = rng.choice(_UNIT_PHASES)
        cols[0][k] = cols[0][k] * phase
        cols[1][k] = cols[1][k] * phase
    for col in cols:
        phase = rng.choice(_UNIT_PHASES)
        for k in range(n):
            col[k] = col[k] * phase
    return StiefelTuple(tuple(cols[0]), tuple(cols[1]))


# ---------------------------------------------------------------------------
# multi-indices

def multi_total(alpha):
    return sum(alpha)


def multi_factorial(alpha):
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def compositions(total, parts):
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def multinomial(k, kappa):
    out = math.factorial(k)
    for a in kappa:
        out //= math.factorial(a)
    return out


# ---------------------------------------------------------------------------
# combinatorial constants (exact)

def pochhammer(a, k):
    """Rising factorial (a)_k = a(a+1)...(a+k-1), exact."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(a) + i
    return out


def gamma_pq(p, q, n):
    """Spherical norm of the bi-degree (p,q) plane wave: 2^(p+q) p! q! / (n)_(p+q)."""
    _check_pq(p, q, n)
    return Fraction(2 ** (p + q) * math.factorial(p) * math.factorial(q)) / pochhammer(n, p + q)


def dim_H(p, q, n):
    """Dimension of the bi-degree (p,q) harmonic space."""
    _check_pq(p, q, n)
    value = Fraction(n + p + q - 1, n - 1) * math.comb(q + n - 2, n - 2) * math.comb(p + n - 2, n - 2)
    assert value.denominator == 1
    return int(value)


def lambda_pq(p, q, n):
    """Stiefel plane-wave normalization (k+n-1)!/(2^k (n-1)! (k-nu)!), nu=min(p,q)."""
    _check_pq(p, q, n)
    k, nu = p + q, min(p, q)
    return Fraction(math.factorial(k + n - 1), 2 ** k * math.factorial(n - 1) * math.factorial(k - nu))


def lambda_tilde_pq(p, q, n):
    """Monogenic analogue: (p+1)^2 (q+1)^2 (k+n+1)! / (2^(k+2) (n-1)! (k-nu)!)."""
    _check_pq(p, q, n)
    k, nu = p + q, min(p, q)
    return Fraction((p + 1) ** 2 * (q + 1) ** 2 * math.factorial(k + n + 1),
                    2 ** (k + 2) * math.factorial(n - 1) * math.factorial(k - nu))


def _check_pq(p, q, n):
    if p < 0 or q < 0:
        raise ValueError("bi-degrees must be non-negative")
    if n < 2:
        raise DimensionError("n >= 2 required")
