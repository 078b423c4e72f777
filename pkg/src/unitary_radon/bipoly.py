"""Sparse bi-graded polynomials in commuting formal variables z_1..z_n,
zbar_1..zbar_n over a generic coefficient ring.

z and zbar are independent indeterminates: conjugating a polynomial swaps the
two exponent blocks and conjugates coefficients, which makes the
cross-annihilation identities of the formal calculus hold syntactically.

Coefficient ring contract (duck-typed): +, -, *, bool (nonzero test), and an
adjoint — ``dagger()`` if present (Clifford), else ``conjugate()`` (QC,
complex).  Scalars must absorb multiplication by int/Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact import QC, as_qc, to_complex
from .core import multi_factorial, multi_total, compositions


def coeff_adjoint(c):
    if hasattr(c, "dagger"):
        return c.dagger()
    return c.conjugate()


class BiPoly:
    """Sparse polynomial: map (alpha, beta) -> coefficient, zeros never stored."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for (alpha, beta), c in terms.items():
                if not c:
                    continue
                if len(alpha) != n or len(beta) != n:
                    raise ValueError("multi-index length must equal n")
                key = (tuple(alpha), tuple(beta))
                if key in self.terms:
                    c = self.terms[key] + c
                    if c:
                        self.terms[key] = c
                    else:
                        del self.terms[key]
                else:
                    self.terms[key] = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n):
        return BiPoly(n)

    @staticmethod
    def one(n, coeff=None):
        c = QC(1) if coeff is None else coeff
        return BiPoly(n, {((0,) * n, (0,) * n): c})

    @staticmethod
    def monomial(n, alpha, beta, coeff=None):
        c = QC(1) if coeff is None else coeff
        return BiPoly(n, {(tuple(alpha), tuple(beta)): c})

    @staticmethod
    def variable(n, j, conjugated=False):
        """z_j (or zbar_j), 0-based index."""
        if not 0 <= j < n:
            raise IndexError(f"variable index {j} out of range for n={n}")
        e = tuple(1 if k == j else 0 for k in range(n))
        z = (0,) * n
        return BiPoly(n, {((z, e) if conjugated else (e, z)): QC(1)})

    @staticmethod
    def linear(coeffs, conjugated=False):
        """sum_j coeffs[j] * z_j (or * zbar_j)."""
        n = len(coeffs)
        zero = (0,) * n
        terms = {}
        for j, c in enumerate(coeffs):
            if not c:
                continue
            e = tuple(1 if k == j else 0 for k in range(n))
            terms[(zero, e) if conjugated else (e, zero)] = c
        return BiPoly(n, terms)

    @staticmethod
    def radial2(n):
        """|z|^2 = sum_j z_j zbar_j."""
        terms = {}
        for j in range(n):
            e = tuple(1 if k == j else 0 for k in range(n))
            terms[(e, e)] = QC(1)
        return BiPoly(n, terms)

    # -- ring structure -----------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            if key in out:
                s = out[key] + c
                if s:
                    out[key] = s
                else:
                    del out[key]
            else:
                out[key] = c
        return BiPoly._raw(self.n, out)

    def __neg__(self):
        return BiPoly._raw(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            self._check(other)
            out = {}
            for (a1, b1), c1 in self.terms.items():
                for (a2, b2), c2 in other.terms.items():
                    key = (tuple(x + y for x, y in zip(a1, a2)),
                           tuple(x + y for x, y in zip(b1, b2)))
                    c = c1 * c2
                    if key in out:
                        c = out[key] + c
                    if c:
                        out[key] = c
                    elif key in out:
                        del out[key]
            return BiPoly._raw(self.n, out)
        return self.scale_right(other)

    def __rmul__(self, other):
        return self.scale_left(other)

    def scale_left(self, c):
        return BiPoly._raw(self.n, _prune({k: c * v for k, v in self.terms.items()}))

    def scale_right(self, c):
        return BiPoly._raw(self.n, _prune({k: v * c for k, v in self.terms.items()}))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = BiPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    @staticmethod
    def _raw(n, terms):
        p = BiPoly.__new__(BiPoly)
        p.n = n
        p.terms = terms
        return p

    # -- structure ----------------------------------------------------------

    def adjoint(self):
        """The conjugate function: swap exponent blocks, adjoint coefficients."""
        return BiPoly._raw(self.n, {(b, a): coeff_adjoint(c) for (a, b), c in self.terms.items()})

    def map_coefficients(self, fn):
        return BiPoly._raw(self.n, _prune({k: fn(c) for k, c in self.terms.items()}))

    def bidegree(self):
        """(p, q) if bi-homogeneous (zero polynomial counts as (0, 0))."""
        degs = {(multi_total(a), multi_total(b)) for a, b in self.terms}
        if not degs:
            return (0, 0)
        if len(degs) > 1:
            raise ValueError(f"not bi-homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def bidegree_split(self):
        """Partition terms by (|alpha|, |beta|); re-summing reconstructs exactly."""
        parts = {}
        for (a, b), c in self.terms.items():
            parts.setdefault((multi_total(a), multi_total(b)), {})[(a, b)] = c
        return {pq: BiPoly._raw(self.n, t) for pq, t in sorted(parts.items())}

    def component(self, p, q):
        return BiPoly._raw(self.n, {(a, b): c for (a, b), c in self.terms.items()
                                    if multi_total(a) == p and multi_total(b) == q})

    def degrees(self):
        """(max |alpha|, max |beta|) over stored terms; (0, 0) for zero."""
        dp = max((multi_total(a) for a, _ in self.terms), default=0)
        dq = max((multi_total(b) for _, b in self.terms), default=0)
        return dp, dq

    def is_zero(self, tol=0.0):
        if not self.terms:
            return True
        if tol == 0.0:
            return False
        return all(abs(to_complex(c)) <= tol for c in self.terms.values())

    def max_abs(self):
        return max((abs(to_complex(c)) for c in self.terms.values()), default=0.0)

    def to_float(self):
        return self.map_coefficients(to_complex)

    def to_exact(self):
        return self.map_coefficients(as_qc)

    def evaluate_exact(self, zs):
        """Pointwise value staying inside the coefficient ring (QC points)."""
        if len(zs) != self.n:
            raise ValueError("point dimension mismatch")
        zs = [as_qc(z) for z in zs]
        ws = [z.conjugate() for z in zs]
        total = 0
        for (a, b), c in self.terms.items():
            m = QC(1)
            for z, e in zip(zs, a):
                if e:
                    m = m * z ** e
            for w, e in zip(ws, b):
                if e:
                    m = m * w ** e
            total = total + c * m
        return total

    def evaluate(self, zs):
        """Pointwise value at z = zs (conjugates supplied internally)."""
        if len(zs) != self.n:
            raise ValueError("point dimension mismatch")
        zs = [to_complex(z) for z in zs]
        ws = [z.conjugate() for z in zs]
        total = 0
        for (a, b), c in self.terms.items():
            m = 1.0
            for z, e in zip(zs, a):
                if e:
                    m *= z ** e
            for w, e in zip(ws, b):
                if e:
                    m *= w ** e
            total = total + c * m
        return total

    def __repr__(self):
        if not self.terms:
            return "BiPoly(0)"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "".join(f"*z{j}^{e}" for j, e in enumerate(a) if e)
            mono += "".join(f"*w{j}^{e}" for j, e in enumerate(b) if e)
            bits.append(f"({c!r}){mono}")
        return "BiPoly[" + " + ".join(bits) + "]"


def _prune(terms):
    return {k: c for k, c in terms.items() if c}


# ---------------------------------------------------------------------------
# formal calculus

def dz(P, j):
    """Formal d/dz_j; annihilates zbar-only monomials."""
    if not 0 <= j < P.n:
        raise IndexError(f"index {j} out of range")
    out = {}
    for (a, b), c in P.terms.items():
        if a[j] == 0:
            continue
        a2 = a[:j] + (a[j] - 1,) + a[j + 1:]
        out[(a2, b)] = out.get((a2, b), 0) + c * a[j]
    return BiPoly._raw(P.n, _prune(out))


def dzbar(P, j):
    """Formal d/dzbar_j."""
    if not 0 <= j < P.n:
        raise IndexError(f"index {j} out of range")
    out = {}
    for (a, b), c in P.terms.items():
        if b[j] == 0:
            continue
        b2 = b[:j] + (b[j] - 1,) + b[j + 1:]
        out[(a, b2)] = out.get((a, b2), 0) + c * b[j]
    return BiPoly._raw(P.n, _prune(out))


def euler_z(P):
    """z-Euler operator: multiplies each term by its z-degree."""
    return BiPoly._raw(P.n, _prune({k: c * multi_total(k[0]) for k, c in P.terms.items()}))


def euler_zbar(P):
    return BiPoly._raw(P.n, _prune({k: c * multi_total(k[1]) for k, c in P.terms.items()}))


def laplace_z(P):
    """Complex Laplacian sum_j d/dzbar_j d/dz_j; drops bi-degree by (1,1)."""
    out = {}
    for (a, b), c in P.terms.items():
        for j in range(P.n):
            if a[j] and b[j]:
                a2 = a[:j] + (a[j] - 1,) + a[j + 1:]
                b2 = b[:j] + (b[j] - 1,) + b[j + 1:]
                key = (a2, b2)
                out[key] = out.get(key, 0) + c * (a[j] * b[j])
    return BiPoly._raw(P.n, _prune(out))


# ---------------------------------------------------------------------------
# inner products

def fischer(P, Q):
    """Differentiation pairing, closed monomial form:
    sum over shared (alpha, beta) of conj(c_P) c_Q alpha! beta!.
    Conjugate-linear in P.  Equals the literal repeated-derivative definition
    (kept as a test oracle)."""
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    small, big = (P.terms, Q.terms) if len(P.terms) <= len(Q.terms) else (Q.terms, P.terms)
    total = 0
    for key, c in small.items():
        d = big.get(key)
        if d is None:
            continue
        cp, cq = (c, d) if small is P.terms else (d, c)
        w = multi_factorial(key[0]) * multi_factorial(key[1])
        total = total + coeff_adjoint(cp) * cq * w
    return total


def sphere_moment(alpha, beta, n):
    """Normalized sphere average of z^alpha zbar^beta: nonzero only on the
    diagonal, alpha! (n-1)! / (n-1+|alpha|)! there."""
    if alpha != beta:
        return Fraction(0)
    return Fraction(multi_factorial(alpha) * math.factorial(n - 1),
                    math.factorial(n - 1 + multi_total(alpha)))


def sphere_integral(P):
    """Exact normalized integral of P over the unit sphere (monomial moments).
    Works for any coefficient ring; returns a ring element (or 0)."""
    total = 0
    for (a, b), c in P.terms.items():
        w = sphere_moment(a, b, P.n)
        if w:
            total = total + c * w
    return total


def sphere_inner(P, Q):
    """Normalized spherical L2 pairing <P, Q>, adjoint-linear in P; exact.

    Works for any coefficient ring (the adjoint(c_P) * c_Q order matters for
    Clifford coefficients).  Equivalent to sphere_integral(P.adjoint() * Q)
    but skips the off-diagonal products the moment rule would kill.
    """
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    total = 0
    for (a, b), cp in P.terms.items():
        cpa = None
        for (c, d), cq in Q.terms.items():
            # the integrand term is z^(b+c) zbar^(a+d); only the diagonal survives
            mu = tuple(x + y for x, y in zip(b, c))
            if mu != tuple(x + y for x, y in zip(a, d)):
                continue
            if cpa is None:
                cpa = coeff_adjoint(cp)
            total = total + cpa * cq * sphere_moment(mu, mu, P.n)
    return total


# ---------------------------------------------------------------------------
# exact linear algebra over a field (Fraction or QC entries)

def _rref(rows, ncols):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def _nullspace(rows, ncols):
    """Basis of the kernel of the matrix given by `rows` (exact)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols)]
                for j in range(ncols)]
    pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def _solve_exact(columns, rhs):
    """Solve A x = rhs exactly where A is given column-wise; raises if
    inconsistent.  Entries may be Fraction or QC."""
    nrows = len(rhs)
    aug = [[col[i] for col in columns] + [rhs[i]] for i in range(nrows)]
    pivots = _rref(aug, len(columns))
    x = [QC(0)] * len(columns)
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][-1]
    for r in range(len(pivots), nrows):
        if aug[r][-1]:
            raise ValueError("inconsistent linear system")
    return x


# ---------------------------------------------------------------------------
# harmonic machinery

def monomial_basis(p, q, n):
    """Canonically ordered monomial keys of the bi-degree (p, q) space."""
    return [(a, b) for a in compositions(p, n) for b in compositions(q, n)]


@lru_cache(maxsize=None)
def harmonic_basis(p, q, n):
    """Exact basis of the kernel of laplace_z on the (p, q) monomial space.

    Cached; single computation wins under concurrent use.  Cardinality equals
    dim_H(p, q, n).
    """
    from .core import dim_H
    keys = monomial_basis(p, q, n)
    if p == 0 or q == 0:
        basis = tuple(BiPoly.monomial(n, a, b) for a, b in keys)
    else:
        index = {k: i for i, k in enumerate(keys)}
        target = {k: i for i, k in enumerate(monomial_basis(p - 1, q - 1, n))}
        rows = [[Fraction(0)] * len(keys) for _ in target]
        for (a, b), col in index.items():
            for j in range(n):
                if a[j] and b[j]:
                    a2 = a[:j] + (a[j] - 1,) + a[j + 1:]
                    b2 = b[:j] + (b[j] - 1,) + b[j + 1:]
                    rows[target[(a2, b2)]][col] += a[j] * b[j]
        basis = tuple(
            BiPoly(n, {keys[i]: QC(v) for i, v in enumerate(vec) if v})
            for vec in _nullspace(rows, len(keys)))
    assert len(basis) == dim_H(p, q, n)
    return basis


def fischer_decompose(P):
    """Split a bi-homogeneous P into sum_j |z|^(2j) H_j with each H_j in the
    harmonic kernel; one exact dense solve per call."""
    p, q = P.bidegree()
    if not P:
        return []
    nu = min(p, q)
    n = P.n
    keys = monomial_basis(p, q, n)
    index = {k: i for i, k in enumerate(keys)}
    columns = []
    labels = []
    r2 = BiPoly.radial2(n)
    for j in range(nu + 1):
        radial = r2 ** j
        for H in harmonic_basis(p - j, q - j, n):
            col = [QC(0)] * len(keys)
            for key, c in (radial * H).terms.items():
                col[index[key]] = c
            columns.append(col)
            labels.append(j)
    rhs = [QC(0)] * len(keys)
    for key, c in P.terms.items():
        rhs[index[key]] = as_qc(c)
    x = _solve_exact(columns, rhs)
    parts = {}
    pos = 0
    for j in range(nu + 1):
        H = BiPoly.zero(n)
        for basis_el in harmonic_basis(p - j, q - j, n):
            if x[pos]:
                H = H + basis_el.scale_left(x[pos])
            pos += 1
        if H:
            parts[j] = H
    return sorted(parts.items())
