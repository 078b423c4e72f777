import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitary_radon.exact import QC
from unitary_radon.core import dim_H, pochhammer
from unitary_radon.bipoly import (BiPoly, dz, dzbar, euler_z, euler_zbar,
                                  fischer, fischer_decompose, harmonic_basis,
                                  laplace_z, monomial_basis, sphere_inner,
                                  sphere_integral, sphere_moment)
from helpers import fischer_by_derivatives, mc_sphere_inner


def z(j, n=2):
    return BiPoly.variable(n, j)


def w(j, n=2):
    return BiPoly.variable(n, j, conjugated=True)


def rand_poly(n, rng, nterms=6, deg=3):
    terms = {}
    for _ in range(nterms):
        a = tuple(rng.randint(0, deg) for _ in range(n))
        b = tuple(rng.randint(0, deg) for _ in range(n))
        terms[(a, b)] = QC(rng.randint(-4, 4), rng.randint(-4, 4))
    return BiPoly(n, terms)


class TestCalculus:
    def test_dz_power_rule(self):
        assert dz(z(0) ** 2, 0) == z(0).scale_left(QC(2))

    def test_dz_annihilates_conjugates(self):
        assert not dz(w(0), 0)
        assert not dzbar(z(0) ** 3, 0)

    def test_dzbar(self):
        assert dzbar(z(0) * w(0) ** 2, 0) == (z(0) * w(0)).scale_left(QC(2))

    def test_euler_eigenvalues(self):
        P = z(0) ** 2 * w(1)
        assert euler_z(P) == P.scale_left(QC(2))
        assert euler_zbar(P) == P
        assert not euler_z(BiPoly.one(2))

    def test_laplace(self):
        assert not laplace_z(z(0) * w(0) - z(1) * w(1))
        assert laplace_z(z(0) * w(0)) == BiPoly.one(2)
        assert not laplace_z(z(0) ** 3 * z(1))

    def test_index_range(self):
        with pytest.raises(IndexError):
            dz(z(0), 5)


class TestFischer:
    def test_monomial_values(self):
        assert fischer(z(0), z(0)) == QC(1)
        assert fischer(z(0) ** 3, z(0) ** 3) == QC(6)
        assert fischer(z(0), w(0)) == QC(0)

    def test_derivative_oracle_small(self):
        assert fischer_by_derivatives(z(0) ** 3, z(0) ** 3) == QC(6)

    def test_closed_form_equals_derivative_definition(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.choice((2, 3))
            P, Q = rand_poly(n, rng), rand_poly(n, rng)
            assert fischer(P, Q) == fischer_by_derivatives(P, Q)

    def test_reproducing_kernel_property(self):
        rng = random.Random(3)
        n = 2
        for (r, s) in [(1, 0), (1, 1), (2, 1)]:
            for H in harmonic_basis(r, s, n):
                for _ in range(5):
                    u = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
                    for (p, q) in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]:
                        ub = [x.conjugate() for x in u]
                        Z = BiPoly.one(n)
                        if p:
                            Z = Z * BiPoly.linear(ub) ** p
                        if q:
                            Z = Z * BiPoly.linear(u, conjugated=True) ** q
                        Z = Z.scale_left(1 / Fraction(math.factorial(p) * math.factorial(q)))
                        got = fischer(Z.to_float(), H.to_float())
                        want = complex(H.evaluate(u)) if (p, q) == (r, s) else 0.0
                        assert abs(got - want) <= 1e-10


class TestSphere:
    def test_monomial_moments(self):
        assert sphere_moment((0, 0), (0, 0), 2) == 1
        assert sphere_moment((1, 0), (1, 0), 2) == Fraction(1, 2)
        assert sphere_moment((1, 0), (0, 1), 2) == 0

    def test_examples(self):
        assert sphere_inner(z(0), z(0)) == Fraction(1, 2)
        assert sphere_inner(z(0), z(1)) == 0
        assert sphere_inner(BiPoly.one(2), BiPoly.one(2)) == 1

    def test_moment_rule_against_monte_carlo(self):
        # one-time validation of the exact sphere integration
        rng = random.Random(5)
        for n in (2, 3):
            P, Q = rand_poly(n, rng, nterms=3, deg=2), rand_poly(n, rng, nterms=3, deg=2)
            exact = complex(sphere_inner(P.to_float(), Q.to_float()))
            est, se = mc_sphere_inner(P.to_float(), Q.to_float(), count=400000, seed=n)
            assert abs(est - exact) <= max(4 * se, 1e-3)

    def test_lemma2_relation_exact(self):
        # (n)_{p+q} <H, P>_S = <H, P>_d for harmonic H and same-bidegree P
        for n in (2, 3):
            for p in range(3):
                for q in range(3 - (n == 3) * 0):
                    if p + q > 5:
                        continue
                    for H in harmonic_basis(p, q, n)[:4]:
                        for key in monomial_basis(p, q, n)[:6]:
                            P = BiPoly.monomial(n, *key)
                            assert pochhammer(n, p + q) * sphere_inner(H, P) == fischer(H, P)

    def test_sphere_integral_radial(self):
        r2 = BiPoly.radial2(2)
        assert sphere_integral(r2) == 1  # |z|^2 = 1 on the sphere
        assert sphere_integral(r2 * r2) == 1


class TestStructure:
    def test_bidegree_split_examples(self):
        P = z(0) + w(1)
        parts = P.bidegree_split()
        assert set(parts) == {(1, 0), (0, 1)}
        assert parts[(1, 0)] == z(0)
        assert not BiPoly.zero(2).bidegree_split()
        sq = (z(0) + w(0)) ** 2
        parts = sq.bidegree_split()
        assert parts[(1, 1)] == (z(0) * w(0)).scale_left(QC(2))

    def test_adjoint_is_conjugate_function(self):
        rng = random.Random(7)
        P = rand_poly(2, rng)
        u = [complex(0.3, -0.4), complex(-0.2, 0.6)]
        val = complex(P.adjoint().evaluate(u))
        assert abs(val - complex(P.evaluate(u)).conjugate()) <= 1e-12

    def test_commutator_identity(self):
        # laplace(|z|^2 P) - |z|^2 laplace(P) = (p+q+n) P on bi-homogeneous P
        rng = random.Random(1)
        r2 = BiPoly.radial2(3)
        for _ in range(8):
            p, q = rng.randint(0, 3), rng.randint(0, 3)
            keys = monomial_basis(p, q, 3)
            P = BiPoly(3, {k: QC(rng.randint(-3, 3)) for k in rng.sample(keys, min(4, len(keys)))})
            assert laplace_z(r2 * P) - r2 * laplace_z(P) == P.scale_left(QC(p + q + 3))


@settings(max_examples=40, derandomize=True)
@given(st.integers(0, 2 ** 30))
def test_split_resum_identity(seed):
    rng = random.Random(seed)
    P = rand_poly(2, rng)
    total = BiPoly.zero(2)
    for part in P.bidegree_split().values():
        total = total + part
    assert total == P


@settings(max_examples=30, derandomize=True)
@given(st.integers(0, 2 ** 30))
def test_ring_laws(seed):
    rng = random.Random(seed)
    A, B, C = (rand_poly(2, rng, nterms=3, deg=2) for _ in range(3))
    assert (A + B) * C == A * C + B * C
    assert A * (B * C) == (A * B) * C
    assert (A * B).adjoint() == A.adjoint() * B.adjoint()


class TestHarmonicMachinery:
    def test_basis_counts(self):
        assert len(harmonic_basis(1, 1, 2)) == 3
        assert len(harmonic_basis(3, 0, 2)) == 4  # all holomorphic monomials
        assert len(harmonic_basis(2, 1, 3)) == dim_H(2, 1, 3) == 15

    def test_basis_is_harmonic(self):
        for (p, q, n) in [(1, 1, 2), (2, 2, 2), (2, 1, 3)]:
            for H in harmonic_basis(p, q, n):
                assert not laplace_z(H)

    def test_decompose_radial(self):
        r2 = BiPoly.radial2(2)
        parts = fischer_decompose(r2)
        assert parts == [(1, BiPoly.one(2))]

    def test_decompose_idempotent_on_harmonics(self):
        for H in harmonic_basis(2, 1, 2)[:3]:
            assert fischer_decompose(H) == [(0, H)]

    def test_decompose_example(self):
        P = z(0) * w(0)
        parts = dict(fischer_decompose(P))
        assert parts[1] == BiPoly.one(2).scale_left(QC(Fraction(1, 2)))
        H = parts[0]
        assert not laplace_z(H)
        assert H == (z(0) * w(0) - z(1) * w(1)).scale_left(QC(Fraction(1, 2)))

    def test_decompose_reconstructs(self):
        rng = random.Random(2)
        r2 = BiPoly.radial2(2)
        for _ in range(6):
            p, q = rng.randint(0, 3), rng.randint(1, 3)
            keys = monomial_basis(p, q, 2)
            P = BiPoly(2, {k: QC(rng.randint(-3, 3), rng.randint(-3, 3)) for k in keys})
            total = BiPoly.zero(2)
            for j, H in fischer_decompose(P):
                assert not laplace_z(H)
                total = total + (r2 ** j) * H
            assert total == P

    def test_decompose_rejects_mixed(self):
        with pytest.raises(ValueError):
            fischer_decompose(z(0) + z(0) * w(0))
