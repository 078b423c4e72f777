"""Named invariant suites behind the `verify` CLI command.

Every check is deterministic given (n, max_degree, seed); gated checks must
pass (exit 3 otherwise), advisory notes report measured deviations of
published closed forms that disagree with the defining series — they are
evidence, not gates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import QC, to_complex
from .core import (axis_tuple, dim_H, gamma_pq, lambda_pq, pochhammer,
                   rational_stiefel, sample_stiefel)
from .bipoly import BiPoly, fischer, laplace_z, sphere_inner
from . import ball, clifford, fock, realspace
from .results import CheckResult
from .samples import (random_entire, random_expansion, random_harmonic,
                      random_hmono, rng_for)

SPACES = ("ball-harmonic", "ball-holomorphic", "fock", "l2", "hermitian")


@dataclass
class VerifyReport:
    space: str
    n: int
    max_degree: int
    seed: int
    checks: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed or c.advisory for c in self.checks)

    def lines(self):
        out = [c.line() for c in self.checks]
        for d in self.discrepancies:
            out.append(f"NOTE {d['name']}: deviation={d['max_deviation']:.3e} ({d['summary']})")
        return out


def run_verify(space, n=2, max_degree=4, seed=0, mc_samples=0):
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}; choose from {SPACES}")
    fn = {"ball-harmonic": _verify_ball,
          "ball-holomorphic": _verify_holo,
          "fock": _verify_fock,
          "l2": _verify_l2,
          "hermitian": _verify_hermitian}[space]
    report = VerifyReport(space, n, max_degree, seed)
    fn(report, n, max_degree, seed, mc_samples)
    return report


def _chk(report, name, measured, tol, detail="", advisory=False):
    measured = float(measured)
    report.checks.append(CheckResult(name, measured <= tol, measured, tol, detail, advisory))


def _note(report, name, deviation, summary):
    report.discrepancies.append(
        {"name": name, "max_deviation": float(deviation), "summary": summary})


def _exact(flag):
    return 0.0 if flag else 1.0


def _probe_points(rng, n, radius, count):
    pts = []
    for _ in range(count):
        z = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
        norm = math.sqrt(sum(abs(c) ** 2 for c in z))
        pts.append([c * radius / max(norm, 1e-9) * rng.random() for c in z])
    return pts


# ---------------------------------------------------------------------------
# ball, harmonic

def _verify_ball(report, n, max_degree, seed, mc_samples):
    rng = rng_for(seed)
    tuples = [axis_tuple(n, 0, 1), rational_stiefel(n, seed + 1), rational_stiefel(n, seed + 2)]

    deg = min(max_degree, 4)
    ok = True
    for tpl in tuples[:2]:
        for p in range(deg + 1):
            for q in range(deg + 1):
                for w in range(deg + 1):
                    for v in range(deg + 1):
                        got = ball.plane_wave_norm_check(tpl, p, q, w, v)
                        want = gamma_pq(p, q, n) if (p, q) == (w, v) else 0
                        ok = ok and (got == QC(want) if want else not got)
    _chk(report, "wave-gram-table-exact", _exact(ok), 0.0,
         f"p,q,w,v <= {deg}, {len(tuples[:2])} exact tuples")

    ok = all(not laplace_z(ball.plane_wave(tpl, p, q))
             for tpl in tuples for p in range(7) for q in range(7 - p))
    _chk(report, "wave-harmonicity-exact", _exact(ok), 0.0, "p+q <= 6")

    haar = sample_stiefel(n, seed + 3)
    pts = _probe_points(rng, n, 0.3, 12)
    rel = 0.0
    sym = 0.0
    for z, u in zip(pts[::2], pts[1::2]):
        closed = ball.szego_kernel_closed(haar, z, u)
        series = ball.szego_kernel_series(haar, z, u).value
        rel = max(rel, abs(closed - series) / abs(closed))
        sym = max(sym, abs(ball.szego_kernel_closed(haar, z, u).conjugate()
                           - ball.szego_kernel_closed(haar, u, z)))
    _chk(report, "kernel-closed-vs-series", rel, 1e-10, "trunc 40, |z|,|u| <= 0.3")
    _chk(report, "kernel-hermitian-symmetry", sym, 1e-12)

    split_dev = 0.0
    closed1_dev = 0.0
    closed2_dev = 0.0
    printed_dev = 0.0
    for z, u in zip(pts[::2], pts[1::2]):
        s1 = ball.split_kernel(haar, z, u, ball.BRANCH_GE).value
        s2 = ball.split_kernel(haar, z, u, ball.BRANCH_LT).value
        full = ball.szego_kernel_series(haar, z, u).value
        split_dev = max(split_dev, abs(s1 + s2 - full))
        closed1_dev = max(closed1_dev, abs(ball.split_kernel_closed(haar, z, u, ball.BRANCH_GE) - s1))
        closed2_dev = max(closed2_dev, abs(
            ball.split_kernel_closed(haar, z, u, ball.BRANCH_LT, variant="derived") - s2))
        printed_dev = max(printed_dev, abs(
            ball.split_kernel_closed(haar, z, u, ball.BRANCH_LT, variant="printed") - s2))
    _chk(report, "split-branches-partition-series", split_dev, 1e-12)
    _chk(report, "split-branch1-h3-closed-form", closed1_dev, 1e-10)
    _chk(report, "split-branch2-derived-closed-form", closed2_dev, 1e-10)
    _note(report, "split-branch2-printed-closed-form", printed_dev,
          "the (n,2,2) Horn parameterization does not reproduce the defining "
          "restricted sum; the (n,1,1) form does and is used for comparison")

    tpl = tuples[1]
    ok = True
    for p in range(min(max_degree, 3) + 1):
        for q in range(min(max_degree, 3) + 1):
            wave = ball.plane_wave(tpl, p, q)
            res = ball.szego_radon(wave, tpl)
            ok = ok and res.coefficients == {(p, q): QC(1)} and res.reconstructed == wave
    _chk(report, "projection-reproduces-waves", _exact(ok), 0.0)

    ok_idem = ok_adj = ok_split = True
    for _ in range(3):
        f = random_harmonic(n, min(max_degree, 3), rng)
        g = random_harmonic(n, min(max_degree, 3), rng)
        rf = ball.szego_radon(f, tpl)
        ok_idem = ok_idem and ball.szego_radon(rf.reconstructed, tpl).coefficients == rf.coefficients
        rg = ball.szego_radon(g, tpl)
        ok_adj = ok_adj and sphere_inner(rf.reconstructed, g) == sphere_inner(f, rg.reconstructed)
        r1 = ball.szego_radon_split(f, tpl, ball.BRANCH_GE)
        r2 = ball.szego_radon_split(f, tpl, ball.BRANCH_LT)
        ok_split = ok_split and (r1.reconstructed + r2.reconstructed == rf.reconstructed)
    _chk(report, "projection-idempotent-exact", _exact(ok_idem), 0.0)
    _chk(report, "projection-self-adjoint-exact", _exact(ok_adj), 0.0)
    _chk(report, "split-projections-sum-exact", _exact(ok_split), 0.0)

    D = 2
    upt = [QC(Fraction(1, 5), Fraction(-1, 7))] + [QC(Fraction(1, 9))] * (n - 1)
    vpt = [QC(Fraction(-1, 6), Fraction(1, 8))] + [QC(Fraction(1, 11))] * (n - 1)
    ku = ball.kernel_polynomial(tpl, upt, D, D)
    kv = ball.kernel_polynomial(tpl, vpt, D, D)
    lhs = sphere_inner(ku.adjoint(), kv.adjoint())
    rhs = ku.evaluate_exact(vpt)
    _chk(report, "kernel-semigroup-exact", _exact(lhs == rhs), 0.0, f"degree <= {D}")

    ok_gl = ok_q0 = ok_eq24 = True
    for p in range(5):
        for q in range(5):
            k, nu = p + q, min(p, q)
            ok_gl = ok_gl and gamma_pq(p, q, n) * lambda_pq(p, q, n) == Fraction(
                math.factorial(p) * math.factorial(q), math.factorial(k - nu))
            if q == 0:
                ok_q0 = ok_q0 and (gamma_pq(p, 0, n) * lambda_pq(p, 0, n) * dim_H(p, 0, n)
                                   == Fraction(math.factorial(n + p - 1),
                                               math.factorial(n - 1) * math.factorial(p)))
            if p < q:
                lhs24 = 1 / (gamma_pq(p, q, n) * lambda_pq(p, q, n) * dim_H(p, q, n))
                rhs24 = Fraction(math.factorial(n - 1) * math.factorial(n - 2)) / (
                    (n + p + q - 1) * pochhammer(q + 1, n - 2) * pochhammer(p + 1, n - 2)
                    * math.factorial(p))
                ok_eq24 = ok_eq24 and lhs24 == rhs24
    _chk(report, "gamma-lambda-identity", _exact(ok_gl), 0.0, "gamma*lambda = p!q!/(k-nu)!")
    _chk(report, "holomorphic-dual-constant", _exact(ok_q0), 0.0)
    _chk(report, "branch2-dual-constant-closed-form", _exact(ok_eq24), 0.0)

    ok_holo = ok_gen = True
    for _ in range(3):
        g = random_entire(n, min(max_degree + 1, 5), rng)
        ok_holo = ok_holo and ball.invert_holomorphic(ball.dual_exact(g)) == g
        f = random_harmonic(n, min(max_degree + 1, 5), rng)
        total = BiPoly.zero(n)
        for br in (ball.BRANCH_GE, ball.BRANCH_LT):
            total = total + ball.invert_general(ball.dual_exact(ball.branch_restrict(f, br)),
                                                branch=br)
        ok_gen = ok_gen and total == f
    _chk(report, "holomorphic-inversion-roundtrip", _exact(ok_holo), 0.0)
    _chk(report, "general-inversion-roundtrip", _exact(ok_gen), 0.0)

    if mc_samples >= 100:
        f = random_harmonic(n, 1, rng)
        est = ball.dual_monte_carlo(f, n, mc_samples, seed + 7)
        exact = {k: to_complex(v) for k, v in ball.dual_exact(f).terms.items()}
        _chk(report, "dual-monte-carlo-3sigma", _exact(est.within(exact)), 0.0,
             f"N={mc_samples}")


# ---------------------------------------------------------------------------
# ball, holomorphic restriction

def _verify_holo(report, n, max_degree, seed, mc_samples):
    rng = rng_for(seed)
    tpl = rational_stiefel(n, seed + 1)
    haar = sample_stiefel(n, seed + 3)
    pts = _probe_points(rng, n, 0.3, 10)
    rel = 0.0
    for z, u in zip(pts[::2], pts[1::2]):
        closed = ball.holo_kernel_closed(haar, z, u)
        series = ball.szego_kernel_series(haar, z, u, qmax=0, pmax=60).value
        rel = max(rel, abs(closed - series) / abs(closed))
    _chk(report, "holo-kernel-closed-vs-series", rel, 1e-10, "trunc 60")

    deg = min(max_degree, 4)
    ok = all((ball.plane_wave_norm_check(tpl, p, 0, w, 0)
              == (QC(gamma_pq(p, 0, n)) if p == w else QC(0)))
             for p in range(deg + 1) for w in range(deg + 1))
    _chk(report, "entire-wave-gram-exact", _exact(ok), 0.0)

    ok = True
    for _ in range(5):
        g = random_entire(n, 5, rng)
        ok = ok and ball.invert_holomorphic(ball.dual_exact(g)) == g
    _chk(report, "holomorphic-inversion-roundtrip", _exact(ok), 0.0)


# ---------------------------------------------------------------------------
# fock

def _verify_fock(report, n, max_degree, seed, mc_samples):
    rng = rng_for(seed)
    tpl = rational_stiefel(n, seed + 1)

    ok = all(fock.fock_inner(fock.entire_wave(tpl, p), fock.entire_wave(tpl, p))
             == QC(fock.mu_p(p)) for p in range(7))
    _chk(report, "entire-wave-norms-exact", _exact(ok), 0.0, "mu_p = 2^p p!")

    haar = sample_stiefel(n, seed + 2)
    pts = _probe_points(rng, n, 0.8, 10)
    rel = 0.0
    for z, w in zip(pts[::2], pts[1::2]):
        k_exp = fock.bargmann_kernel(haar, z, w)
        k_ser = fock.wave_series_kernel(haar, z, w)
        rel = max(rel, abs(k_exp - k_ser) / abs(k_exp))
    _chk(report, "exp-kernel-vs-series", rel, 1e-12, "60 terms")

    ok_rep = all(fock.bargmann_radon(fock.entire_wave(tpl, p), tpl).coefficients == {p: QC(1)}
                 for p in range(min(max_degree, 4) + 1))
    _chk(report, "projection-reproduces-waves", _exact(ok_rep), 0.0)

    ok_idem = ok_adj = ok_round = True
    for _ in range(3):
        f = random_entire(n, min(max_degree + 2, 6), rng)
        g = random_entire(n, min(max_degree + 2, 6), rng)
        rf = fock.bargmann_radon(f, tpl)
        ok_idem = ok_idem and fock.bargmann_radon(rf.reconstructed, tpl).coefficients == rf.coefficients
        ok_adj = ok_adj and (fischer(rf.reconstructed, g)
                             == fischer(f, fock.bargmann_radon(g, tpl).reconstructed))
        ok_round = ok_round and fock.fock_invert(fock.fock_dual_exact(f)) == f
    _chk(report, "projection-idempotent-exact", _exact(ok_idem), 0.0)
    _chk(report, "projection-self-adjoint-exact", _exact(ok_adj), 0.0)
    _chk(report, "inversion-roundtrip-exact", _exact(ok_round), 0.0)

    ok = all(Fraction(1, fock.mu_p(p)) == (1 / gamma_pq(p, 0, n)) * (1 / pochhammer(n, p))
             for p in range(11))
    _chk(report, "kernel-coefficient-ratio", _exact(ok), 0.0,
         "1/mu_p = (1/gamma_p0) / (n)_p")

    if mc_samples >= 100:
        f = random_entire(n, 1, rng)
        est = fock.fock_dual_monte_carlo(f, n, mc_samples, seed + 7)
        exact = {k: to_complex(v) for k, v in fock.fock_dual_exact(f).terms.items()}
        _chk(report, "dual-monte-carlo-3sigma", _exact(est.within(exact)), 0.0,
             f"N={mc_samples}")


# ---------------------------------------------------------------------------
# l2

def _verify_l2(report, n, max_degree, seed, mc_samples):
    rng = rng_for(seed)
    tpl = rational_stiefel(n, seed + 1)
    ax = axis_tuple(n, 0, 1)

    ok = all(realspace.l2_inner(realspace.HermiteExpansion.basis(1, (k,)),
                                realspace.HermiteExpansion.basis(1, (k,)))
             == QC(math.factorial(k)) for k in range(8))
    ok = ok and realspace.hermite(2) == [-1, 0, 1] and realspace.hermite(3) == [0, -3, 0, 1]
    _chk(report, "oscillator-basis-norms", _exact(ok), 0.0, "<psi_k, psi_k> = k!")

    ok = all(realspace.tuple_wave(t, k)
             == realspace.segal_bargmann_inv(fock.entire_wave(t, k))
             for t in (ax, tpl) for k in range(min(max_degree + 1, 6)))
    _chk(report, "tuple-wave-construction-paths", _exact(ok), 0.0,
         "multinomial expansion == basis-exchange pullback")

    ok = True
    for k in range(min(max_degree + 2, 7)):
        for kp in range(min(max_degree + 2, 7)):
            got = realspace.l2_inner(realspace.tuple_wave(tpl, k), realspace.tuple_wave(tpl, kp))
            want = QC(2 ** k * math.factorial(k)) if k == kp else QC(0)
            ok = ok and got == want
    _chk(report, "tuple-wave-orthogonality-exact", _exact(ok), 0.0)

    haar = sample_stiefel(n, seed + 2)
    dev = 0.0
    for k in range(5):
        for kp in range(5):
            got = realspace.l2_inner(realspace.tuple_wave(haar, k).to_float(),
                                     realspace.tuple_wave(haar, kp).to_float())
            want = 2 ** k * math.factorial(k) if k == kp else 0.0
            dev = max(dev, abs(complex(got) - want))
    _chk(report, "tuple-wave-orthogonality-haar", dev, 1e-10, "float tuple")

    ok = True
    for _ in range(3):
        f = random_expansion(n, min(max_degree, 4), rng)
        try:
            realspace.l2_radon(f, tpl, check_square=True)
            realspace.l2_radon(f, ax, check_square=True)
        except AssertionError:
            ok = False
    _chk(report, "commuting-square-exact", _exact(ok), 0.0,
         "projection == exchange-conjugated projection")

    rel = 0.0
    for _ in range(10):
        x, y = rng.uniform(-2, 2), rng.uniform(-2, 2)
        s = realspace.mehler_series(0.5, x, y)
        c = realspace.mehler_closed(0.5, x, y)
        rel = max(rel, abs(s - c) / abs(c))
    _chk(report, "mehler-normalization-oracle", rel, 1e-8, "rho = 0.5, 60 terms")

    ok_rep = all(realspace.l2_radon(realspace.tuple_wave(tpl, k), tpl).coefficients
                 == {k: QC(1)} for k in range(min(max_degree, 4) + 1))
    ok_idem = ok_round = True
    for _ in range(3):
        f = random_expansion(n, min(max_degree, 4), rng)
        rf = realspace.l2_radon(f, tpl)
        ok_idem = ok_idem and realspace.l2_radon(rf.reconstructed, tpl).coefficients == rf.coefficients
        ok_round = ok_round and realspace.l2_invert(realspace.l2_dual_exact(f)) == f
    _chk(report, "projection-reproduces-waves", _exact(ok_rep), 0.0)
    _chk(report, "projection-idempotent-exact", _exact(ok_idem), 0.0)
    _chk(report, "inversion-roundtrip-exact", _exact(ok_round), 0.0)

    if n >= 3:
        probe = realspace.HermiteExpansion.basis(n, (0, 0, 2) + (0,) * (n - 3))
        res = realspace.l2_radon(probe, ax)
        _chk(report, "off-plane-annihilation", _exact(not res.coefficients), 0.0,
             "excitation outside the tuple plane projects to zero")

    sym = 0.0
    for _ in range(5):
        x = [rng.uniform(-1.5, 1.5) for _ in range(n)]
        y = [rng.uniform(-1.5, 1.5) for _ in range(n)]
        kxy = realspace.l2_kernel_series(haar, x, y, 8).value
        kyx = realspace.l2_kernel_series(haar, y, x, 8).value
        sym = max(sym, abs(kxy - kyx.conjugate()))
    _chk(report, "kernel-series-hermitian", sym, 1e-12)

    # The product closed form only evaluates when every overlap rho_j < 1,
    # impossible at n=2 (they sum to 2); probe at n=3 where it can evaluate.
    dev = 0.0
    probe = None
    for s in range(200):
        cand = sample_stiefel(3, s)
        if all(r < 0.9 for r in realspace.wave_overlaps(cand)):
            probe = cand
            break
    if probe is not None:
        for _ in range(5):
            x = [rng.uniform(-1.5, 1.5) for _ in range(3)]
            y = [rng.uniform(-1.5, 1.5) for _ in range(3)]
            series = realspace.l2_kernel_series(probe, x, y, 50).value
            dev = max(dev, abs(series - realspace.l2_kernel_closed(probe, x, y)))
    _note(report, "l2-kernel-product-closed-form", dev,
          "the printed product form keeps only |.|^2 of the wave coefficients "
          "(real output vs the complex series) and is not evaluable at n=2 "
          "(overlaps sum to 2); the series is authoritative")


# ---------------------------------------------------------------------------
# hermitian

def _verify_hermitian(report, n, max_degree, seed, mc_samples):
    rng = rng_for(seed)
    CE = clifford.CliffordElement

    ok = True
    for nn in (2, 3, 4):
        for i in range(1, 2 * nn + 1):
            for j in range(1, 2 * nn + 1):
                ei, ej = CE.generator(nn, i), CE.generator(nn, j)
                want = CE.scalar(nn, QC(-2 if i == j else 0))
                ok = ok and ei * ej + ej * ei == want
        for a in range(1, nn + 1):
            fa, fad = clifford.witt(nn, a), clifford.witt(nn, a, True)
            ok = ok and not fa * fa and not fad * fad
            for b in range(1, nn + 1):
                fb, fbd = clifford.witt(nn, b), clifford.witt(nn, b, True)
                ok = ok and not (fa * fb + fb * fa) and not (fad * fbd + fbd * fad)
                want = CE.scalar(nn, QC(1 if a == b else 0))
                ok = ok and fa * fbd + fbd * fa == want
    _chk(report, "witt-relations-exact", _exact(ok), 0.0, "n <= 4")

    ok = True
    for _ in range(5):
        a = clifford.random_spinor(2, rng) + clifford.null_tau(rational_stiefel(2, rng.randrange(99)))
        b = clifford.random_spinor(2, rng)
        ok = ok and (a * b).dagger() == b.dagger() * a.dagger()
        ok = ok and a.dagger().dagger() == a
    _chk(report, "dagger-anti-involution", _exact(ok), 0.0)

    ok = True
    for nn in (2, 3):
        I = clifford.idempotent(nn)
        ok = ok and I * I == I and I.scalar_part() == QC(Fraction(1, 2 ** nn))
        beta = clifford.spin_euler(nn)
        for j in range(nn + 1):
            for el in clifford.spinor_basis(nn, j):
                ok = ok and beta * el == el * Fraction(j)
    _chk(report, "spinor-grading-eigenvalues", _exact(ok), 0.0, "beta f^(j) = j f^(j)")

    ok = True
    count = 0
    for nn in (2, 3, 4):
        for s in range(34 if nn == 2 else 33):
            tpl = rational_stiefel(nn, seed + s)
            tau = clifford.null_tau(tpl)
            ok = ok and not tau * tau and tau * tau.dagger() * tau == tau * 4
            count += 1
    _chk(report, "null-element-identities", _exact(ok), 0.0, f"{count} exact tuples")

    tpl = rational_stiefel(n, seed + 1)
    ok = all(clifford.monogenic_residuals(clifford.hmono_wave(tpl, p, q)) == (0.0, 0.0)
             for p in range(6) for q in range(6 - p))
    _chk(report, "wave-dirac-residuals-zero", _exact(ok), 0.0, "p+q <= 5")

    tau = clifford.null_tau(tpl)
    ttd = tau.dagger() * tau
    ok = True
    for p in range(4):
        for q in range(4):
            got = clifford.herm_inner(clifford.hmono_wave(tpl, p, q),
                                      clifford.hmono_wave(tpl, p, q))
            ok = ok and got == ttd * gamma_pq(p, q, n)
            off = clifford.herm_inner(clifford.hmono_wave(tpl, p, q),
                                      clifford.hmono_wave(tpl, q + 1, p))
            ok = ok and not off
    _chk(report, "wave-norm-table-exact", _exact(ok), 0.0, "gamma_pq tau^dag tau, p,q <= 3")

    ok = all(Fraction(1, 4) * (1 / gamma_pq(p, q, n)) == 1 / (4 * gamma_pq(p, q, n))
             for p in range(6) for q in range(6))
    _chk(report, "kernel-scalar-factor-quarter", _exact(ok), 0.0,
         "series coefficients are exactly 1/4 of the scalar kernel's")

    ok_rep = ok_idem = True
    for _ in range(2):
        alpha = clifford.random_spinor(n, rng)
        F = clifford.hmono_wave(tpl, 1, 2).scale_right(alpha)
        res = clifford.herm_radon(F, tpl)
        ok_rep = ok_rep and res.reconstructed == F
        ok_idem = ok_idem and clifford.herm_radon(res.reconstructed, tpl).reconstructed == res.reconstructed
    _chk(report, "projection-reproduces-waves", _exact(ok_rep), 0.0)
    _chk(report, "projection-idempotent-exact", _exact(ok_idem), 0.0)

    ok = True
    for j in range(1, n):
        for (p, q) in ((0, 0), (2, 1)):
            C = clifford.grade_project(clifford.random_spinor(n, rng), j)
            ok = ok and clifford.beta_substituted(C, p, q, n) == C * Fraction((n - j + q) * (j + p))
    _chk(report, "grade-factor-operator-vs-scalar", _exact(ok), 0.0,
         "literal left multiplication == eigenvalue substitution")

    ok = True
    printed_dev = Fraction(0)
    denom_dev = Fraction(0)
    for nn in (2, 3):
        for j in range(1, nn):
            for p in range(4):
                for q in range(4):
                    br = ball.BRANCH_GE if p >= q else ball.BRANCH_LT
                    ok = ok and clifford.dual_inversion_product(p, q, j, nn, br) == 1
                    printed = clifford.dual_inversion_product(p, q, j, nn, br, variant="printed")
                    if br == ball.BRANCH_GE:
                        printed_dev = max(printed_dev, abs(printed - 1))
                    else:
                        denom_dev = max(denom_dev, abs(printed - 1))
    _chk(report, "dual-inversion-products-one", _exact(ok), 0.0,
         "p,q <= 3, 1 <= j < n, n in {2,3}, exact rationals")
    _note(report, "inversion-ladder-printed-overshoot", float(printed_dev),
          "the published p>=q ladder tops out two rungs high; its dual product "
          "is (q+n)(q+n+1) instead of 1")
    _note(report, "inversion-ladder-printed-denominator", float(denom_dev),
          "the published p<q eigenvalue divides by (n-j) where the operator "
          "definition gives (q+n-j)")

    ok = True
    for j in range(1, n):
        for _ in range(2):
            F = random_hmono(n, min(max_degree, 3), j, rng)
            if not F:
                continue
            ok = ok and clifford.monogenic_residuals(F) == (0.0, 0.0)
            total = BiPoly.zero(n)
            for br in (ball.BRANCH_GE, ball.BRANCH_LT):
                Fb = clifford.branch_restrict_poly(F, br)
                if Fb:
                    total = total + clifford.herm_invert(
                        clifford.herm_dual_exact(Fb, j=j), j=j, branch=br)
            ok = ok and total == F
    _chk(report, "inversion-roundtrip-exact", _exact(ok), 0.0, "grades 1 <= j < n")

    if mc_samples >= 100:
        x = clifford.grade_project(clifford.null_tau(tpl) * clifford.random_spinor(n, rng), 1)
        F = BiPoly.one(n, coeff=x)
        est = clifford.herm_dual_monte_carlo(F, n, mc_samples, seed + 7)
        exact = clifford.flatten_clifford_poly(
            clifford.herm_dual_exact(F, j=1).map_coefficients(lambda c: c.to_float()))
        _chk(report, "dual-monte-carlo-3sigma", _exact(est.within(exact)), 0.0,
             f"N={mc_samples}")
