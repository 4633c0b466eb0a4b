"""Log-weight quadrature and the executable proof identities.

Radial moment oracle: integral of r^s ln(1/r) over [0,1] is 1/(s+1)^2
(integration by parts), so every polynomial integrand here has a closed-form
value to check the quadrature against.
"""

import math

import numpy as np
import pytest

from hankelrkt.disk import (
    DiskQuadrature,
    NormalizationError,
    PolyZZbar,
    ddbar,
    derivative,
    green_residual,
    int1_slack,
    integrate_log,
    littlewood_paley_residual,
    modsq_on_disk,
    proof_identity_residual,
    uchiyama_ratio,
)
from hankelrkt.hankel import HankelSymbol
from hankelrkt.hardy import TrigPolynomial
from hankelrkt.rkt import random_symbol, sup_garsia


def radial_moment(s: int) -> float:
    """Exact integral of r^s ln(1/r) dr over [0,1]."""
    return 1.0 / (s + 1) ** 2


def random_hermitian(rng, half_degree, scale=1.0):
    raw = rng.standard_normal((half_degree + 1, half_degree + 1)) + 1j * rng.standard_normal(
        (half_degree + 1, half_degree + 1)
    )
    return PolyZZbar(scale * 0.5 * (raw + np.conj(raw.T)))


def normalized_symbol(seed, m, d=1):
    s = random_symbol(seed, m, d)
    A, _ = sup_garsia(s)
    return s.scaled(1.0 / A)


class TestDdbar:
    def test_modsq_monomial(self):
        U = PolyZZbar.from_terms({(1, 1): [1.0]})
        D = ddbar(U)
        assert D.coeffs.shape[:2] == (1, 1) and D.coeffs[0, 0, 0] == 1.0

    def test_pq_rule(self):
        U = PolyZZbar.from_terms({(2, 1): [1.0]})
        D = ddbar(U)
        # z^2 zbar -> 2 z, so Laplacian is 8z
        assert D.coeffs[1, 0, 0] == 2.0 and np.count_nonzero(D.coeffs) == 1

    def test_analytic_is_harmonic(self):
        U = PolyZZbar.from_terms({(3, 0): [2.0], (1, 0): [1j], (0, 0): [5.0]})
        assert ddbar(U).is_zero

    def test_random_against_index_loop(self):
        rng = np.random.default_rng(1)
        U = random_hermitian(rng, 5)
        D = ddbar(U)
        for p in range(1, 6):
            for q in range(1, 6):
                assert D.coeffs[p - 1, q - 1, 0] == U.coeffs[p, q, 0] * p * q


class TestDiskQuadrature:
    def test_weights_positive_and_total(self):
        Q = DiskQuadrature(n_r=64, n_t=16)
        assert np.all(Q.weights > 0)
        assert np.sum(Q.weights) == pytest.approx(np.pi / 2, abs=1e-12)

    def test_constant_quarter(self):
        one = PolyZZbar.from_terms({(0, 0): [1.0]})
        assert abs(integrate_log(one) - 0.25) <= 1e-8

    def test_laplacian_of_modsq(self):
        four = PolyZZbar.from_terms({(0, 0): [4.0]})
        assert abs(integrate_log(four) - 1.0) <= 1e-8

    def test_radial_moments_high_degree(self):
        for p in (1, 5, 20, 60):
            F = PolyZZbar.from_terms({(p, p): [1.0]})
            assert abs(integrate_log(F) - radial_moment(2 * p + 1)) <= 1e-12

    def test_linearity(self):
        rng = np.random.default_rng(2)
        F = random_hermitian(rng, 4)
        G = random_hermitian(rng, 6)
        Q = DiskQuadrature(n_r=64, n_t=32)
        lhs = integrate_log(F + G.scaled(2.5), Q)
        rhs = integrate_log(F, Q) + 2.5 * integrate_log(G, Q)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-13)

    def test_monotone_on_nonnegative_integrand(self):
        # |z|^2 has nonnegative values; so does (1 - |z|^2)
        Q = DiskQuadrature(n_r=32, n_t=8)
        F = PolyZZbar.from_terms({(1, 1): [1.0]})
        G = PolyZZbar.from_terms({(0, 0): [1.0], (1, 1): [-1.0]})
        assert integrate_log(F, Q) > 0
        assert integrate_log(G, Q) > 0

    def test_doubling_stability(self):
        rng = np.random.default_rng(3)
        F = random_hermitian(rng, 15)
        v64 = integrate_log(F, DiskQuadrature(64, 2 * F.max_angular_frequency + 8))
        v128 = integrate_log(F, DiskQuadrature(128, 2 * F.max_angular_frequency + 8))
        assert abs(v64 - v128) <= 1e-10

    def test_rejects_non_hermitian(self):
        F = PolyZZbar.from_terms({(1, 0): [1.0]})
        with pytest.raises(ValueError, match="non-Hermitian"):
            integrate_log(F)

    def test_restriction_to_circle(self):
        U = PolyZZbar.from_terms({(2, 1): [1.0], (0, 0): [3.0]})
        f = U.restrict_to_circle()
        assert f.coeff(1)[0] == 1.0 and f.coeff(0)[0] == 3.0


class TestGreenIdentity:
    def test_modsq(self):
        U = PolyZZbar.from_terms({(1, 1): [1.0]})
        assert green_residual(U) <= 1e-8

    def test_harmonic_exact_zero(self):
        # Re(z^3) = (z^3 + zbar^3)/2 is harmonic: both sides vanish
        U = PolyZZbar.from_terms({(3, 0): [0.5], (0, 3): [0.5]})
        assert green_residual(U) <= 1e-10

    def test_modsq_squared(self):
        # |z|^4: boundary mean 1, value at 0 is 0; Laplacian 16 |z|^2,
        # and the radial moment gives 16 * 1/16 = 1
        U = PolyZZbar.from_terms({(2, 2): [1.0]})
        assert 16.0 * radial_moment(3) == 1.0
        assert green_residual(U) <= 1e-8

    def test_random_polynomials(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            U = random_hermitian(rng, 15)
            assert green_residual(U) <= 1e-8

    def test_rejects_vector(self):
        U = PolyZZbar(np.zeros((2, 2, 3)))
        with pytest.raises(ValueError):
            green_residual(U)


class TestLittlewoodPaley:
    def test_monomials_tight(self):
        for n in (1, 2, 7, 19, 32):
            assert littlewood_paley_residual(TrigPolynomial.monomial(n)) <= 1e-10

    def test_constant_exact(self):
        assert littlewood_paley_residual(TrigPolynomial.monomial(0, 3.0 - 1j)) <= 1e-14

    def test_random_vector_polynomials(self):
        rng = np.random.default_rng(5)
        for d in (1, 3):
            c = rng.standard_normal((33, d)) + 1j * rng.standard_normal((33, d))
            f = TrigPolynomial(c, 0)
            assert littlewood_paley_residual(f) <= 1e-8

    def test_termwise_oracle(self):
        # ||f||^2 restated termwise: 4 n^2 * moment(2n-1) = 1 for each monomial
        for n in range(1, 12):
            assert 4 * n**2 * radial_moment(2 * n - 1) == pytest.approx(1.0, abs=1e-15)


class TestUchiyama:
    def test_unit_symbol_constant_f(self):
        s = HankelSymbol([[1.0]])  # sup garsia = 1 already
        f = TrigPolynomial.monomial(0)
        assert uchiyama_ratio(s, f) == pytest.approx(1.0, abs=1e-10)

    def test_monomial_decay(self):
        s = HankelSymbol([[1.0]])
        for n in (1, 4, 9):
            f = TrigPolynomial.monomial(n)
            want = 4.0 * radial_moment(2 * n + 1)  # = 4/(2n+2)^2
            assert uchiyama_ratio(s, f) == pytest.approx(want, abs=1e-12)
        assert uchiyama_ratio(s, TrigPolynomial.monomial(40)) < 1e-3

    def test_zero_symbol(self):
        z = HankelSymbol(np.zeros((0, 1)))
        assert uchiyama_ratio(z, TrigPolynomial.monomial(2)) == 0.0

    def test_normalization_guard_carries_sup(self):
        s = HankelSymbol([[2.0]])  # sup garsia = 4
        with pytest.raises(NormalizationError) as err:
            uchiyama_ratio(s, TrigPolynomial.monomial(0))
        assert err.value.measured_sup == pytest.approx(4.0, abs=1e-12)

    def test_random_normalized_bounded_by_e(self):
        rng = np.random.default_rng(6)
        for trial in range(8):
            s = normalized_symbol(int(rng.integers(2**32)), m=int(rng.integers(1, 8)))
            for _ in range(3):
                deg = int(rng.integers(0, 12))
                c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
                ratio = uchiyama_ratio(s, TrigPolynomial(c, 0))
                assert 0.0 <= ratio <= math.e + 1e-6


class TestProofIdentity:
    def test_rank_one_constant(self):
        # boundary (zbar, zbar) = 1; area (2/pi) integral of ln(1/|z|) = 1
        s = HankelSymbol([[1.0]])
        f = TrigPolynomial.monomial(0)
        g = TrigPolynomial.monomial(1)
        assert proof_identity_residual(s, f, g) <= 1e-8

    def test_annihilated_power(self):
        s = random_symbol(20, m=4, d=2)
        f = TrigPolynomial.monomial(4)
        gc = np.ones((3, 2))
        g = TrigPolynomial(gc, 1)
        assert proof_identity_residual(s, f, g) <= 1e-9

    def test_random_against_doubled_resolution(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            m = int(rng.integers(1, 9))
            d = int(rng.integers(1, 3))
            s = random_symbol(int(rng.integers(2**32)), m, d)
            f = TrigPolynomial(rng.standard_normal(9) + 1j * rng.standard_normal(9), 0)
            g = TrigPolynomial(rng.standard_normal((8, d)) + 1j * rng.standard_normal((8, d)), 1)
            r64 = proof_identity_residual(s, f, g)
            r128 = proof_identity_residual(s, f, g, n_r=128)
            assert r64 <= 1e-7
            assert abs(r64 - r128) <= 1e-9

    def test_rejects_nonvanishing_g(self):
        s = HankelSymbol([[1.0]])
        with pytest.raises(ValueError, match="origin"):
            proof_identity_residual(s, TrigPolynomial.monomial(0), TrigPolynomial.monomial(0))

    def test_rejects_dim_mismatch(self):
        s = random_symbol(22, m=3, d=2)
        with pytest.raises(ValueError):
            proof_identity_residual(s, TrigPolynomial.monomial(0), TrigPolynomial.monomial(1))


class TestInt1Slack:
    def test_z(self):
        assert int1_slack(TrigPolynomial.monomial(1)) == pytest.approx(0.0, abs=1e-10)

    def test_constant(self):
        assert int1_slack(TrigPolynomial.monomial(0)) == pytest.approx(1.0, abs=1e-10)

    def test_head_coefficient(self):
        g = TrigPolynomial.from_terms({0: [3.0], 2: [1.0]})
        assert int1_slack(g) == pytest.approx(9.0, abs=1e-8)

    def test_random(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            deg = int(rng.integers(0, 24))
            c = rng.standard_normal((deg + 1, 2)) + 1j * rng.standard_normal((deg + 1, 2))
            g = TrigPolynomial(c, 0)
            slack = int1_slack(g)
            head = float(np.sum(np.abs(g.coeff(0)) ** 2))
            assert slack >= -1e-9
            assert slack == pytest.approx(head, abs=1e-8)


class TestDerivativeHelper:
    def test_power_rule(self):
        f = TrigPolynomial.from_terms({0: [5.0], 3: [2.0]})
        fp = derivative(f)
        assert fp.coeff(2)[0] == 6.0 and fp.n_max == 2

    def test_modsq_on_disk_values(self):
        rng = np.random.default_rng(24)
        c = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
        f = TrigPolynomial(c, 0)
        F = modsq_on_disk(f)
        pts = 0.8 * np.exp(1j * np.linspace(0, 6, 13)) * np.linspace(0.1, 1, 13)
        want = np.sum(np.abs(np.array([[np.polyval(c[::-1, i], z) for i in range(2)] for z in pts])) ** 2, axis=1)
        got = F.evaluate(pts)[:, 0].real
        assert np.allclose(got, want, rtol=1e-11, atol=1e-11)
