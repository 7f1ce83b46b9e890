import math

import numpy as np
import pytest
import scipy.linalg
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from susyspectra.numerics import (OscillatoryError, QuadratureError,
                                  QuadratureResult, TridiagonalMatrix,
                                  bessel_j, bessel_j_zero,
                                  count_eigenvalues_below, cubic_interp,
                                  integrate_adaptive,
                                  integrate_oscillatory_bessel,
                                  lower_incomplete_gamma, tridiag_eigen)

# First positive zero of J0, located by bisection on the plain power series
# (oracle below) and frozen here.
J0_FIRST_ZERO = 2.404825557695773


def _series_j0(x: float) -> float:
    # independent oracle: raw ascending series, scalar, no shared code paths
    term, out = 1.0, 1.0
    for k in range(1, 40):
        term *= -(x * x / 4.0) / (k * k)
        out += term
    return out


class TestBesselJ:
    def test_at_origin(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(1, 0.0) == 0.0
        assert bessel_j(7, 0.0) == 0.0

    def test_first_zero_of_j0(self):
        # bracket the root with the series oracle, then check the frozen value
        lo, hi = 2.0, 3.0
        assert _series_j0(lo) > 0 > _series_j0(hi)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if _series_j0(mid) > 0:
                lo = mid
            else:
                hi = mid
        assert abs(0.5 * (lo + hi) - J0_FIRST_ZERO) < 1e-12
        assert abs(bessel_j(0, J0_FIRST_ZERO)) < 1e-10

    def test_against_scipy(self):
        x = np.linspace(1e-6, 50.0, 7001)
        for m in range(0, 11):
            err = np.max(np.abs(bessel_j(m, x) - scipy.special.jv(m, x)))
            assert err < 1e-12, f"m={m}: {err}"

    def test_three_term_recurrence(self):
        x = np.linspace(0.5, 30.0, 901)
        for m in range(1, 10):
            lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x)
            rhs = (2.0 * m / x) * bessel_j(m, x)
            scale = np.maximum(np.abs(rhs), 1.0)
            assert np.max(np.abs(lhs - rhs) / scale) < 1e-9

    def test_negative_order_reflection(self):
        x = np.linspace(0.1, 20.0, 101)
        for m in (1, 2, 5):
            assert np.allclose(bessel_j(-m, x), (-1.0) ** m * bessel_j(m, x),
                               rtol=0, atol=1e-13)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            bessel_j(0, np.inf)
        with pytest.raises(ValueError):
            bessel_j(2, np.nan)

    def test_angular_integral_identity(self):
        # (1/2pi) closed-integral e^{i x sin phi - i m phi} dphi = J_m(x),
        # by direct periodic trapezoid quadrature
        phi = 2.0 * np.pi * np.arange(512) / 512
        for m in range(0, 9):
            for x in (0.2, 1.0, 3.0, 7.0, 12.0, 20.0):
                quad = np.mean(np.exp(1j * (x * np.sin(phi) - m * phi)))
                assert abs(quad - bessel_j(m, x)) < 1e-9

    def test_mcmahon_zeros(self):
        # the expansion is asymptotic in the zero index: low orders are sharp
        # everywhere, higher orders only need to land between true zeros
        for m in (0, 1, 2):
            ref = scipy.special.jn_zeros(m, 8)
            got = np.array([bessel_j_zero(m, k) for k in range(1, 9)])
            assert np.max(np.abs(got - ref)) < 2e-3
            assert np.abs(got[-1] - ref[-1]) < 1e-8
        for m in (5, 8):
            ref = scipy.special.jn_zeros(m, 13)
            got = np.array([bessel_j_zero(m, k) for k in range(1, 13)])
            assert np.all(got > np.concatenate(([0.0], ref[:-2] + 1e-9)))
            assert np.all(got < ref[1:])


class TestLowerIncompleteGamma:
    def test_closed_forms(self):
        assert abs(lower_incomplete_gamma(1.0, 1.0) - (1 - math.exp(-1))) < 1e-14
        assert lower_incomplete_gamma(2.5, 0.0) == 0.0
        assert abs(lower_incomplete_gamma(2.0, 50.0) - 1.0) < 1e-12

    def test_against_scipy(self):
        for s in (0.3, 1.0, 2.5, 8.0, 20.0):
            for x in (0.01, 0.5, 1.0, 5.0, 30.0, 80.0):
                ref = scipy.special.gammainc(s, x) * scipy.special.gamma(s)
                assert abs(lower_incomplete_gamma(s, x) - ref) <= 1e-12 * max(ref, 1.0)

    def test_domain(self):
        with pytest.raises(ValueError):
            lower_incomplete_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            lower_incomplete_gamma(-1.0, 1.0)
        with pytest.raises(ValueError):
            lower_incomplete_gamma(1.0, -0.5)

    @given(s=st.floats(0.2, 20.0), x1=st.floats(0.0, 50.0),
           x2=st.floats(0.0, 50.0))
    @settings(max_examples=60, deadline=None)
    def test_monotone_and_normalized(self, s, x1, x2):
        lo, hi = sorted((x1, x2))
        glo = lower_incomplete_gamma(s, lo)
        ghi = lower_incomplete_gamma(s, hi)
        assert glo <= ghi + 1e-12
        ratio = ghi / math.gamma(s)
        assert -1e-12 <= ratio <= 1.0 + 1e-12


class TestIntegrateAdaptive:
    def test_constant(self):
        res = integrate_adaptive(lambda x: np.ones_like(x), 0.0, 1.0, 1e-12)
        assert isinstance(res, QuadratureResult)
        assert abs(res.value - 1.0) < 1e-14
        assert res.error_estimate >= 0
        assert res.evaluations >= 1

    def test_exponential_tail(self):
        res = integrate_adaptive(lambda x: np.exp(-x), 0.0, 40.0, 1e-12)
        assert abs(res.value - 1.0) < 1e-10

    def test_against_incomplete_gamma(self):
        # same weight appearing in the Morse deformation denominator, lam = 1
        lam = 1.0
        f = lambda r: np.exp(-(2 * lam - 1) * r - 2 * lam * np.exp(-r))
        res = integrate_adaptive(f, 0.0, 1.0, 1e-12)
        s = 2 * lam - 1
        exact = (2 * lam) ** (1 - 2 * lam) * (
            lower_incomplete_gamma(s, 2 * lam)
            - lower_incomplete_gamma(s, 2 * lam * math.exp(-1.0)))
        assert abs(res.value - exact) < 1e-12

    def test_budget_exhaustion_carries_best(self):
        f = lambda x: np.cos(1000.0 * x)
        with pytest.raises(QuadratureError) as exc:
            integrate_adaptive(f, 0.0, 10.0, 1e-14, max_evals=300)
        assert isinstance(exc.value.best, QuadratureResult)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            integrate_adaptive(lambda x: x, 0.0, 1.0, 0.0)


class TestOscillatoryBessel:
    def test_unit_over_p_identity(self):
        ones = lambda x: np.ones_like(np.asarray(x, dtype=float))
        for p in (0.5, 1.0, 2.0, 5.0):
            for nu in (0, 1, 2):
                res = integrate_oscillatory_bessel(ones, nu, p, tol=1e-9)
                assert abs(p * res.value - 1.0) < 1e-6

    def test_zero_integrand(self):
        zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        res = integrate_oscillatory_bessel(zero, 0, 1.0, tol=1e-10)
        assert res.value == 0.0

    def test_divergent_envelope_raises(self):
        grow = lambda x: np.exp(np.asarray(x, dtype=float))
        with pytest.raises((OscillatoryError, OverflowError)):
            integrate_oscillatory_bessel(grow, 0, 1.0, tol=1e-8, max_blocks=30)


class TestTridiagEigen:
    def test_two_by_two(self):
        m = TridiagonalMatrix(np.array([2.0, 2.0]), np.array([-1.0]))
        pairs = tridiag_eigen(m, 2)
        assert abs(pairs[0][0] - 1.0) < 1e-12
        assert abs(pairs[1][0] - 3.0) < 1e-12

    def test_degenerate_diagonal(self):
        m = TridiagonalMatrix(np.array([5.0, 5.0, 5.0]), np.zeros(2))
        pairs = tridiag_eigen(m, 3)
        vals = np.array([p[0] for p in pairs])
        assert np.allclose(vals, 5.0, atol=1e-12)
        vecs = np.array([p[1] for p in pairs])
        assert np.allclose(vecs @ vecs.T, np.eye(3), atol=1e-10)

    def test_discrete_laplacian_closed_form(self):
        n = 50
        m = TridiagonalMatrix(np.full(n, 2.0), np.full(n - 1, -1.0))
        pairs = tridiag_eigen(m, 8)
        exact = 2.0 - 2.0 * np.cos(np.arange(1, 9) * np.pi / (n + 1))
        got = np.array([p[0] for p in pairs])
        assert np.max(np.abs(got - exact)) < 1e-11

    def test_residuals_and_scipy_cross_check(self):
        rng = np.random.default_rng(7)
        d = rng.standard_normal(200) * 3.0
        e = rng.standard_normal(199)
        m = TridiagonalMatrix(d, e)
        pairs = tridiag_eigen(m, 6)
        ref = scipy.linalg.eigh_tridiagonal(d, e, select="i",
                                            select_range=(0, 5))[0]
        bound = m.norm_bound()
        for (val, vec), rv in zip(pairs, ref):
            assert abs(val - rv) < 1e-10 * bound
            resid = np.linalg.norm(m.matvec(vec) - val * vec)
            assert resid <= 1e-10 * bound
            assert abs(np.linalg.norm(vec) - 1.0) < 1e-12

    @given(st.integers(0, 2 ** 31 - 1))
    @settings(max_examples=15, deadline=None)
    def test_sign_flip_invariance(self, seed):
        rng = np.random.default_rng(seed)
        n = 20
        d = rng.standard_normal(n)
        e = rng.standard_normal(n - 1)
        flips = rng.choice([-1.0, 1.0], size=n - 1)
        a = tridiag_eigen(TridiagonalMatrix(d, e), 4)
        b = tridiag_eigen(TridiagonalMatrix(d, e * flips), 4)
        for (va, _), (vb, _) in zip(a, b):
            assert abs(va - vb) <= 1e-12 * max(1.0, abs(va))

    def test_k_too_large(self):
        m = TridiagonalMatrix(np.array([1.0, 2.0]), np.array([0.5]))
        with pytest.raises(ValueError):
            tridiag_eigen(m, 3)

    def test_count_below(self):
        m = TridiagonalMatrix(np.array([2.0, 2.0]), np.array([-1.0]))
        assert count_eigenvalues_below(m, 0.5) == 0
        assert count_eigenvalues_below(m, 2.0) == 1
        assert count_eigenvalues_below(m, 4.0) == 2


class TestCubicInterp:
    def test_fourth_order_on_sine(self):
        h = 0.05
        xs = np.arange(0.0, 10.0 + h / 2, h)
        f = np.sin(xs)
        xq = np.linspace(0.3, 9.7, 777)
        err = np.max(np.abs(cubic_interp(xs[0], h, f, xq) - np.sin(xq)))
        assert err < 1e-5  # ~h^4

    def test_out_of_range_fills(self):
        xs = np.arange(0.0, 1.01, 0.1)
        out = cubic_interp(0.0, 0.1, np.ones_like(xs), np.array([-1.0, 2.0]),
                           left=-7.0, right=9.0)
        assert out[0] == -7.0 and out[1] == 9.0
