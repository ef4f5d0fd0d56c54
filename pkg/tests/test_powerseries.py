"""Formal series arithmetic and generating-function coefficient extraction.

The arcsine-composition oracle is the exact Maclaurin series of asin
(coefficients (2m)!/(4^m (m!)^2 (2m+1))); the generating-function outputs
are checked against the exact rational pair and the summation oracle, and
the decisive identity is that the coefficients reproduce (R1, R2) to 1e-30.
"""

import math
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from apery import (
    DomainError,
    Precision,
    TaylorSeries,
    arcsin_coeff,
    arcsin_series,
    constant_series,
    egf_arcsin_coeffs,
    egf_rational_coeffs,
    egf_sum_coeffs,
    exp_series,
    irrational_factor,
    rational_part,
    sum_series,
)

F = Fraction
P256 = Precision(256)
TOL70 = mpf(10) ** -70


def frac_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


class TestBuildingBlocks:
    def test_exp_series_examples(self):
        assert exp_series(F(1), 3, P256).coeffs == [mpf(1), mpf(1), mpf("0.5")]
        assert exp_series(F(1, 2), 3, P256).coeffs == [mpf(1), mpf("0.5"), mpf("0.125")]
        assert exp_series(F(0), 3, P256).coeffs == [mpf(1), mpf(0), mpf(0)]

    def test_mul_and_reciprocal_roundtrip(self):
        with mp.workprec(P256.working):
            a = exp_series(F(1), 10, P256)
            prod = a * a.reciprocal()
            assert abs(prod.coeffs[0] - 1) < TOL70
            assert all(abs(c) < TOL70 for c in prod.coeffs[1:])

    def test_divide_matches_mul_by_reciprocal(self):
        with mp.workprec(P256.working):
            a = exp_series(F(1, 3), 9, P256)
            b = constant_series(mpf(4), 9) - exp_series(F(1), 9, P256)
            q1 = a.divide(b)
            q2 = a * b.reciprocal()
            assert all(abs(x - y) < TOL70 for x, y in zip(q1.coeffs, q2.coeffs))

    def test_sqrt_squares_back_order_12(self):
        # A = 4 - z e^t at z = 2
        with mp.workprec(P256.working):
            A = constant_series(mpf(4), 12) - exp_series(F(1), 12, P256).scale(2)
            sq = A.sqrt()
            back = sq * sq
            assert all(abs(x - y) < TOL70 for x, y in zip(back.coeffs, A.coeffs))

    def test_sqrt_requires_positive_constant(self):
        with pytest.raises(DomainError):
            (constant_series(mpf(0), 4)).sqrt()
        with pytest.raises(DomainError):
            (constant_series(mpf(-1), 4)).sqrt()

    def test_reciprocal_requires_nonzero_constant(self):
        with pytest.raises(DomainError):
            constant_series(mpf(0), 4).reciprocal()

    def test_ulp_budget_accumulates(self):
        a = exp_series(F(1), 6, P256)
        assert (a * a).ulps == a.ulps * 2 + 4
        assert (a + a).ulps == a.ulps * 2 + 4


class TestArcsinSeries:
    def test_maclaurin_of_t(self):
        # asin t = sum (2m)! / (4^m (m!)^2 (2m+1)) t^(2m+1)
        u = TaylorSeries([mpf(0), mpf(1)], order=8)
        with mp.workprec(P256.working):
            got = arcsin_series(u, P256)
            for m in range(4):
                c = F(math.factorial(2 * m), 4**m * math.factorial(m) ** 2 * (2 * m + 1))
                assert abs(got.coeffs[2 * m + 1] - frac_mpf(c)) < TOL70, m
                if 2 * m < got.order:
                    assert abs(got.coeffs[2 * m]) < TOL70

    def test_constant_series(self):
        u = constant_series(mpf("0.5"), 4)
        got = arcsin_series(u, P256)
        with mp.workprec(P256.working):
            assert abs(got.coeffs[0] - mpmath.asin(mpf("0.5"))) < TOL70
        assert all(c == 0 for c in got.coeffs[1:])

    def test_defining_identity(self):
        # d/dt asin(u) * sqrt(1 - u^2) = u'
        rng = random.Random(99)
        with mp.workprec(P256.working):
            coeffs = [mpf(rng.randrange(-500, 500)) / 1000 for _ in range(9)]
            coeffs[0] = mpf("0.3")
            u = TaylorSeries(coeffs, order=9)
            lhs = arcsin_series(u, P256).differentiate() * (
                constant_series(mpf(1), 9) - u * u
            ).sqrt()
            rhs = u.differentiate()
            assert all(abs(x - y) < mpf(10) ** -60 for x, y in zip(lhs.coeffs, rhs.coeffs))

    def test_domain(self):
        with pytest.raises(DomainError):
            arcsin_series(constant_series(mpf(1), 3), P256)
        with pytest.raises(DomainError):
            arcsin_series(constant_series(mpf("-1.5"), 3), P256)


class TestGeneratingFunctions:
    def test_arcsin_coeff_anchors_z2(self):
        got = egf_arcsin_coeffs(F(2), 2, P256)
        for v, expected in zip(got, (2, 4, 14)):
            assert abs(v - expected) < TOL70

    def test_rational_anchors_z2(self):
        got = egf_rational_coeffs(F(2), 2, P256)
        for v, expected in zip(got, (1, 3, 11)):
            assert abs(v - expected) < TOL70

    def test_anchors_z1(self):
        r1 = egf_rational_coeffs(F(1), 1, P256)
        r2 = egf_arcsin_coeffs(F(1), 1, P256)
        with mp.workprec(P256.working):
            assert abs(r1[0] - frac_mpf(F(1, 3))) < TOL70
            assert abs(r1[1] - frac_mpf(F(2, 3))) < TOL70
            assert abs(r2[0] - frac_mpf(F(4, 3))) < TOL70
            assert abs(r2[1] - frac_mpf(F(4, 3))) < TOL70

    def test_order_zero_entries_random_z(self):
        rng = random.Random(13)
        for _ in range(3):
            z = F(rng.randrange(1, 40), rng.randrange(10, 40))
            if not (0 < z < 4):
                continue
            with mp.workprec(P256.working):
                assert abs(egf_rational_coeffs(z, 0, P256)[0] - frac_mpf(z / (4 - z))) < TOL70
                assert abs(egf_arcsin_coeffs(z, 0, P256)[0] - frac_mpf(F(4) / (4 - z))) < TOL70

    def test_matches_exact_pair_to_1e30(self):
        tol = mpf(10) ** -30
        for z in (F(1), F(2)):
            r1s = egf_rational_coeffs(z, 10, P256)
            r2s = egf_arcsin_coeffs(z, 10, P256)
            with mp.workprec(P256.working):
                for k in range(11):
                    assert abs(r1s[k] - frac_mpf(rational_part(z, k))) < tol, (z, k)
                    assert abs(r2s[k] - frac_mpf(arcsin_coeff(z, k))) < tol, (z, k)

    def test_sum_coeffs_match_series_oracle(self):
        got = egf_sum_coeffs(F(2), 2, P256)
        tol = mpf(10) ** -30
        with mp.workprec(P256.working):
            for k in range(3):
                ref = sum_series(F(2), k, P256, "1e-50").value
                assert abs(got[k] - ref) < tol

    def test_decomposition_identity(self):
        for z in (F(1), F(2), F(3)):
            gs = egf_sum_coeffs(z, 10, P256)
            r1s = egf_rational_coeffs(z, 10, P256)
            r2s = egf_arcsin_coeffs(z, 10, P256)
            irr = irrational_factor(z, P256)
            with mp.workprec(P256.working):
                for k in range(11):
                    assert abs(gs[k] - (r1s[k] + r2s[k] * irr)) < mpf(10) ** -30, (z, k)

    def test_domain(self):
        with pytest.raises(DomainError):
            egf_sum_coeffs(F(4), 3, P256)


class TestPrintedRationalEgfForm:
    def test_acos_combination_reduces_to_arcsine_difference(self):
        """One-shot scalar check at (z, t) = (2, 1/10).

        The (8/pi)-weighted asin/acos cross terms collapse, via
        asin x + acos x = pi/2, to 4 (asin(sqrt(w)/2) - asin(sqrt(z)/2)); both
        forms must agree once the radical is read as sqrt(w)/(4-w)^(3/2).
        """
        with mp.workprec(320):
            z = mpf(2)
            w = z * mpmath.exp(mpf(1) / 10)
            radical = mpmath.sqrt(w) / (4 - w) ** mpf("1.5")
            th_t = mpmath.asin(mpmath.sqrt(w) / 2)
            th_0 = mpmath.asin(mpmath.sqrt(z) / 2)
            printed = w / (4 - w) + (8 / mpmath.pi) * radical * (
                th_t * mpmath.acos(mpmath.sqrt(z) / 2) - mpmath.acos(mpmath.sqrt(w) / 2) * th_0
            )
            simplified = w / (4 - w) + 4 * radical * (th_t - th_0)
            assert abs(printed - simplified) < mpf(10) ** -70
