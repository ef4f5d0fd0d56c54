"""Closed-form pair and hypergeometric machinery against independent routes.

Oracles: a literal-term hypergeometric summation with a geometric tail
bound (exact rationals, |X| < 1), mpmath's own hyp2f1 engine for X >= 1,
and anchor values assembled from the frozen-pi identities (3 + pi etc.).
The contiguity iteration and the explicit closed form must agree exactly
as rational pairs, not only numerically.
"""

import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from apery import (
    ClosedForm,
    DomainError,
    Precision,
    arcsin_coeff,
    arcsin_coeff_terms,
    closed_form,
    gauss_2f1_closed,
    gauss_2f1_contiguous,
    gauss_2f1_contiguous_parts,
    gauss_2f1_parts,
    pi,
    rational_part,
    rational_part_terms,
    sqrt,
    sum_borwein_z1,
    sum_closed,
    sum_via_2f1,
    ulps_apart,
)

F = Fraction
P256 = Precision(256)


def f21_series_oracle(n: int, X: Fraction, terms: int = 400):
    """Partial sum of 2F1(-1/2, n; n+1/2; -X) plus a sound geometric tail bound.

    Term ratio magnitude is X (m - 1/2)(m + n) / ((m + n + 1/2)(m + 1)), which
    for m >= terms is below q = X (terms + n) / (terms + 1); needs q < 1.
    """
    acc = F(0)
    term = F(1)
    a, b, c = F(-1, 2), F(n), F(n) + F(1, 2)
    for m in range(terms):
        acc += term
        term *= (a + m) * (b + m) / ((c + m) * (m + 1)) * (-X)
    q = X * (terms + n) / (terms + 1)
    assert q < 1
    tail = abs(term) / (1 - q)
    return acc, tail


class TestAnchors:
    @pytest.mark.parametrize(
        "z,k,r1,r2",
        [
            (F(2), 0, F(1), F(2)),
            (F(2), 1, F(3), F(4)),
            (F(2), 2, F(11), F(14)),
            (F(1), 1, F(2, 3), F(4, 3)),
        ],
    )
    def test_exact_pairs(self, z, k, r1, r2):
        assert rational_part(z, k) == r1
        assert arcsin_coeff(z, k) == r2

    def test_order_zero_closed_forms(self):
        rng = random.Random(41)
        for _ in range(20):
            z = F(rng.randrange(1, 400), rng.randrange(1, 400))
            if not (0 < z < 4):
                continue
            assert rational_part(z, 0) == z / (4 - z)
            assert arcsin_coeff(z, 0) == 4 / (4 - z)

    def test_z2_pairs_are_integers_up_to_30(self):
        for k in range(31):
            assert rational_part(F(2), k).denominator == 1, k
            assert arcsin_coeff(F(2), k).denominator == 1, k

    def test_summation_order_independence(self):
        rng = random.Random(5)
        for z, k in ((F(2), 9), (F(1, 3), 7), (F(7, 2), 8)):
            for terms_of in (rational_part_terms, arcsin_coeff_terms):
                terms = terms_of(z, k)
                shuffled = terms[:]
                rng.shuffle(shuffled)
                total = sum(terms, F(0))
                assert sum(reversed(terms), F(0)) == total
                assert sum(shuffled, F(0)) == total

    @pytest.mark.parametrize("z", [F(0), F(4), F(-1), F(17, 4)])
    def test_domain_z(self, z):
        with pytest.raises(DomainError):
            rational_part(z, 1)
        with pytest.raises(DomainError):
            sum_closed(z, 1, P256)

    def test_domain_k(self):
        with pytest.raises(DomainError):
            arcsin_coeff(F(2), -1)


class TestSumClosed:
    def test_values_against_pi_identities(self):
        with mp.workprec(P256.working):
            pi_v = pi(P256)
            cases = [
                (F(2), 0, 1 + pi_v / 2),
                (F(2), 1, 3 + pi_v),
                (F(2), 2, 11 + 7 * pi_v / 2),
                (F(1), 0, mpf(1) / 3 + 2 * pi_v / (9 * sqrt(3, P256))),
                (F(1), 1, mpf(2) / 3 + 2 * pi_v / (9 * sqrt(3, P256))),
            ]
            for z, k, target in cases:
                assert ulps_apart(sum_closed(z, k, P256), target, 256) <= 16, (z, k)

    def test_closed_form_object(self):
        cf = closed_form(F(2), 1)
        assert cf == ClosedForm(z=F(2), k=1, r1=F(3), r2=F(4))
        assert cf.x == F(1)
        assert cf.ratio() == F(3, 4)
        assert cf.value(P256) == sum_closed(F(2), 1, P256)

    def test_x_accessor(self):
        assert closed_form(F(1), 0).x == F(1, 3)


class TestGauss2F1:
    def test_base_value_x1(self):
        with mp.workprec(P256.working):
            target = mpf(1) / 2 + pi(P256) / 4
        assert ulps_apart(gauss_2f1_closed(1, F(1), P256), target, 256) <= 8

    def test_base_value_x3(self):
        # 1/2 (1 + 4 asin(sqrt(3)/2)/sqrt(3)) = 1/2 + 2 pi/(3 sqrt 3)
        with mp.workprec(P256.working):
            target = mpf(1) / 2 + 2 * pi(P256) / (3 * sqrt(3, P256))
            assert to_str_prefix(gauss_2f1_closed(1, F(3), P256)) == "1.70919957615614523"
            assert ulps_apart(gauss_2f1_closed(1, F(3), P256), target, 256) <= 8

    def test_argument_zero_is_one(self):
        for n in (1, 3, 6):
            assert gauss_2f1_closed(n, F(0), P256) == 1
            assert gauss_2f1_contiguous(n, F(0), P256) == 1

    def test_against_series_oracle_inside_unit_disk(self):
        for n in range(1, 9):
            for X in (F(1, 3), F(1, 2), F(4, 5)):
                acc, tail = f21_series_oracle(n, X)
                v = gauss_2f1_closed(n, X, P256)
                with mp.workprec(P256.working):
                    ref = mpf(acc.numerator) / acc.denominator
                    bound = mpf(tail.numerator) / tail.denominator + mpf(10) ** -70
                    assert abs(v - ref) <= bound, (n, X)

    def test_against_mpmath_engine_at_and_beyond_one(self):
        # mpmath evaluates 2F1 by its own transformations: an independent engine
        with mp.workprec(P256.working):
            for n in range(1, 9):
                for X in (F(1), F(3)):
                    ref = mpmath.hyp2f1(mpf(-1) / 2, n, n + mpf(1) / 2, -mpf(X.numerator) / X.denominator)
                    v = gauss_2f1_closed(n, X, P256)
                    assert abs(v - ref) < mpf(10) ** -70, (n, X)

    def test_contiguity_equals_closed_exactly(self):
        for n in range(1, 9):
            for X in (F(1), F(1, 3), F(3), F(2, 7)):
                assert gauss_2f1_parts(n, X) == gauss_2f1_contiguous_parts(n, X), (n, X)

    def test_contiguity_numeric_examples(self):
        with mp.workprec(P256.working):
            target = mpf(1) / 2 + pi(P256) / 4
        assert ulps_apart(gauss_2f1_contiguous(1, F(1), P256), target, 256) <= 8
        for n, X in ((2, F(1)), (3, F(1, 3))):
            a = gauss_2f1_contiguous(n, X, P256)
            b = gauss_2f1_closed(n, X, P256)
            assert ulps_apart(a, b, 256) <= 32

    def test_domain(self):
        with pytest.raises(DomainError):
            gauss_2f1_closed(0, F(1), P256)
        with pytest.raises(DomainError):
            gauss_2f1_closed(2, F(-1), P256)
        with pytest.raises(DomainError):
            gauss_2f1_contiguous(2, F(-1, 2), P256)


def to_str_prefix(x, digits=18):
    return mpmath.nstr(x, digits)


class TestThirdPath:
    @pytest.mark.parametrize("z,k", [(F(2), 0), (F(2), 1), (F(1), 2), (F(5, 2), 4), (F(1, 2), 3)])
    def test_matches_closed(self, z, k):
        a = sum_via_2f1(z, k, P256)
        b = sum_closed(z, k, P256)
        assert ulps_apart(a, b, 256) <= 64, (z, k)


class TestBorweinZ1:
    def test_value_k1(self):
        with mp.workprec(P256.working):
            target = mpf(2) / 3 + 2 * pi(P256) / (9 * sqrt(3, P256))
        assert ulps_apart(sum_borwein_z1(1, P256), target, 256) <= 16

    def test_matches_closed_k_up_to_10(self):
        with mp.workprec(P256.working):
            tol = mpf(10) ** -40
            for k in range(1, 11):
                d = abs(sum_borwein_z1(k, P256) - sum_closed(F(1), k, P256))
                assert d <= tol, k

    def test_k0_also_consistent(self):
        assert ulps_apart(sum_borwein_z1(0, P256), sum_closed(F(1), 0, P256), 250) <= 8
