"""Exact combinatorics against independent oracles.

The Stirling oracle is the alternating binomial sum, the binomial oracle a
Pascal triangle, the Bell numbers come from the Peirce triangle; all are
rebuilt here rather than imported so the recurrences under test share no
code with their references.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery import (
    DomainError,
    beta_half,
    binomial,
    central_binomial,
    format_rational,
    parse_rational,
    pochhammer,
    pochhammer_half,
    stirling2,
    stirling2_row,
)

F = Fraction


def stirling_alternating_sum(k, j):
    # (-1)^j / j! * sum_m (-1)^m m^k C(j, m); 0**0 == 1 keeps the k=0 row right
    acc = 0
    for m in range(j + 1):
        acc += (-1) ** m * m**k * math.comb(j, m)
    return F((-1) ** j * acc, math.factorial(j))


def pascal_triangle(rows):
    tri = [[1]]
    for n in range(1, rows):
        prev = tri[-1]
        tri.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return tri


class TestStirling:
    @pytest.mark.parametrize("k,j,expected", [(1, 1, 1), (4, 2, 7), (7, 7, 1), (3, 2, 3)])
    def test_examples(self, k, j, expected):
        assert stirling2(k, j) == expected

    def test_matches_alternating_sum_up_to_20(self):
        for k in range(21):
            for j in range(k + 1):
                assert stirling2(k, j) == stirling_alternating_sum(k, j), (k, j)

    def test_out_of_triangle_and_domain(self):
        assert stirling2(3, 5) == 0
        assert stirling2(5, 0) == 0
        assert stirling2(0, 0) == 1
        with pytest.raises(DomainError):
            stirling2(-1, 0)

    def test_row_sums_are_bell_numbers(self):
        bell = [1]
        cur = [1]
        for _ in range(15):
            nxt = [cur[-1]]
            for v in cur:
                nxt.append(nxt[-1] + v)
            cur = nxt
            bell.append(cur[0])
        for k in range(16):
            assert sum(stirling2_row(k)) == bell[k]


class TestBinomial:
    @pytest.mark.parametrize("n,m,expected", [(4, 2, 6), (0, 0, 1), (10, 5, 252)])
    def test_examples(self, n, m, expected):
        assert binomial(n, m) == expected

    def test_against_pascal_triangle(self):
        tri = pascal_triangle(41)
        for n in range(41):
            for m in range(n + 1):
                assert binomial(n, m) == tri[n][m]

    def test_outside_range_is_zero(self):
        assert binomial(5, -1) == 0
        assert binomial(5, 6) == 0

    @given(st.integers(min_value=1, max_value=40), st.data())
    @settings(max_examples=60, deadline=None)
    def test_pascal_identity(self, n, data):
        m = data.draw(st.integers(min_value=1, max_value=n - 1)) if n > 1 else 0
        assert binomial(n, m) == binomial(n - 1, m - 1) + binomial(n - 1, m)

    def test_central(self):
        assert central_binomial(0) == 1
        assert central_binomial(5) == 252
        assert central_binomial(10) == binomial(20, 10)


class TestPochhammer:
    @pytest.mark.parametrize("p,expected", [(0, F(1)), (1, F(1, 2)), (2, F(3, 4))])
    def test_half_examples(self, p, expected):
        assert pochhammer_half(p) == expected

    @given(st.integers(min_value=0, max_value=60))
    @settings(max_examples=60, deadline=None)
    def test_half_recurrence(self, p):
        assert pochhammer_half(p + 1) == pochhammer_half(p) * (F(1, 2) + p)

    def test_general(self):
        assert pochhammer(F(3, 2), 3) == F(3, 2) * F(5, 2) * F(7, 2)
        assert pochhammer(F(2), 4) == 2 * 3 * 4 * 5


class TestBetaHalf:
    @pytest.mark.parametrize("n,expected", [(1, F(2)), (2, F(4, 3)), (3, F(16, 15))])
    def test_examples(self, n, expected):
        assert beta_half(n) == expected

    def test_pole_at_zero(self):
        with pytest.raises(DomainError):
            beta_half(0)

    def test_inverse_central_binomial_identity(self):
        # 1/(n C(2n,n)) is the beta value B(n, n+1) = (n-1)! n! / (2n)!
        for n in range(1, 31):
            lhs = F(1, n * binomial(2 * n, n))
            rhs = F(math.factorial(n - 1)) * math.factorial(n) / math.factorial(2 * n)
            assert lhs == rhs


class TestRationalStrings:
    @pytest.mark.parametrize(
        "text,expected",
        [("3/4", F(3, 4)), ("-7/2", F(-7, 2)), ("5", F(5)), (" 2/6 ", F(1, 3))],
    )
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    def test_parse_rejects_garbage(self):
        for bad in ("", "a/b", "1/0", "1.5"):
            with pytest.raises((ValueError, ZeroDivisionError)):
                parse_rational(bad)

    @given(st.integers(min_value=-(10**9), max_value=10**9),
           st.integers(min_value=1, max_value=10**9))
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, p, q):
        x = F(p, q)
        assert parse_rational(format_rational(x)) == x

    def test_integer_form(self):
        assert format_rational(F(10, 2)) == "5"
        assert format_rational(F(3, 4)) == "3/4"
