"""Exact integer and rational combinatorics.

Everything here is computed in unbounded integer / reduced-fraction
arithmetic (``int`` and ``fractions.Fraction``), so results are exact and
equality is structural.  These quantities feed the closed-form evaluation:
Stirling set-partition numbers, binomial coefficients, half-integer
Pochhammer symbols and the rational beta values B(n, 1/2).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "stirling2",
    "stirling2_row",
    "binomial",
    "central_binomial",
    "pochhammer",
    "pochhammer_half",
    "beta_half",
    "parse_rational",
    "format_rational",
]


def stirling2_row(k: int) -> list[int]:
    """Row ``k`` of the Stirling set-partition triangle, entries 0..k.

    Built bottom-up with S(k, j) = j*S(k-1, j) + S(k-1, j-1); no state is
    shared between calls.
    """
    if k < 0:
        raise DomainError(f"stirling2 row index must be >= 0, got {k}")
    row = [1]
    for _ in range(k):
        prev = row
        row = [0] * (len(prev) + 1)
        for j in range(1, len(row)):
            above = prev[j] if j < len(prev) else 0
            row[j] = j * above + prev[j - 1]
    return row


def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind S(k, j).

    Counts partitions of a k-element set into j nonempty blocks.  Computed
    by the triangular recurrence, which avoids the large cancellations of
    the equivalent alternating binomial sum.
    """
    if k < 0 or j < 0:
        raise DomainError(f"stirling2 arguments must be >= 0, got ({k}, {j})")
    if j > k:
        return 0
    return stirling2_row(k)[j]


def binomial(n: int, m: int) -> int:
    """Binomial coefficient C(n, m); zero when m < 0 or m > n."""
    if n < 0:
        raise DomainError(f"binomial upper index must be >= 0, got {n}")
    if m < 0 or m > n:
        return 0
    return math.comb(n, m)


def central_binomial(n: int) -> int:
    """C(2n, n), the growth scale that fixes the series' convergence radius."""
    return binomial(2 * n, n)


def pochhammer(a: Fraction, n: int) -> Fraction:
    """Ascending factorial (a)_n = a (a+1) ... (a+n-1); empty product is 1."""
    if n < 0:
        raise DomainError(f"pochhammer length must be >= 0, got {n}")
    out = Fraction(1)
    a = Fraction(a)
    for i in range(n):
        out *= a + i
    return out


def pochhammer_half(p: int) -> Fraction:
    """(1/2)_p as an exact rational."""
    return pochhammer(Fraction(1, 2), p)


def beta_half(n: int) -> Fraction:
    """Euler beta value B(n, 1/2) = (n-1)! / (1/2)_n, exact for integer n >= 1."""
    if n < 1:
        raise DomainError(f"beta_half requires n >= 1 (gamma pole at n=0), got {n}")
    return Fraction(math.factorial(n - 1)) / pochhammer_half(n)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a plain integer string into a reduced Fraction.

    Raises ValueError on malformed input (propagated from Fraction).
    """
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        return Fraction(int(num.strip()), int(den.strip()))
    return Fraction(int(s))


def format_rational(q: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
