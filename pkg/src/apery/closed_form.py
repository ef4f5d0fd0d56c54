"""Closed-form evaluation of S_k(z) = sum n^k z^n / C(2n, n).

For rational z in (0, 4) and integer k >= 0 the series value decomposes as

    S_k(z) = R1(z, k) + R2(z, k) * sqrt(z/(4-z)) * asin(sqrt(z)/2)

with R1, R2 exact rationals.  This module computes that pair exactly
(:func:`rational_part`, :func:`arcsin_coeff`), assembles the value to
arbitrary precision (:func:`sum_closed`), and provides the hypergeometric
special-value machinery behind it: a closed form for
2F1(-1/2, n; n+1/2; -X) and an independent derivative-contiguity iteration
for the same quantity, plus a classical z=1 evaluation due to Borwein and
Girgensohn used as a cross-check.

Empty sums (upper limit below lower limit) are 0 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

from .errors import DomainError
from .exact import beta_half, binomial, pochhammer_half, stirling2_row
from .precision import Precision, as_precision, irrational_factor

__all__ = [
    "ClosedForm",
    "closed_form",
    "rational_part",
    "rational_part_terms",
    "arcsin_coeff",
    "arcsin_coeff_terms",
    "sum_closed",
    "gauss_2f1_parts",
    "gauss_2f1_closed",
    "gauss_2f1_contiguous_parts",
    "gauss_2f1_contiguous",
    "sum_via_2f1",
    "sum_borwein_z1",
]


def _check_z(z) -> Fraction:
    z = Fraction(z)
    if not (0 < z < 4):
        raise DomainError(f"closed form requires rational z with 0 < z < 4, got {z}")
    return z


def _check_k(k: int) -> int:
    if k < 0:
        raise DomainError(f"closed form requires k >= 0, got {k}")
    return k


# ---------------------------------------------------------------------------
# Exact rational pair (R1, R2)
# ---------------------------------------------------------------------------

def arcsin_coeff_terms(z, k: int) -> list[Fraction]:
    """Per-n contributions to R2(z, k), n = 1 .. k+1.

    R2(z,k) = sum_n n! S(k+1,n) X^n * sum_{p=0}^{n-1} (-1)^p (1/2)_p/(p+1)!
              * C(n-1,p) (4/z)^{p+1},   X = z/(4-z).
    """
    z = _check_z(z)
    k = _check_k(k)
    X = z / (4 - z)
    four_over_z = 4 / z
    stirl = stirling2_row(k + 1)
    terms = []
    for n in range(1, k + 2):
        inner = Fraction(0)
        for p in range(n):
            inner += (
                Fraction((-1) ** p)
                * pochhammer_half(p)
                / math.factorial(p + 1)
                * binomial(n - 1, p)
                * four_over_z ** (p + 1)
            )
        terms.append(math.factorial(n) * stirl[n] * X**n * inner)
    return terms


def arcsin_coeff(z, k: int) -> Fraction:
    """R2(z, k): the exact rational coefficient of the arcsine factor."""
    return sum(arcsin_coeff_terms(z, k), Fraction(0))


def rational_part_terms(z, k: int) -> list[Fraction]:
    """Per-n contributions to R1(z, k), n = 1 .. k+1.

    R1(z,k) = sum_n n! S(k+1,n) X^n * ( 1/n
              - 1/2 sum_{p=1}^{n-1} sum_{l=1}^{p} (-1)^p (1/2)_p
                / ((p+1)! (1/2)_l) * C(n-1,p) (l-1)! (4/z)^{p-l+1} ).
    """
    z = _check_z(z)
    k = _check_k(k)
    X = z / (4 - z)
    four_over_z = 4 / z
    stirl = stirling2_row(k + 1)
    terms = []
    for n in range(1, k + 2):
        corr = Fraction(0)
        for p in range(1, n):
            cp = Fraction((-1) ** p) * pochhammer_half(p) / math.factorial(p + 1) * binomial(n - 1, p)
            for l in range(1, p + 1):
                corr += cp * math.factorial(l - 1) / pochhammer_half(l) * four_over_z ** (p - l + 1)
        terms.append(math.factorial(n) * stirl[n] * X**n * (Fraction(1, n) - corr / 2))
    return terms


def rational_part(z, k: int) -> Fraction:
    """R1(z, k): the exact rational part of the series value."""
    return sum(rational_part_terms(z, k), Fraction(0))


@dataclass(frozen=True)
class ClosedForm:
    """The exact decomposition of one series value S_k(z)."""

    z: Fraction
    k: int
    r1: Fraction
    r2: Fraction

    @property
    def x(self) -> Fraction:
        """The singularity-distance variable z/(4-z)."""
        return self.z / (4 - self.z)

    def ratio(self) -> Fraction:
        return self.r1 / self.r2

    def value(self, prec: Union[Precision, int]) -> mpf:
        """r1 + r2 * irrational_factor(z) at the requested precision."""
        prec = as_precision(prec)
        with mp.workprec(prec.working):
            v = (
                mpf(self.r1.numerator) / self.r1.denominator
                + (mpf(self.r2.numerator) / self.r2.denominator)
                * irrational_factor(self.z, Precision(prec.working, 16))
            )
        with mp.workprec(prec.bits):
            return +v


def closed_form(z, k: int) -> ClosedForm:
    z = _check_z(z)
    k = _check_k(k)
    return ClosedForm(z=z, k=k, r1=rational_part(z, k), r2=arcsin_coeff(z, k))


def sum_closed(z, k: int, prec: Union[Precision, int]) -> mpf:
    """S_k(z) assembled from the exact pair, within 16 ulp."""
    return closed_form(z, k).value(prec)


# ---------------------------------------------------------------------------
# 2F1(-1/2, n; n+1/2; -X): closed form
# ---------------------------------------------------------------------------

def gauss_2f1_parts(n: int, X) -> tuple[Fraction, Fraction]:
    """Exact split 2F1(-1/2, n; n+1/2; -X) = A + B * asin(sqrt(X/(1+X))) / sqrt(X).

    Both A and B are rationals for rational X > 0.  The closed form sums,
    for p = 0 .. n-1, terms c_p ((X+1)/X)^{p+1} against the arcsine and the
    rational tail d_p = sum_{l=1}^{p} (l-1)!/(1/2)_l (X/(X+1))^l.
    """
    if n < 1:
        raise DomainError(f"gauss_2f1 requires n >= 1, got {n}")
    X = Fraction(X)
    if X < 0:
        raise DomainError(f"gauss_2f1 requires X >= 0 (real branch), got {X}")
    if X == 0:
        return Fraction(1), Fraction(0)
    Y = (X + 1) / X
    ratio = X / (X + 1)
    sum_b = Fraction(0)
    sum_a = Fraction(0)
    for p in range(n):
        cp = Fraction((-1) ** p) * pochhammer_half(p) / math.factorial(p + 1) * binomial(n - 1, p)
        d = Fraction(0)
        for l in range(1, p + 1):
            d += Fraction(math.factorial(l - 1)) / pochhammer_half(l) * ratio**l
        sum_b += cp * Y ** (p + 1)
        sum_a += cp * Y ** (p + 1) * d
    pn = pochhammer_half(n)
    A = pn * (Fraction(1, math.factorial(n)) - sum_a / (2 * math.factorial(n - 1)))
    # the arcsine enters as sqrt(X)*asin(...); rebase onto asin(...)/sqrt(X)
    B = pn / math.factorial(n - 1) * sum_b * X
    return A, B


def _asin_over_sqrt(X: Fraction) -> mpf:
    """asin(sqrt(X/(1+X))) / sqrt(X) at the ambient working precision."""
    Xm = mpf(X.numerator) / X.denominator
    return mpmath.asin(mpmath.sqrt(Xm / (1 + Xm))) / mpmath.sqrt(Xm)


def _assemble_parts(A: Fraction, B: Fraction, X: Fraction, prec: Precision) -> mpf:
    """Round A + B * asin(sqrt(X/(1+X)))/sqrt(X) to the target precision."""
    if B == 0:
        with mp.workprec(prec.bits):
            return mpf(A.numerator) / A.denominator
    with mp.workprec(prec.working):
        v = mpf(A.numerator) / A.denominator + (mpf(B.numerator) / B.denominator) * _asin_over_sqrt(X)
    with mp.workprec(prec.bits):
        return +v


def gauss_2f1_closed(n: int, X, prec: Union[Precision, int]) -> mpf:
    """2F1(-1/2, n; n+1/2; -X) by the explicit closed form."""
    prec = as_precision(prec)
    X = Fraction(X)
    A, B = gauss_2f1_parts(n, X)
    return _assemble_parts(A, B, X, prec)


# ---------------------------------------------------------------------------
# 2F1(-1/2, n; n+1/2; -X): derivative-contiguity iteration
#
# Carried symbolically as A(X) + B(X) * phi with phi = asin(sqrt(X/(1+X)))/sqrt(X),
# where A, B are rational functions whose denominators stay of the form
# X^a (1+X)^b.  phi satisfies  phi' = 1/(2X(1+X)) - phi/(2X),  so one
# differentiation step is exact rational-function algebra.
# ---------------------------------------------------------------------------

_POLY_X = (Fraction(0), Fraction(1))
_POLY_1X = (Fraction(1), Fraction(1))


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    )


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def _pscale(p, c):
    return tuple(a * c for a in p)


def _pdiff(p):
    return tuple(p[i] * i for i in range(1, len(p))) or (Fraction(0),)


class _RatFunc:
    """P(X) / (X^a (1+X)^b) with Fraction coefficients."""

    __slots__ = ("p", "a", "b")

    def __init__(self, p, a=0, b=0):
        p = list(p)
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        while a > 0 and len(p) > 1 and p[0] == 0:
            p = p[1:]
            a -= 1
        self.p, self.a, self.b = tuple(p), a, b

    def _aligned(self, other):
        a, b = max(self.a, other.a), max(self.b, other.b)

        def lift(r):
            p = r.p
            for _ in range(a - r.a):
                p = _pmul(p, _POLY_X)
            for _ in range(b - r.b):
                p = _pmul(p, _POLY_1X)
            return p

        return lift(self), lift(other), a, b

    def __add__(self, other):
        p, q, a, b = self._aligned(other)
        return _RatFunc(_padd(p, q), a, b)

    def scale(self, c):
        return _RatFunc(_pscale(self.p, c), self.a, self.b)

    def div_x(self):
        return _RatFunc(self.p, self.a + 1, self.b)

    def mul_1px(self):
        if self.b > 0:
            return _RatFunc(self.p, self.a, self.b - 1)
        return _RatFunc(_pmul(self.p, _POLY_1X), self.a, self.b)

    def deriv(self):
        # (P / X^a(1+X)^b)' = [P' X(1+X) - P (a(1+X) + bX)] / (X^{a+1} (1+X)^{b+1})
        t1 = _pmul(_pdiff(self.p), _pmul(_POLY_X, _POLY_1X))
        t2 = _pmul(self.p, _padd(_pscale(_POLY_1X, Fraction(self.a)), _pscale(_POLY_X, Fraction(self.b))))
        return _RatFunc(_padd(t1, _pscale(t2, Fraction(-1))), self.a + 1, self.b + 1)

    def at(self, x: Fraction) -> Fraction:
        num = Fraction(0)
        for c in reversed(self.p):
            num = num * x + c
        return num / (x**self.a * (1 + x) ** self.b)


def gauss_2f1_contiguous_parts(n: int, X) -> tuple[Fraction, Fraction]:
    """Same split as :func:`gauss_2f1_parts`, by iterating the derivative relation.

    Starts from the tabulated base value
        2F1(-1/2, 1; 3/2; -X) = 1/2 + (1+X)/2 * phi
    and applies, for m = 1 .. n-1,
        2F1(-1/2, m+1; m+3/2; -X)
            = (2m+1)/(2m(m+1)) * (1+X)^{1-m} * d/dX [ (1+X)^m 2F1(-1/2, m; m+1/2; -X) ],
    differentiating the (A, B) pair term-wise.  All algebra is exact; the
    single transcendental phi is substituted only at the end by the caller.
    """
    if n < 1:
        raise DomainError(f"gauss_2f1 requires n >= 1, got {n}")
    X = Fraction(X)
    if X < 0:
        raise DomainError(f"gauss_2f1 requires X >= 0 (real branch), got {X}")
    if X == 0:
        return Fraction(1), Fraction(0)
    alpha = _RatFunc((Fraction(1, 2),))
    beta = _RatFunc((Fraction(1, 2), Fraction(1, 2)))
    for m in range(1, n):
        c = Fraction(2 * m + 1, 2 * m * (m + 1))
        # d/dX[(1+X)^m (alpha + beta phi)] * (1+X)^{1-m}, using phi' above
        new_alpha = alpha.scale(Fraction(m)) + alpha.deriv().mul_1px() + beta.div_x().scale(Fraction(1, 2))
        new_beta = beta.scale(Fraction(m)) + beta.deriv().mul_1px() + beta.mul_1px().div_x().scale(Fraction(-1, 2))
        alpha, beta = new_alpha.scale(c), new_beta.scale(c)
    return alpha.at(X), beta.at(X)


def gauss_2f1_contiguous(n: int, X, prec: Union[Precision, int]) -> mpf:
    """2F1(-1/2, n; n+1/2; -X) by contiguity iteration; independent of the closed form."""
    prec = as_precision(prec)
    X = Fraction(X)
    A, B = gauss_2f1_contiguous_parts(n, X)
    return _assemble_parts(A, B, X, prec)


# ---------------------------------------------------------------------------
# Third path: hypergeometric expansion of the full sum
# ---------------------------------------------------------------------------

def sum_via_2f1(z, k: int, prec: Union[Precision, int]) -> mpf:
    """S_k(z) = sum_{n=1}^{k+1} n! B(n,1/2) S(k+1,n) X^n 2F1(-1/2,n;n+1/2;-X)."""
    z = _check_z(z)
    k = _check_k(k)
    prec = as_precision(prec)
    X = z / (4 - z)
    stirl = stirling2_row(k + 1)
    inner_prec = Precision(prec.working, 16)
    with mp.workprec(prec.working):
        total = mpf(0)
        for n in range(1, k + 2):
            w = math.factorial(n) * beta_half(n) * stirl[n] * X**n
            total += (mpf(w.numerator) / w.denominator) * gauss_2f1_closed(n, X, inner_prec)
    with mp.workprec(prec.bits):
        return +total


# ---------------------------------------------------------------------------
# Classical z = 1 evaluation (Borwein / Girgensohn)
# ---------------------------------------------------------------------------

def sum_borwein_z1(k: int, prec: Union[Precision, int]) -> mpf:
    """S_k(1) by the Borwein-Girgensohn formula; an independent z=1 route.

        S_k(1) = (1/2)(-1)^{k+1} sum_{j=1}^{k+1} (-1)^j j! S(k+1,j) 3^{-j} C(2j,j)
                 * ( sum_{i=0}^{j-1} 3^i / ((2i+1) C(2i,i))  +  2 pi / (3 sqrt 3) )

    The inner sum starts at i = 0 (its first term is 1); the Stirling factor
    carries the target index k.  Certified against :func:`sum_closed` in the
    verification suite.
    """
    k = _check_k(k)
    prec = as_precision(prec)
    stirl = stirling2_row(k + 1)
    with mp.workprec(prec.working):
        c = 2 * mpmath.pi / (3 * mpmath.sqrt(3))
        total = mpf(0)
        inner = Fraction(0)
        for j in range(1, k + 2):
            i = j - 1
            inner += Fraction(3**i, (2 * i + 1) * binomial(2 * i, i))
            w = (
                Fraction((-1) ** j)
                * math.factorial(j)
                * stirl[j]
                * Fraction(1, 3**j)
                * binomial(2 * j, j)
            )
            total += (mpf(w.numerator) / w.denominator) * (mpf(inner.numerator) / inner.denominator + c)
        sign = 1 if (k + 1) % 2 == 0 else -1
        v = sign * total / 2
    with mp.workprec(prec.bits):
        return +v
