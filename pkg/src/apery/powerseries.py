"""Truncated formal power series and the exponential generating functions.

The three series values S_k(z), R1(z, k), R2(z, k) are the k-th Taylor
coefficients (times k!) of

    G(z, t)    = w/(4-w) + 4 sqrt(w) (4-w)^(-3/2) asin(sqrt(w)/2)
    rho1(z, t) = w/(4-w) + 4 sqrt(w) (4-w)^(-3/2) (asin(sqrt(w)/2) - asin(sqrt(z)/2))
    rho2(z, t) = 4 sqrt((4-z) e^t) (4 - w)^(-3/2)

with w = z e^t.  Coefficients are extracted by exact formal-series
arithmetic (never divided differences, which are ill-conditioned past
order ~8).  Each series carries a coarse ulp budget: operand budgets add,
plus 4 per operation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, PrecisionError
from .precision import Precision, as_precision

__all__ = [
    "TaylorSeries",
    "constant_series",
    "exp_series",
    "arcsin_series",
    "egf_sum_coeffs",
    "egf_rational_coeffs",
    "egf_arcsin_coeffs",
]


class TaylorSeries:
    """A power series in t truncated at ``order`` (exclusive), mpf coefficients.

    Arithmetic assumes the ambient mpmath working precision has been set by
    the caller; the EGF helpers below take care of that.
    """

    __slots__ = ("coeffs", "order", "ulps")

    def __init__(self, coeffs, order: int | None = None, ulps: int = 0):
        coeffs = [mpf(c) if not isinstance(c, mpf) else c for c in coeffs]
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise DomainError(f"series order must be >= 1, got {order}")
        coeffs = coeffs[:order] + [mpf(0)] * (order - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        self.ulps = ulps

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        order = min(self.order, other.order)
        return TaylorSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(order)],
            order,
            self.ulps + other.ulps + 4,
        )

    def __sub__(self, other: "TaylorSeries") -> "TaylorSeries":
        order = min(self.order, other.order)
        return TaylorSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(order)],
            order,
            self.ulps + other.ulps + 4,
        )

    def __mul__(self, other: "TaylorSeries") -> "TaylorSeries":
        order = min(self.order, other.order)
        out = [mpf(0)] * order
        for i, a in enumerate(self.coeffs[:order]):
            if a == 0:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TaylorSeries(out, order, self.ulps + other.ulps + 4)

    def scale(self, c) -> "TaylorSeries":
        c = mpf(c) if not isinstance(c, mpf) else c
        return TaylorSeries([a * c for a in self.coeffs], self.order, self.ulps + 4)

    def differentiate(self) -> "TaylorSeries":
        if self.order == 1:
            return TaylorSeries([mpf(0)], 1, self.ulps + 4)
        return TaylorSeries(
            [self.coeffs[i] * i for i in range(1, self.order)],
            self.order - 1,
            self.ulps + 4,
        )

    def integrate(self) -> "TaylorSeries":
        """Antiderivative with zero constant term; order grows by one."""
        out = [mpf(0)] * (self.order + 1)
        for i in range(self.order):
            out[i + 1] = self.coeffs[i] / (i + 1)
        return TaylorSeries(out, self.order + 1, self.ulps + 4)

    def reciprocal(self) -> "TaylorSeries":
        if self.coeffs[0] == 0:
            raise DomainError("series reciprocal requires a nonzero constant term")
        out = [mpf(0)] * self.order
        out[0] = 1 / self.coeffs[0]
        for n in range(1, self.order):
            acc = mpf(0)
            for j in range(1, n + 1):
                acc += self.coeffs[j] * out[n - j]
            out[n] = -acc / self.coeffs[0]
        return TaylorSeries(out, self.order, self.ulps + 4)

    def divide(self, den: "TaylorSeries") -> "TaylorSeries":
        """self / den by long division (cheaper and tighter than mul-by-reciprocal)."""
        if den.coeffs[0] == 0:
            raise DomainError("series division requires a nonzero constant term in the divisor")
        order = min(self.order, den.order)
        out = [mpf(0)] * order
        for n in range(order):
            acc = self.coeffs[n]
            for j in range(1, n + 1):
                acc -= den.coeffs[j] * out[n - j]
            out[n] = acc / den.coeffs[0]
        return TaylorSeries(out, order, self.ulps + den.ulps + 4)

    def sqrt(self) -> "TaylorSeries":
        if not self.coeffs[0] > 0:
            raise DomainError("series sqrt requires a positive constant term")
        out = [mpf(0)] * self.order
        out[0] = mpmath.sqrt(self.coeffs[0])
        for n in range(1, self.order):
            acc = self.coeffs[n]
            for j in range(1, n):
                acc -= out[j] * out[n - j]
            out[n] = acc / (2 * out[0])
        return TaylorSeries(out, self.order, self.ulps + 4)


def constant_series(c, order: int) -> TaylorSeries:
    return TaylorSeries([c] + [mpf(0)] * (order - 1), order)


def exp_series(c: Fraction, order: int, prec: Union[Precision, int]) -> TaylorSeries:
    """The series of e^{c t}: coefficients c^j / j!, formed exactly then rounded."""
    prec = as_precision(prec)
    c = Fraction(c)
    with mp.workprec(prec.working):
        coeffs = []
        cur = Fraction(1)
        for j in range(order):
            coeffs.append(mpf(cur.numerator) / cur.denominator)
            cur = cur * c / (j + 1)
        return TaylorSeries(coeffs, order, ulps=1)


def arcsin_series(u: TaylorSeries, prec: Union[Precision, int]) -> TaylorSeries:
    """asin(u(t)) for a series with |u(0)| < 1.

    Composed as asin(u0) + integral of u' / sqrt(1 - u^2), which needs only
    closed series operations (no general composition).
    """
    prec = as_precision(prec)
    if not (-1 < u.coeffs[0] < 1):
        raise DomainError(f"arcsin_series requires |constant term| < 1, got {u.coeffs[0]}")
    with mp.workprec(prec.working):
        order = u.order
        one = constant_series(mpf(1), order)
        radicand = one - u * u
        if order > 1:
            integrand = u.differentiate().divide(radicand.sqrt())
            out = integrand.integrate()
            out = TaylorSeries(out.coeffs, order, out.ulps)
        else:
            out = constant_series(mpf(0), 1)
            out.ulps = u.ulps + 4
        out.coeffs[0] = mpmath.asin(u.coeffs[0])
        return out


# ---------------------------------------------------------------------------
# Generating-function coefficient extraction
# ---------------------------------------------------------------------------

def _check_z(z) -> Fraction:
    z = Fraction(z)
    if not (0 < z < 4):
        raise DomainError(f"generating functions require 0 < z < 4, got {z}")
    return z


def _budget_check(series: TaylorSeries, prec: Precision) -> None:
    """Reject results whose coarse rounding budget could touch the tolerance."""
    budget = mpf(series.ulps) * mpf(2) ** (1 - prec.working)
    if not budget < mpf(10) ** (-(prec.bits // 4)):
        raise PrecisionError(
            f"series ulp budget {series.ulps} too large at {prec.bits} bits; increase precision"
        )


def _scaled_coeffs(series: TaylorSeries, kmax: int, prec: Precision) -> list[mpf]:
    """k! * coefficient k for k = 0..kmax, rounded to the target precision."""
    with mp.workprec(prec.working):
        vals = [series.coeffs[k] * mpf(math.factorial(k)) for k in range(kmax + 1)]
    with mp.workprec(prec.bits):
        return [+v for v in vals]


def _common_pieces(z: Fraction, order: int, prec: Precision):
    """Shared series: w = z e^t, 4 - w, sqrt(w) and asin(sqrt(w)/2)."""
    ez = exp_series(Fraction(1), order, prec)
    with mp.workprec(prec.working):
        zm = mpf(z.numerator) / z.denominator
        w = ez.scale(zm)
        four_minus_w = constant_series(mpf(4), order) - w
        sqrt_w = exp_series(Fraction(1, 2), order, prec).scale(mpmath.sqrt(zm))
        u = sqrt_w.scale(mpf(1) / 2)
        theta = arcsin_series(u, prec)
    return w, four_minus_w, sqrt_w, theta


def egf_sum_coeffs(z, kmax: int, prec: Union[Precision, int]) -> list[mpf]:
    """[S_0(z), ..., S_kmax(z)] read off the Taylor coefficients of G(z, t)."""
    z = _check_z(z)
    prec = as_precision(prec)
    order = kmax + 1
    w, four_minus_w, sqrt_w, theta = _common_pieces(z, order, prec)
    with mp.workprec(prec.working):
        part1 = w.divide(four_minus_w)
        factor = sqrt_w.scale(mpf(4)).divide(four_minus_w * four_minus_w.sqrt())
        g = part1 + factor * theta
    _budget_check(g, prec)
    return _scaled_coeffs(g, kmax, prec)


def egf_rational_coeffs(z, kmax: int, prec: Union[Precision, int]) -> list[mpf]:
    """[R1(z, 0), ..., R1(z, kmax)] from the rational-part generating function.

    Uses the simplified form with the arcsine difference
    asin(sqrt(w)/2) - asin(sqrt(z)/2), whose bracket vanishes at t = 0.
    """
    z = _check_z(z)
    prec = as_precision(prec)
    order = kmax + 1
    w, four_minus_w, sqrt_w, theta = _common_pieces(z, order, prec)
    with mp.workprec(prec.working):
        theta_shifted = TaylorSeries(list(theta.coeffs), theta.order, theta.ulps + 4)
        theta_shifted.coeffs[0] = mpf(0)
        part1 = w.divide(four_minus_w)
        factor = sqrt_w.scale(mpf(4)).divide(four_minus_w * four_minus_w.sqrt())
        rho1 = part1 + factor * theta_shifted
    _budget_check(rho1, prec)
    return _scaled_coeffs(rho1, kmax, prec)


def egf_arcsin_coeffs(z, kmax: int, prec: Union[Precision, int]) -> list[mpf]:
    """[R2(z, 0), ..., R2(z, kmax)] from 4 sqrt((4-z) e^t) (4 - z e^t)^(-3/2)."""
    z = _check_z(z)
    prec = as_precision(prec)
    order = kmax + 1
    ez = exp_series(Fraction(1), order, prec)
    with mp.workprec(prec.working):
        zm = mpf(z.numerator) / z.denominator
        w = ez.scale(zm)
        four_minus_w = constant_series(mpf(4), order) - w
        numer = exp_series(Fraction(1, 2), order, prec).scale(4 * mpmath.sqrt(4 - zm))
        rho2 = numer.divide(four_minus_w * four_minus_w.sqrt())
    _budget_check(rho2, prec)
    return _scaled_coeffs(rho2, kmax, prec)
