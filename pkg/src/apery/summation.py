"""Independent ground truth by direct summation.

Implements plain term-by-term summation of sum n^k z^n / C(2n, n) with a
rigorous ratio-test tail bound (any integer k, |z| < 4), the finite
power-sum identity used to derive the closed form, the generalized
hypergeometric series attached to negative indices, and high-precision
quadrature of the moment integral

    L(alpha, beta, z) = int_0^1 dt/t (z t(1-t))^alpha / (1 - z t(1-t))^beta

together with its hypergeometric closed form.  These paths share no code
with the closed-form module beyond exact combinatorics, so agreement
between them certifies both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

from .closed_form import gauss_2f1_closed
from .errors import DivergenceError, DomainError, PrecisionError
from .exact import beta_half
from .precision import Precision, as_precision

__all__ = [
    "SeriesResult",
    "sum_series",
    "power_sum_closed",
    "pfq_neg_index",
    "moment_integral_quad",
    "moment_integral_closed",
]

_MAX_TERMS = 2_000_000


def _to_eps_fraction(eps) -> Fraction:
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, str):
        return Fraction(Decimal(eps))
    if isinstance(eps, (int, float)):
        return Fraction(eps)
    if isinstance(eps, mpf):
        p, q = mpmath.libmp.to_rational(eps._mpf_)
        return Fraction(p, q)
    raise TypeError(f"unsupported eps type: {type(eps)!r}")


@dataclass(frozen=True)
class SeriesResult:
    """A partial sum with a provable bound on the omitted tail.

    The true sum lies within tail_bound plus a rounding budget of
    terms_used * 4 ulp of ``value``.
    """

    value: mpf
    terms_used: int
    tail_bound: mpf


def _ratio_bound(z_abs: Fraction, k: int, n: int) -> Fraction:
    """Upper bound q(n) >= |t_{m+1}/t_m| for all m >= n, with q(n) -> |z|/4.

    The exact ratio is (|z|/4) ((m+1)/m)^k (2m+2)/(2m+1).  For k >= 0 both
    variable factors decrease in m, so q(n) is the ratio at m = n; for
    k < 0 the power factor is < 1 and the bound drops it.
    """
    base = z_abs / 4 * Fraction(2 * n + 2, 2 * n + 1)
    if k > 0:
        base *= Fraction(n + 1, n) ** k
    return base


def sum_series(z, k: int, prec: Union[Precision, int], eps=None) -> SeriesResult:
    """Direct summation of sum_{n>=1} n^k z^n / C(2n, n) until the tail is < eps.

    Works for any integer k (negative included) and rational |z| < 4.  Each
    term is formed exactly and rounded once into the working-precision
    accumulator; the tail bound is a geometric majorant |t_N| q/(1-q) with
    q an explicit ratio bound, so it is sound rather than sharp.

    Raises DivergenceError for |z| >= 4 and PrecisionError when eps is not
    reachable at the requested precision.
    """
    z = Fraction(z)
    prec = as_precision(prec)
    if abs(z) >= 4:
        raise DivergenceError(f"series diverges for |z| >= 4, got z = {z}")
    eps_fr = _to_eps_fraction(eps) if eps is not None else Fraction(1, 2 ** (prec.bits + 16))
    if eps_fr <= 0:
        raise DomainError(f"eps must be > 0, got {eps_fr}")
    if eps_fr < Fraction(1, 2 ** (prec.working + 64)):
        raise PrecisionError(
            f"eps = {eps_fr} is below the rounding floor at {prec.bits} bits; increase precision"
        )
    zero = mpf(0)
    if z == 0:
        return SeriesResult(value=zero, terms_used=0, tail_bound=zero)

    with mp.workprec(prec.working):
        total = mpf(0)
        central = 1  # C(2n, n), updated incrementally
        zpow = Fraction(1)
        n = 0
        while True:
            n += 1
            if n > _MAX_TERMS:
                raise PrecisionError(f"tail below {eps_fr} not reached within {_MAX_TERMS} terms")
            central = central * 2 * (2 * n - 1) // n
            zpow *= z
            if k >= 0:
                term = Fraction(n**k) * zpow / central
            else:
                term = zpow / (Fraction(n ** (-k)) * central)
            total += mpf(term.numerator) / term.denominator
            q = _ratio_bound(abs(z), k, n)
            if q < 1:
                tail = abs(term) * q / (1 - q)
                if tail < eps_fr:
                    break
        tail_mpf = mpf(tail.numerator) / tail.denominator
        # eps bounds the tail; accumulator rounding (terms_used * 4 ulp) is
        # budgeted separately, but eps below the accumulator's own rounding
        # scale cannot be honored at all
        floor = abs(total) * mpf(2) ** (16 - prec.working)
        if mpf(eps_fr.numerator) / eps_fr.denominator < floor:
            raise PrecisionError(
                f"eps = {mpmath.nstr(mpf(eps_fr.numerator) / eps_fr.denominator, 5)} is below the "
                f"rounding scale {mpmath.nstr(floor, 5)} at {prec.bits} bits; increase precision"
            )
    with mp.workprec(prec.bits):
        return SeriesResult(value=+total, terms_used=n, tail_bound=+tail_mpf)


def power_sum_closed(p_exp: int, X) -> Fraction:
    """Exact value of sum_{m>=1} m^p X^m via the finite double-sum identity.

        sum_{n=1}^{p} sum_{m=1}^{n} (-1)^{m+n} C(n,m) m^p X^n (1-X)^{-n-1}

    Valid for rational |X| < 1; exact rational arithmetic throughout.
    """
    if p_exp < 1:
        raise DomainError(f"power_sum_closed requires exponent >= 1, got {p_exp}")
    X = Fraction(X)
    if abs(X) >= 1:
        raise DomainError(f"power_sum_closed requires |X| < 1, got {X}")
    total = Fraction(0)
    for n in range(1, p_exp + 1):
        inner = Fraction(0)
        for m in range(1, n + 1):
            inner += Fraction((-1) ** (m + n)) * math.comb(n, m) * Fraction(m) ** p_exp
        total += inner * X**n / (1 - X) ** (n + 1)
    return total


def pfq_neg_index(k: int, z, prec: Union[Precision, int], eps=None) -> mpf:
    """The {k+1}F{k}(1,...,1; 3/2, 2,...,2; z/4) series by direct summation.

    Term m is (m!)^k / ((3/2)_m ((m+1)!)^{k-1}) (z/4)^m, built incrementally.
    Related to negative-index sums by 2 S_{-k}(z) = z * pfq_neg_index(k, z):
    the extra factor z is required for the identity to hold (verified
    numerically in the suite, where the z-free variant is also recorded).
    """
    if k < 1:
        raise DomainError(f"pfq_neg_index requires k >= 1, got {k}")
    z = Fraction(z)
    prec = as_precision(prec)
    if abs(z) >= 4:
        raise DivergenceError(f"hypergeometric argument |z/4| >= 1 diverges, got z = {z}")
    eps_fr = _to_eps_fraction(eps) if eps is not None else Fraction(1, 2 ** (prec.bits + 16))
    q = abs(z) / 4  # every term ratio is below |z|/4 (each extra factor is < 1)
    with mp.workprec(prec.working):
        total = mpf(0)
        term = Fraction(1)
        m = 0
        while True:
            total += mpf(term.numerator) / term.denominator
            if q > 0:
                tail = abs(term) * q / (1 - q)
                if tail < eps_fr:
                    break
            else:
                break
            if m > _MAX_TERMS:
                raise PrecisionError(f"pFq tail below {eps_fr} not reached within {_MAX_TERMS} terms")
            # t_{m+1}/t_m = (m+1)^k / ((m+3/2) (m+2)^{k-1}) * z/4
            term *= Fraction(m + 1) ** k / (Fraction(2 * m + 3, 2) * Fraction(m + 2) ** (k - 1)) * z / 4
            m += 1
    with mp.workprec(prec.bits):
        return +total


def moment_integral_quad(alpha, beta, z, prec: Union[Precision, int]) -> mpf:
    """L(alpha, beta, z) by quadrature, to absolute error <= 10^(-bits/4).

    The unit-interval substitution u = t(1-t) folds the integrand into

        2 (z/4)^(alpha-beta) int_0^1 (1-x^2)^(alpha-1) (a^2 + x^2)^(-beta) dx,

    a^2 = (4-z)/z, which is smooth inside (0, 1) with at worst an algebraic
    endpoint at x = 1; tanh-sinh quadrature handles that directly.  The
    returned value is rejected unless the quadrature error estimate meets
    the tolerance.
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    z = Fraction(z)
    prec = as_precision(prec)
    if alpha <= 0:
        raise DomainError(f"moment integral requires alpha > 0 for integrability, got {alpha}")
    if beta <= 0:
        raise DomainError(f"moment integral requires beta > 0, got {beta}")
    if not (0 < z < 4):
        raise DomainError(f"moment integral requires 0 < z < 4, got z = {z}")
    tol_exp = -(prec.bits // 4)
    maxdeg = max(10, prec.working.bit_length() + 2)

    def run(bits: int, degree: int) -> mpf:
        with mp.workprec(bits):
            zm = mpf(z.numerator) / z.denominator
            am = mpf(alpha.numerator) / alpha.denominator
            bm = mpf(beta.numerator) / beta.denominator
            a2 = (4 - zm) / zm
            pref = 2 * (zm / 4) ** (am - bm)

            def integrand(x):
                # (1-x)*(1+x) keeps full accuracy at the x -> 1 endpoint
                return ((1 - x) * (1 + x)) ** (am - 1) * (a2 + x * x) ** (-bm)

            return pref * mpmath.quad(integrand, [0, 1], maxdegree=degree)

    # endpoint absorption costs ~half the working bits when alpha < 1, so the
    # quadrature itself runs at twice the working precision; certify by
    # precision-plus-level doubling (the two runs must already agree)
    qbits = 2 * prec.working
    coarse = run(qbits, maxdeg)
    fine = run(qbits + 64, maxdeg + 1)
    with mp.workprec(prec.working + 64):
        tol = mpf(10) ** tol_exp
        err = abs(fine - coarse)
        if not err < tol:
            raise PrecisionError(
                f"quadrature runs disagree by {mpmath.nstr(err, 5)}, above tolerance 1e{tol_exp}"
            )
    with mp.workprec(prec.bits):
        return +fine


def moment_integral_closed(n: int, z, prec: Union[Precision, int]) -> mpf:
    """L(n, n+1, z) in closed form: B(n, 1/2) X^n 2F1(-1/2, n; n+1/2; -X)."""
    if n < 1:
        raise DomainError(f"moment_integral_closed requires integer n >= 1, got {n}")
    z = Fraction(z)
    if not (0 < z < 4):
        raise DomainError(f"moment integral requires 0 < z < 4, got z = {z}")
    prec = as_precision(prec)
    X = z / (4 - z)
    w = beta_half(n) * X**n
    with mp.workprec(prec.working):
        v = (mpf(w.numerator) / w.denominator) * gauss_2f1_closed(n, X, Precision(prec.working, 16))
    with mp.workprec(prec.bits):
        return +v
