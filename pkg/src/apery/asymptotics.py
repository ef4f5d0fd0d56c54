"""Large-k growth of the rational pair and the convergence-rate experiment.

Both R1(z, k) and R2(z, k) grow like Gamma(k + 3/2) / s0^(k + 3/2) with
s0 = ln(4/z), the distance to the nearest singularity of their generating
functions; the constants are acos(sqrt(z)/2) and sqrt((4-z)/z).  Their
ratio therefore tends to

    lim R1/R2 = sqrt(z/(4-z)) acos(sqrt(z)/2),

and the gap between the limit and the arcsine factor of the closed form,
sqrt(z/(4-z)) (acos - asin)(sqrt(z)/2), vanishes only at z = 2.  The
residuals |R1/R2 - limit| decay geometrically at the rate

    Q_z = sqrt(s0^2 + 4 pi^2) / s0

set by the next-nearest (complex) singularities s0 +/- 2 pi i; at z = 2
this is the classical rate Q = sqrt(1 + (2 pi / ln 2)^2) ~ 9.12 proved by
Dyson et al. for Lehmer's sequence.  The complex pair also makes the
residuals oscillate, so the rate fit regresses on a running-maximum
envelope (a plain fit is reported alongside).

A historical pair of estimates with a k-independent constant
(2/pi) sqrt(e/(e-1))-style prefactor is kept as the ``*_printed`` variants;
the exact-to-estimate ratio test shows they are off by an unbounded
sqrt(pi k / s0) sqrt((e-1)/e) factor, which the verification suite records.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

from .closed_form import arcsin_coeff, rational_part
from .errors import DomainError, PrecisionError
from .exact import pochhammer
from .precision import Precision, as_precision

__all__ = [
    "AsymRow",
    "RatioLimit",
    "ConvergenceReport",
    "arcsin_coeff_estimate",
    "rational_part_estimate",
    "arcsin_coeff_estimate_printed",
    "rational_part_estimate_printed",
    "ratio_limit",
    "dyson_rate",
    "dyson_rate_fit",
    "asym_rows",
    "residual",
]


def _check_z(z) -> Fraction:
    z = Fraction(z)
    if not (0 < z < 4):
        raise DomainError(f"asymptotics require 0 < z < 4, got {z}")
    return z


def _zm(z: Fraction) -> mpf:
    return mpf(z.numerator) / z.denominator


@dataclass(frozen=True)
class AsymRow:
    k: int
    exact: mpf
    estimate: mpf
    ratio: mpf  # exact / estimate


@dataclass(frozen=True)
class RatioLimit:
    """The limit of R1/R2 and its gap above the arcsine factor."""

    limit: mpf
    gap: mpf


@dataclass(frozen=True)
class ConvergenceReport:
    zvalue: Fraction
    rows: list  # (k, residual) pairs, residual = |R1/R2 - limit|
    fitted_rate: mpf  # envelope (running-maximum) fit
    fitted_rate_plain: mpf
    target_rate: mpf
    envelope_ks: list


def arcsin_coeff_estimate(z, k: int, prec: Union[Precision, int]) -> mpf:
    """Dominant-singularity estimate of R2(z, k).

        sqrt((4-z)/z) * (3/2)_k / s0^(k + 3/2),  s0 = ln(4/z).

    Relative error is O(s0/k); the exact-to-estimate ratio test pins it
    below 5% by k = 40 on 0 < z <= 3.
    """
    z = _check_z(z)
    if k < 1:
        raise DomainError(f"asymptotic estimates require k >= 1, got {k}")
    prec = as_precision(prec)
    g = pochhammer(Fraction(3, 2), k)
    with mp.workprec(prec.working):
        zm = _zm(z)
        s0 = mpmath.log(4 / zm)
        v = mpmath.sqrt((4 - zm) / zm) * (mpf(g.numerator) / g.denominator) / s0 ** (k + mpf(3) / 2)
    with mp.workprec(prec.bits):
        return +v


def rational_part_estimate(z, k: int, prec: Union[Precision, int]) -> mpf:
    """Dominant-singularity estimate of R1(z, k): acos(sqrt(z)/2) (3/2)_k / s0^(k+3/2)."""
    z = _check_z(z)
    if k < 1:
        raise DomainError(f"asymptotic estimates require k >= 1, got {k}")
    prec = as_precision(prec)
    g = pochhammer(Fraction(3, 2), k)
    with mp.workprec(prec.working):
        zm = _zm(z)
        s0 = mpmath.log(4 / zm)
        v = mpmath.acos(mpmath.sqrt(zm) / 2) * (mpf(g.numerator) / g.denominator) / s0 ** (k + mpf(3) / 2)
    with mp.workprec(prec.bits):
        return +v


def arcsin_coeff_estimate_printed(z, k: int, prec: Union[Precision, int]) -> mpf:
    """The historical R2 estimate k!/s0^(k+1) (2/pi) sqrt(e(4-z)/(z(e-1))).

    Kept for the record; underestimates the true growth by an unbounded
    factor (see module docstring).
    """
    z = _check_z(z)
    if k < 1:
        raise DomainError(f"asymptotic estimates require k >= 1, got {k}")
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        zm = _zm(z)
        s0 = mpmath.log(4 / zm)
        e = mpmath.e
        v = mpmath.factorial(k) / s0 ** (k + 1) * (2 / mpmath.pi) * mpmath.sqrt(e * (4 - zm) / (zm * (e - 1)))
    with mp.workprec(prec.bits):
        return +v


def rational_part_estimate_printed(z, k: int, prec: Union[Precision, int]) -> mpf:
    """The historical R1 estimate paired with the printed R2 form."""
    z = _check_z(z)
    if k < 1:
        raise DomainError(f"asymptotic estimates require k >= 1, got {k}")
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        zm = _zm(z)
        s0 = mpmath.log(4 / zm)
        e = mpmath.e
        root = mpmath.sqrt(e / (e - 1))
        const = (
            mpmath.sqrt(2)
            + (2 / mpmath.pi) * (root - mpmath.sqrt(2)) * mpmath.acos(mpmath.sqrt(zm) / 2)
            - (2 ** mpf("1.5") / mpmath.pi) * mpmath.asin(mpmath.sqrt(zm) / 2)
        )
        v = mpmath.factorial(k) / s0 ** (k + 1) * const
    with mp.workprec(prec.bits):
        return +v


def ratio_limit(z, prec: Union[Precision, int]) -> RatioLimit:
    """Limit of R1/R2 as k grows, and its gap above the arcsine factor.

    limit = sqrt(z/(4-z)) acos(sqrt(z)/2);
    gap   = limit - sqrt(z/(4-z)) asin(sqrt(z)/2), zero exactly at z = 2.
    """
    z = _check_z(z)
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        zm = _zm(z)
        root = mpmath.sqrt(zm / (4 - zm))
        half = mpmath.sqrt(zm) / 2
        limit = root * mpmath.acos(half)
        gap = root * (mpmath.acos(half) - mpmath.asin(half))
    with mp.workprec(prec.bits):
        return RatioLimit(limit=+limit, gap=+gap)


def dyson_rate(z, prec: Union[Precision, int]) -> mpf:
    """Target residual decay rate Q_z = sqrt(s0^2 + 4 pi^2) / s0.

    At z = 2 this is the proved rate sqrt(1 + (2 pi / ln 2)^2); for other z
    it extrapolates the same singularity-modulus argument and is labeled as
    such in reports.
    """
    z = _check_z(z)
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        s0 = mpmath.log(4 / _zm(z))
        v = mpmath.sqrt(s0 * s0 + 4 * mpmath.pi**2) / s0
    with mp.workprec(prec.bits):
        return +v


def asym_rows(z, ks, prec: Union[Precision, int], component: str = "arcsin") -> list[AsymRow]:
    """Exact-versus-estimate rows for a range of k."""
    z = _check_z(z)
    prec = as_precision(prec)
    exact_fn = arcsin_coeff if component == "arcsin" else rational_part
    est_fn = arcsin_coeff_estimate if component == "arcsin" else rational_part_estimate
    rows = []
    for k in ks:
        ex = exact_fn(z, k)
        est = est_fn(z, k, prec)
        with mp.workprec(prec.working):
            exm = mpf(ex.numerator) / ex.denominator
            ratio = exm / est
        with mp.workprec(prec.bits):
            rows.append(AsymRow(k=k, exact=+exm, estimate=est, ratio=+ratio))
    return rows


def residual(z, k: int, prec: Union[Precision, int]) -> mpf:
    """|R1(z,k)/R2(z,k) - lim R1/R2| at the requested precision."""
    z = _check_z(z)
    prec = as_precision(prec)
    q = rational_part(z, k) / arcsin_coeff(z, k)
    lim = ratio_limit(z, Precision(prec.working, 16)).limit
    with mp.workprec(prec.working):
        r = abs(mpf(q.numerator) / q.denominator - lim)
    with mp.workprec(prec.bits):
        return +r


def dyson_rate_fit(z, kmin: int, kmax: int, prec: Union[Precision, int]) -> ConvergenceReport:
    """Measure the residual decay rate of R1/R2 over k = kmin..kmax.

    Residuals are computed from the exact rational pair; the decay rate is
    e^(-slope) from least squares of ln(residual) on k.  Because the
    complex singularity pair makes residuals oscillate through near-zero
    dips, the headline fit regresses on the running maxima taken from the
    right (the decaying upper envelope); the plain fit is also reported.
    """
    z = _check_z(z)
    if kmin < 2 or kmax <= kmin:
        raise DomainError(f"rate fit requires 2 <= kmin < kmax, got ({kmin}, {kmax})")
    prec = as_precision(prec)
    ks = list(range(kmin, kmax + 1))
    residuals = []
    lim = ratio_limit(z, Precision(prec.working, 16)).limit
    with mp.workprec(prec.working):
        floor = mpf(2) ** (16 - prec.working)
        for k in ks:
            q = rational_part(z, k) / arcsin_coeff(z, k)
            r = abs(mpf(q.numerator) / q.denominator - lim)
            if r < floor:
                raise PrecisionError(
                    f"residual at k={k} is below the rounding floor at {prec.bits} bits; increase precision"
                )
            residuals.append(r)
        # decaying upper envelope: suffix running maxima
        env = [mpf(0)] * len(ks)
        run = residuals[-1]
        for i in range(len(ks) - 1, -1, -1):
            run = residuals[i] if residuals[i] > run else run
            env[i] = run
        xs = [float(k) for k in ks]
        slope_env, _ = statistics.linear_regression(xs, [float(mpmath.log(v)) for v in env])
        slope_plain, _ = statistics.linear_regression(xs, [float(mpmath.log(v)) for v in residuals])
        envelope_ks = [ks[i] for i in range(len(ks)) if residuals[i] == env[i]]
        fitted = mpmath.exp(-mpf(slope_env))
        fitted_plain = mpmath.exp(-mpf(slope_plain))
    target = dyson_rate(z, prec)
    with mp.workprec(prec.bits):
        rows = [(k, +r) for k, r in zip(ks, residuals)]
        return ConvergenceReport(
            zvalue=z,
            rows=rows,
            fitted_rate=+fitted,
            fitted_rate_plain=+fitted_plain,
            target_rate=target,
            envelope_ks=envelope_ks,
        )
