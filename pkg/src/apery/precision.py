"""Arbitrary-precision real arithmetic with an explicit accuracy contract.

Values are ``mpmath.mpf`` floats.  Every operation takes a :class:`Precision`
(or a plain bit count), runs internally at ``bits + guard_bits`` and rounds
the result to ``bits``, so each primitive lands within 2 ulp of the true
value and composite expressions keep an additive, testable error budget.

The only shared state is mpmath's internal constant cache (pi, e, ln 2),
which is initialize-once / read-many.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

from .errors import DomainError

__all__ = [
    "Precision",
    "as_precision",
    "HPReal",
    "pi",
    "sqrt",
    "exp",
    "ln",
    "asin",
    "acos",
    "irrational_factor",
    "from_fraction",
    "to_decimal",
    "from_decimal",
    "default_digits",
    "ulps_apart",
]

HPReal = mpf  # semantic alias: a real carried at an explicit binary precision

MIN_BITS = 64


@dataclass(frozen=True)
class Precision:
    """Target precision in bits, plus guard bits used for intermediate work."""

    bits: int = 256
    guard_bits: int = 32

    def __post_init__(self) -> None:
        if self.bits < MIN_BITS:
            raise DomainError(f"precision must be >= {MIN_BITS} bits, got {self.bits}")
        if self.guard_bits < 0:
            raise DomainError(f"guard_bits must be >= 0, got {self.guard_bits}")

    @property
    def working(self) -> int:
        return self.bits + self.guard_bits


def as_precision(p: Union[Precision, int]) -> Precision:
    """Coerce an int bit count to a Precision."""
    if isinstance(p, Precision):
        return p
    return Precision(bits=int(p))


def _round_to(x: mpf, bits: int) -> mpf:
    with mp.workprec(bits):
        return +x


def _to_mpf(x) -> mpf:
    """Convert int/Fraction/str/mpf to mpf at the ambient working precision."""
    if isinstance(x, mpf):
        return x
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def pi(prec: Union[Precision, int]) -> mpf:
    """The constant pi, within 2 ulp at the requested precision."""
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        v = +mpmath.pi
    return _round_to(v, prec.bits)


def sqrt(x, prec: Union[Precision, int]) -> mpf:
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        xm = _to_mpf(x)
        if xm < 0:
            raise DomainError(f"sqrt: argument must be >= 0, got {xm}")
        v = mpmath.sqrt(xm)
    return _round_to(v, prec.bits)


def exp(x, prec: Union[Precision, int]) -> mpf:
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        v = mpmath.exp(_to_mpf(x))
    return _round_to(v, prec.bits)


def ln(x, prec: Union[Precision, int]) -> mpf:
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        xm = _to_mpf(x)
        if xm <= 0:
            raise DomainError(f"ln: argument must be > 0, got {xm}")
        v = mpmath.log(xm)
    return _round_to(v, prec.bits)


def asin(x, prec: Union[Precision, int]) -> mpf:
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        xm = _to_mpf(x)
        if xm < -1 or xm > 1:
            raise DomainError(f"asin: argument must lie in [-1, 1], got {xm}")
        v = mpmath.asin(xm)
    return _round_to(v, prec.bits)


def acos(x, prec: Union[Precision, int]) -> mpf:
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        xm = _to_mpf(x)
        if xm < -1 or xm > 1:
            raise DomainError(f"acos: argument must lie in [-1, 1], got {xm}")
        v = mpmath.acos(xm)
    return _round_to(v, prec.bits)


def irrational_factor(z: Fraction, prec: Union[Precision, int]) -> mpf:
    """sqrt(z/(4-z)) * asin(sqrt(z)/2), the transcendental factor of the closed form.

    Requires 0 < z < 4, the interval on which the closed form stays on the
    real branch.  Accurate to within 8 ulp at the requested precision.
    """
    prec = as_precision(prec)
    z = Fraction(z)
    if not (0 < z < 4):
        raise DomainError(f"irrational_factor: z must satisfy 0 < z < 4, got {z}")
    with mp.workprec(prec.working):
        zm = _to_mpf(z)
        v = mpmath.sqrt(zm / (4 - zm)) * mpmath.asin(mpmath.sqrt(zm) / 2)
    return _round_to(v, prec.bits)


def from_fraction(q: Fraction, prec: Union[Precision, int]) -> mpf:
    """Round an exact rational to the requested precision (single rounding)."""
    prec = as_precision(prec)
    q = Fraction(q)
    with mp.workprec(prec.working):
        v = mpf(q.numerator) / mpf(q.denominator)
    return _round_to(v, prec.bits)


def default_digits(bits: int) -> int:
    """Decimal digit count used when printing values held at ``bits`` bits."""
    return max(1, int(bits * 0.301))


def to_decimal(x: mpf, digits: int) -> str:
    """Decimal string with an explicit significant-digit count."""
    return mpmath.nstr(x, digits, strip_zeros=False)


def from_decimal(s: str, prec: Union[Precision, int]) -> mpf:
    prec = as_precision(prec)
    with mp.workprec(prec.working):
        v = mpf(s)
    return _round_to(v, prec.bits)


def ulps_apart(a: mpf, b: mpf, bits: int) -> float:
    """Distance between two reals in units in the last place at ``bits`` bits.

    Relative definition: |a - b| / max(|a|, |b|) scaled by 2**bits.  Returns
    0.0 for exact equality (including 0 == 0).
    """
    if a == b:
        return 0.0
    with mp.workprec(bits + 64):
        scale = max(abs(mpf(a)), abs(mpf(b)))
        if scale == 0:
            return float("inf")
        return float(abs(mpf(a) - mpf(b)) / scale * mpf(2) ** bits)
