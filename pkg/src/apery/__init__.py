"""Exact and arbitrary-precision evaluation of sum n^k z^n / C(2n, n).

For rational z in (0, 4) and integer k >= 0 the value splits into an exact
rational part plus an exact rational multiple of
sqrt(z/(4-z)) asin(sqrt(z)/2); this package computes the pair exactly,
evaluates the sum to arbitrary precision along several independent routes
(closed form, direct summation, hypergeometric expansion, generating-
function coefficients), and measures the large-k behavior, including the
geometric rate at which R1/R2 approaches pi/4 at z = 2.
"""

from .asymptotics import (
    AsymRow,
    ConvergenceReport,
    RatioLimit,
    arcsin_coeff_estimate,
    arcsin_coeff_estimate_printed,
    asym_rows,
    dyson_rate,
    dyson_rate_fit,
    ratio_limit,
    rational_part_estimate,
    rational_part_estimate_printed,
    residual,
)
from .closed_form import (
    ClosedForm,
    arcsin_coeff,
    arcsin_coeff_terms,
    closed_form,
    gauss_2f1_closed,
    gauss_2f1_contiguous,
    gauss_2f1_contiguous_parts,
    gauss_2f1_parts,
    rational_part,
    rational_part_terms,
    sum_borwein_z1,
    sum_closed,
    sum_via_2f1,
)
from .errors import AperyError, DivergenceError, DomainError, PrecisionError
from .exact import (
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
from .powerseries import (
    TaylorSeries,
    arcsin_series,
    constant_series,
    egf_arcsin_coeffs,
    egf_rational_coeffs,
    egf_sum_coeffs,
    exp_series,
)
from .precision import (
    HPReal,
    Precision,
    acos,
    as_precision,
    asin,
    default_digits,
    exp,
    from_decimal,
    from_fraction,
    irrational_factor,
    ln,
    pi,
    sqrt,
    to_decimal,
    ulps_apart,
)
from .summation import (
    SeriesResult,
    moment_integral_closed,
    moment_integral_quad,
    pfq_neg_index,
    power_sum_closed,
    sum_series,
)

__version__ = "0.1.0"
