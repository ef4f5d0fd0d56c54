"""Command-line front end producing deterministic JSON/CSV reports.

Subcommands::

    eval     one (z, k): closed form and/or series oracle (negative k: series)
    table    exact (R1, R2) rows for k = kmin..kmax with ratio and residual
    limit    limiting ratio of R1/R2 and its gap above the arcsine factor
    rate     residual decay-rate fit against the target geometric rate
    genfunc  generating-function coefficients beside the exact references
    verify   machine verification suites; exit 1 on any failed check

Reports are byte-deterministic at a fixed argv: rationals are printed as
"p/q" strings, reals as decimal strings with floor(bits * 0.301) digits,
and key order is fixed.  ``--figures DIR`` additionally renders PNG
figures beside the delimited output for table/rate/genfunc.  The default
precision is 256 bits, or the APERY_BITS environment variable when set
(the --bits flag wins).  Exit codes: 0 success, 1 verification failure,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from mpmath import mp, mpf

from . import __version__, asymptotics, plots, powerseries, summation, verify
from .closed_form import arcsin_coeff, closed_form, rational_part, sum_via_2f1
from .errors import AperyError
from .exact import format_rational, parse_rational
from .precision import Precision, default_digits, irrational_factor, to_decimal

__all__ = ["main", "run"]

_ENV_BITS = "APERY_BITS"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apery",
        description="exact/arbitrary-precision evaluation of sum n^k z^n / C(2n,n)",
    )
    parser.add_argument("--version", action="version", version=f"apery {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_figures=False):
        p.add_argument("--bits", type=int, default=None,
                       help=f"precision in bits (default 256, or ${_ENV_BITS})")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=Path, default=None, help="write the report to FILE")
        if with_figures:
            p.add_argument("--figures", type=Path, default=None,
                           help="directory for PNG figures rendered beside the report")

    p = sub.add_parser("eval", help="evaluate one (z, k)")
    p.add_argument("--z", required=True, help='rational z as "p/q" or integer string')
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--method", choices=("closed", "series", "2f1", "both"), default=None,
                   help="evaluation path (default: both for k >= 0, series for k < 0)")
    p.add_argument("--eps", default=None, help="series tail tolerance (decimal string)")
    common(p)

    p = sub.add_parser("table", help="exact R1/R2 rows for k = kmin..kmax")
    p.add_argument("--z", required=True)
    p.add_argument("--kmin", type=int, default=0)
    p.add_argument("--kmax", required=True, type=int)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers over k cells")
    common(p, with_figures=True)

    p = sub.add_parser("limit", help="limiting R1/R2 ratio and its gap")
    p.add_argument("--z", required=True)
    common(p)

    p = sub.add_parser("rate", help="residual decay-rate fit")
    p.add_argument("--z", required=True)
    p.add_argument("--kmin", type=int, default=5)
    p.add_argument("--kmax", type=int, default=35)
    common(p, with_figures=True)

    p = sub.add_parser("genfunc", help="generating-function coefficients vs exact values")
    p.add_argument("--z", required=True)
    p.add_argument("--kmax", type=int, default=8)
    common(p, with_figures=True)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=verify.SUITE_NAMES, default="all")
    common(p)
    return parser


def _resolve_bits(ns) -> int:
    if ns.bits is not None:
        return ns.bits
    env = os.environ.get(_ENV_BITS)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"malformed {_ENV_BITS} value: {env!r}")
    return 256


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    rows = None
    for key in ("rows", "checks"):
        if key in doc:
            rows = doc[key]
            break
    meta = [(k, v) for k, v in doc.items() if not isinstance(v, (list, dict))]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows is None:
        writer.writerow([k for k, _ in meta])
        writer.writerow([_cell(v) for _, v in meta])
    else:
        row_cols = list(rows[0].keys()) if rows else []
        writer.writerow([k for k, _ in meta] + row_cols)
        for row in rows:
            writer.writerow([_cell(v) for _, v in meta] + [_cell(row[c]) for c in row_cols])
    return buf.getvalue()


def _emit(doc: dict, ns) -> None:
    text = _render(doc, ns.format)
    if ns.out is not None:
        ns.out.parent.mkdir(parents=True, exist_ok=True)
        ns.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _z_tag(z: Fraction) -> str:
    return f"{z.numerator}" if z.denominator == 1 else f"{z.numerator}_{z.denominator}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eval(ns) -> int:
    bits = _resolve_bits(ns)
    prec = Precision(bits)
    digits = default_digits(bits)
    z = parse_rational(ns.z)
    k = ns.k
    method = ns.method or ("both" if k >= 0 else "series")
    eps = ns.eps or f"1e-{digits}"
    doc = {
        "command": "eval",
        "version": __version__,
        "z": format_rational(z),
        "k": k,
        "bits": bits,
        "method": method,
        "eps": eps,
    }
    values = []
    if method in ("closed", "both", "2f1"):
        cf = closed_form(z, k)  # raises DomainError for k < 0 or z outside (0, 4)
        doc["r1"] = format_rational(cf.r1)
        doc["r2"] = format_rational(cf.r2)
        doc["ratio"] = format_rational(cf.ratio())
        if method in ("closed", "both"):
            v = cf.value(prec)
            doc["value"] = to_decimal(v, digits)
            values.append(v)
        if method in ("2f1", "both"):
            v = sum_via_2f1(z, k, prec)
            doc["value_2f1"] = to_decimal(v, digits)
            doc.setdefault("value", doc["value_2f1"])
            values.append(v)
    if method in ("series", "both"):
        res = summation.sum_series(z, k, prec, eps)
        doc["series_value"] = to_decimal(res.value, digits)
        doc["series_terms"] = res.terms_used
        doc["series_tail_bound"] = to_decimal(res.tail_bound, 3)
        doc.setdefault("value", doc["series_value"])
        values.append(res.value)
    if len(values) > 1:
        with mp.workprec(bits + 16):
            spread = max(values) - min(values)
            tol = mpf(doc["series_tail_bound"]) + abs(values[0]) * mpf(2) ** (6 - bits)
        doc["agreement"] = to_decimal(spread, 3)
        doc["agreement_tolerance"] = to_decimal(tol, 3)
    _emit(doc, ns)
    return 0


def _table_row(z: Fraction, k: int, bits: int) -> dict:
    digits = default_digits(bits)
    prec = Precision(bits)
    r1 = rational_part(z, k)
    r2 = arcsin_coeff(z, k)
    ratio = r1 / r2
    lim = asymptotics.ratio_limit(z, Precision(prec.working, 16)).limit
    with mp.workprec(prec.working):
        ratio_m = mpf(ratio.numerator) / ratio.denominator
        resid = abs(ratio_m - lim)
    with mp.workprec(bits):
        ratio_m, resid = +ratio_m, +resid
    return {
        "k": k,
        "r1": format_rational(r1),
        "r2": format_rational(r2),
        "ratio": format_rational(ratio),
        "ratio_decimal": to_decimal(ratio_m, digits),
        "residual": to_decimal(resid, digits),
    }


def _table_row_star(args) -> dict:
    return _table_row(*args)


def _cmd_table(ns) -> int:
    bits = _resolve_bits(ns)
    digits = default_digits(bits)
    z = parse_rational(ns.z)
    if ns.kmax < ns.kmin or ns.kmin < 0:
        raise ValueError(f"need 0 <= kmin <= kmax, got ({ns.kmin}, {ns.kmax})")
    ks = list(range(ns.kmin, ns.kmax + 1))
    lim = asymptotics.ratio_limit(z, Precision(bits)).limit
    work = [(z, k, bits) for k in ks]
    if ns.jobs and ns.jobs > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(_table_row_star, work))
    else:
        rows = [_table_row(*w) for w in work]
    doc = {
        "command": "table",
        "version": __version__,
        "z": format_rational(z),
        "bits": bits,
        "kmin": ns.kmin,
        "kmax": ns.kmax,
        "ratio_limit": to_decimal(lim, digits),
        "rows": rows,
    }
    _emit(doc, ns)
    if ns.figures is not None:
        plots.save_table_figure(
            format_rational(z),
            [r["k"] for r in rows],
            [float(r["ratio_decimal"]) for r in rows],
            float(lim),
            ns.figures / f"table_z{_z_tag(z)}.png",
        )
    return 0


def _cmd_limit(ns) -> int:
    bits = _resolve_bits(ns)
    digits = default_digits(bits)
    z = parse_rational(ns.z)
    rl = asymptotics.ratio_limit(z, Precision(bits))
    doc = {
        "command": "limit",
        "version": __version__,
        "z": format_rational(z),
        "bits": bits,
        "ratio_limit": to_decimal(rl.limit, digits),
        "gap": to_decimal(rl.gap, digits),
        "irrational_factor": to_decimal(irrational_factor(z, Precision(bits)), digits),
    }
    _emit(doc, ns)
    return 0


def _cmd_rate(ns) -> int:
    bits = _resolve_bits(ns)
    digits = default_digits(bits)
    z = parse_rational(ns.z)
    report = asymptotics.dyson_rate_fit(z, ns.kmin, ns.kmax, Precision(bits))
    doc = {
        "command": "rate",
        "version": __version__,
        "z": format_rational(z),
        "bits": bits,
        "kmin": ns.kmin,
        "kmax": ns.kmax,
        "target_rate": to_decimal(report.target_rate, digits),
        "target_rate_provenance": "proved at z=2; extrapolated from the singularity moduli otherwise",
        "fitted_rate": to_decimal(report.fitted_rate, 12),
        "fitted_rate_plain": to_decimal(report.fitted_rate_plain, 12),
        "envelope_ks": list(report.envelope_ks),
        "rows": [{"k": k, "residual": to_decimal(r, digits)} for k, r in report.rows],
    }
    _emit(doc, ns)
    if ns.figures is not None:
        plots.save_rate_figure(
            format_rational(z),
            [k for k, _ in report.rows],
            [float(r) for _, r in report.rows],
            list(report.envelope_ks),
            float(report.fitted_rate),
            float(report.fitted_rate_plain),
            float(report.target_rate),
            ns.figures / f"rate_z{_z_tag(z)}.png",
        )
    return 0


def _cmd_genfunc(ns) -> int:
    bits = _resolve_bits(ns)
    digits = default_digits(bits)
    z = parse_rational(ns.z)
    if ns.kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {ns.kmax}")
    prec = Precision(bits)
    egf_r1 = powerseries.egf_rational_coeffs(z, ns.kmax, prec)
    egf_r2 = powerseries.egf_arcsin_coeffs(z, ns.kmax, prec)
    egf_sum = powerseries.egf_sum_coeffs(z, ns.kmax, prec)
    rows = []
    diffs = {"r1": [], "r2": [], "sum": []}
    eps = f"1e-{digits}"
    for k in range(ns.kmax + 1):
        e1 = rational_part(z, k)
        e2 = arcsin_coeff(z, k)
        s = summation.sum_series(z, k, prec, eps).value
        with mp.workprec(prec.working):
            d1 = abs(egf_r1[k] - mpf(e1.numerator) / e1.denominator)
            d2 = abs(egf_r2[k] - mpf(e2.numerator) / e2.denominator)
            ds = abs(egf_sum[k] - s)
        rows.append({
            "k": k,
            "egf_r1": to_decimal(egf_r1[k], digits),
            "exact_r1": format_rational(e1),
            "diff_r1": to_decimal(d1, 3),
            "egf_r2": to_decimal(egf_r2[k], digits),
            "exact_r2": format_rational(e2),
            "diff_r2": to_decimal(d2, 3),
            "egf_sum": to_decimal(egf_sum[k], digits),
            "series_sum": to_decimal(s, digits),
            "diff_sum": to_decimal(ds, 3),
        })
        diffs["r1"].append(float(d1))
        diffs["r2"].append(float(d2))
        diffs["sum"].append(float(ds))
    doc = {
        "command": "genfunc",
        "version": __version__,
        "z": format_rational(z),
        "bits": bits,
        "kmax": ns.kmax,
        "rows": rows,
    }
    _emit(doc, ns)
    if ns.figures is not None:
        plots.save_genfunc_figure(
            format_rational(z),
            list(range(ns.kmax + 1)),
            diffs["r1"], diffs["r2"], diffs["sum"],
            ns.figures / f"genfunc_z{_z_tag(z)}.png",
        )
    return 0


def _cmd_verify(ns) -> int:
    bits = _resolve_bits(ns)
    Precision(bits)  # validate early
    checks, all_passed = verify.run_suites([ns.suite], bits)
    doc = {
        "command": "verify",
        "version": __version__,
        "z": None,
        "bits": bits,
        "suite": ns.suite,
        "all_passed": all_passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "measured": c.measured,
                "tolerance": c.tolerance,
                "detail": c.detail,
            }
            for c in checks
        ],
    }
    _emit(doc, ns)
    return 0 if all_passed else 1


_DISPATCH = {
    "eval": _cmd_eval,
    "table": _cmd_table,
    "limit": _cmd_limit,
    "rate": _cmd_rate,
    "genfunc": _cmd_genfunc,
    "verify": _cmd_verify,
}


def run(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _DISPATCH[ns.command](ns)
    except (AperyError, ValueError) as exc:
        print(f"apery: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
