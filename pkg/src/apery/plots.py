"""Figure rendering for the report-producing CLI commands.

Each function takes plain numeric data (floats) already extracted from a
report and writes one PNG.  Figures are a side artifact of the JSON/CSV
reports: the delimited output stays the canonical, byte-deterministic
record.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["save_table_figure", "save_rate_figure", "save_genfunc_figure"]


def _finish(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def save_table_figure(z_label: str, ks, ratios, limit: float, path) -> Path:
    """Ratio R1/R2 against k with its limiting value, plus the residual decay."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(ks, ratios, "o-", ms=4, label="R1/R2")
    ax1.axhline(limit, color="tab:red", lw=1, ls="--", label="limit")
    ax1.set_xlabel("k")
    ax1.set_ylabel("R1/R2")
    ax1.set_title(f"ratio of the exact pair, z = {z_label}")
    ax1.legend(frameon=False)
    residuals = [abs(r - limit) for r in ratios]
    positive = [(k, r) for k, r in zip(ks, residuals) if r > 0]
    if positive:
        ax2.semilogy([k for k, _ in positive], [r for _, r in positive], "o-", ms=4)
    ax2.set_xlabel("k")
    ax2.set_ylabel("|R1/R2 - limit|")
    ax2.set_title("residual")
    fig.tight_layout()
    return _finish(fig, path)


def save_rate_figure(z_label: str, ks, residuals, envelope_ks, fitted: float,
                     plain: float, target: float, path) -> Path:
    """Residual decay with the envelope fit and the target geometric rate."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.semilogy(ks, residuals, "o", ms=4, color="tab:blue", label="|R1/R2 - limit|")
    env_set = set(envelope_ks)
    ek = [k for k in ks if k in env_set]
    ev = [r for k, r in zip(ks, residuals) if k in env_set]
    ax.semilogy(ek, ev, "s", ms=6, mfc="none", color="tab:orange", label="envelope points")
    if residuals and residuals[0] > 0:
        k0 = ks[0]
        anchor = residuals[0]
        ax.semilogy(ks, [anchor * fitted ** (k0 - k) for k in ks], "-",
                    color="tab:orange", lw=1, label=f"envelope fit {fitted:.3f}^-k")
        ax.semilogy(ks, [anchor * target ** (k0 - k) for k in ks], "--",
                    color="tab:red", lw=1, label=f"target {target:.3f}^-k")
    ax.set_xlabel("k")
    ax.set_ylabel("residual")
    ax.set_title(f"convergence rate of R1/R2, z = {z_label} (plain fit {plain:.3f})")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return _finish(fig, path)


def save_genfunc_figure(z_label: str, ks, diff_r1, diff_r2, diff_sum, path) -> Path:
    """Coefficient-extraction error of the three generating functions."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    floor = 1e-90
    for label, diffs, marker in (
        ("rational part", diff_r1, "o"),
        ("arcsine coefficient", diff_r2, "s"),
        ("series value", diff_sum, "^"),
    ):
        ax.semilogy(ks, [max(d, floor) for d in diffs], marker, ms=5, mfc="none", label=label)
    ax.set_xlabel("k")
    ax.set_ylabel("|generating-function coefficient - reference|")
    ax.set_title(f"coefficient agreement, z = {z_label}")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return _finish(fig, path)
