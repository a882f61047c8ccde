"""Figure rendering for verification reports and sweeps.

PNG files land next to the delimited output; the JSON/CSV artifacts stay
authoritative (figures carry no data the delimited files lack).
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_report_figures", "render_sweep_figures"]


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_report_figures(report, outdir, stem: str | None = None) -> list[Path]:
    """One figure per report: implied constants across the sweep points."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = stem or report.theorem
    pts = report.points
    written: list[Path] = []
    if not pts:
        return written

    if report.theorem == "endpoint":
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        lams = sorted({pt["lambda"] for pt in pts})
        for lam in lams:
            rows = [pt for pt in pts if pt["lambda"] == lam and pt["rhs0"] > 0 and pt["lhs"] > 0]
            xs = [1.0 / pt["eps"] for pt in rows]
            ys = [pt["lhs"] / pt["rhs0"] for pt in rows]
            ax.loglog(xs, ys, "o-", label=f"level {lam:g}")
        slope = report.aggregates.get("max_slope", 0.0)
        ax.set_xlabel("1 / eps")
        ax.set_ylabel("lhs / integral term")
        ax.set_title(f"endpoint blowup (max fitted slope {slope:.3f})")
        ax.legend()
        written.append(_save(fig, outdir / f"{stem}_blowup.png"))
        return written

    value_key = None
    for cand in ("implied_constant", "max_pointwise_ratio", "implied_ainf"):
        if cand in pts[0]:
            value_key = cand
            break
    if value_key is None:
        return written
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ys = [pt[value_key] for pt in pts]
    xs = np.arange(len(ys))
    ax.plot(xs, ys, "o-")
    if all(y > 0 and math.isfinite(y) for y in ys):
        ax.set_yscale("log")
    labels = []
    coord_keys = [k for k in pts[0] if k not in (value_key, "lhs", "rhs", "rhs0", "flags",
                                                 "rhs_ainf", "rhs_a1", "implied_a1", "implied_ainf")]
    for pt in pts:
        labels.append(",".join(f"{k}={pt[k]}" for k in coord_keys if not isinstance(pt[k], list)))
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=6)
    ax.set_ylabel(value_key)
    ax.set_title(f"{report.theorem}: {value_key} across the sweep")
    written.append(_save(fig, outdir / f"{stem}_implied.png"))
    return written


def render_sweep_figures(result: dict, outdir, stem: str = "sweep") -> list[Path]:
    """Implied-constant curve along the sweep axis, with the slope fit when
    the axis is epsilon."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = result["rows"]
    agg = result["aggregates"]
    written: list[Path] = []
    if not rows:
        return written
    value_key = None
    for cand in ("implied_constant", "max_pointwise_ratio", "implied_ainf"):
        if cand in rows[0]:
            value_key = cand
            break
    if value_key is None:
        return written
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    xs = [float(r["axis_value"]) for r in rows if math.isfinite(r.get(value_key, math.nan))]
    ys = [r[value_key] for r in rows if math.isfinite(r.get(value_key, math.nan))]
    ax.plot(xs, ys, "o")
    ax.set_xlabel(agg["axis"])
    ax.set_ylabel(value_key)
    title = f"{agg['theorem']}: {value_key} along {agg['axis']}"
    if "slope" in agg:
        title += f" (fitted slope {agg['slope']:.3f})"
    if "max_drift" in agg:
        title += f" (max drift {agg['max_drift']:.3%})"
    ax.set_title(title, fontsize=9)
    written.append(_save(fig, outdir / f"{stem}_{agg['axis']}.png"))
    return written
