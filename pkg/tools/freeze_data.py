#!/usr/bin/env python3
"""Regenerate the frozen package data: calibration.json, manifest.json,
baselines.json.

Run from the repo root after changing the generator menu, the corpus or
anything that feeds the regression baselines:

    python tools/freeze_data.py [--skip-baselines]

Baselines include the high-resolution commutator reference (n = 2**16
kernel sums at probe points) and the canonical strong/endpoint/weak-type
implied constants; the acceptance suite reproduces them within 2%.
"""

from __future__ import annotations

import argparse
import json
import math
import time
from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parents[1] / "src" / "czkit" / "data"


def freeze_calibration() -> dict:
    from czkit import weights

    t0 = time.time()
    cal = weights.calibrate_tau(levels=10)
    cal["wall_seconds"] = round(time.time() - t0, 2)
    (DATA / "calibration.json").write_text(json.dumps(cal, sort_keys=True, indent=2) + "\n")
    print("calibration:", cal)
    return cal


def freeze_manifest() -> dict:
    from czkit import corpus

    manifest = corpus.build_manifest()
    (DATA / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    print(f"manifest: {len(manifest['entries'])} entries")
    return manifest


def commutator_reference() -> dict:
    """Probe values of the log-symbol commutator of a unit box at points
    away from the support, at n = 2**16; coarser runs converge to these."""
    from czkit.grid import GridFunction, UniformGrid1D
    from czkit.singular import hilbert_at_points, make_symbol

    xs = [2.0, -2.0, 3.0]
    out = {}
    for levels in (10, 12, 16):
        grid = UniformGrid1D(-4.0, 4.0, levels)
        f = GridFunction.indicator(grid, 0.0, 1.0)
        b = make_symbol("log", grid)
        hf = hilbert_at_points(f, np.asarray(xs))
        hbf = hilbert_at_points(b * f, np.asarray(xs))
        vals = [math.log(abs(x)) * h1 - h2 for x, h1, h2 in zip(xs, hf, hbf)]
        out[str(levels)] = vals
        print(f"  commutator probe at 2**{levels}:", [f"{v:.10f}" for v in vals])
    return {"points": xs, "by_levels": out, "reference_levels": 16}


def hilbert_drift_profile() -> dict:
    """Interior drift of the transform of a smooth bump when the grid
    doubles; freezing it pins the quadrature's stability."""
    from czkit.grid import GridFunction, UniformGrid1D
    from czkit.harness import make_input
    from czkit.singular import hilbert

    drifts = {}
    prev = None
    for levels in (9, 10, 11):
        grid = UniformGrid1D(-4.0, 4.0, levels)
        f = make_input("bump", grid, center=0.0, width=1.0)
        hv = hilbert(f).values
        if prev is not None:
            coarse_grid, coarse = prev
            inner = np.abs(coarse_grid.midpoints) <= 2.0
            fine_vals = 0.5 * (hv[0::2] + hv[1::2])
            drifts[f"{coarse_grid.levels}->{levels}"] = float(
                np.max(np.abs(fine_vals[inner] - coarse[inner]))
            )
        prev = (grid, hv)
    print("  hilbert drift profile:", drifts)
    return drifts


def freeze_baselines() -> dict:
    from czkit import corpus
    from czkit.harness import run_theorem

    t0 = time.time()
    baselines: dict = {"tolerance_fraction": 0.02}

    print("commutator reference ...")
    baselines["commutator_reference"] = commutator_reference()
    baselines["hilbert_drift_profile"] = hilbert_drift_profile()

    print("weak-type maximal corpus ...")
    per_entry = {}
    fs_max = 0.0
    manifest = corpus.build_manifest()
    for name, raw in manifest["entries"].items():
        if not name.startswith("maximal-lemmas"):
            continue
        from czkit.harness import ExperimentConfig

        rep = run_theorem(ExperimentConfig.from_dict(raw))
        agg = rep.aggregates["max_implied_per_lemma"]
        per_entry[name] = agg
        fs_max = max(fs_max, agg.get("weak-type-maximal", 0.0))
    baselines["maximal_lemmas"] = per_entry
    baselines["fefferman_stein_implied"] = fs_max

    print("strong canonical (k=1, k=2) at 2**9 and 2**10, plus 2**11 dyadic ...")
    strong = {}
    for k in (1, 2):
        entry = {}
        points_by_level = {}
        for levels in (9, 10):
            cfg = corpus.canonical_strong(k, levels=levels)
            rep = run_theorem(cfg)
            points_by_level[levels] = {
                f"p={pt['p']:g},delta={pt['delta']:g}": pt["implied_constant"]
                for pt in rep.points
            }
            entry[f"levels{levels}"] = {
                "max_implied": rep.aggregates["max_implied"],
                "spread_factor": rep.aggregates["spread_factor"],
                "points": points_by_level[levels],
            }
        drift = max(
            abs(points_by_level[10][key] / points_by_level[9][key] - 1.0)
            for key in points_by_level[10]
        )
        entry["drift_9_to_10"] = drift
        cfg = corpus.canonical_strong(k, levels=11)
        cfg.mode = "dyadic"
        rep = run_theorem(cfg)
        entry["levels11_dyadic"] = {
            "max_implied": rep.aggregates["max_implied"],
            "points": {
                f"p={pt['p']:g},delta={pt['delta']:g}": pt["implied_constant"]
                for pt in rep.points
            },
        }
        strong[f"k{k}"] = entry
        print(f"  k={k}: max implied {entry['levels10']['max_implied']:.6g}, "
              f"spread {entry['levels10']['spread_factor']:.3g}, drift {drift:.4%}")
    baselines["strong"] = strong

    print("endpoint canonical at 2**10 ...")
    cfg = corpus.canonical_endpoint(levels=10)
    rep = run_theorem(cfg)
    baselines["endpoint"] = {
        "max_implied": rep.aggregates["max_implied"],
        "max_slope": rep.aggregates["max_slope"],
        "slopes": rep.aggregates["slopes"],
    }
    print(f"  endpoint: max implied {rep.aggregates['max_implied']:.6g}, "
          f"max slope {rep.aggregates['max_slope']:.4f}")

    baselines["wall_seconds"] = round(time.time() - t0, 2)
    (DATA / "baselines.json").write_text(json.dumps(baselines, sort_keys=True, indent=2) + "\n")
    return baselines


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--skip-baselines", action="store_true")
    args = ap.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    freeze_calibration()
    freeze_manifest()
    if not args.skip_baselines:
        freeze_baselines()


if __name__ == "__main__":
    main()
