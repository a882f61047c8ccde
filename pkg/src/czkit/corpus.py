"""Canonical experiment corpus.

The manifest shipped in ``data/manifest.json`` freezes the (input, symbol,
weight) combinations that acceptance runs against, so reported baselines
are reproducible.  Additions append new entries under new names; existing
entries are never mutated (bump ``version`` when appending).

Frozen regression baselines produced from the manifest live in
``data/baselines.json``; see ``tools/freeze_baselines.py``.
"""

from __future__ import annotations

import json
from importlib import resources

from .harness import ExperimentConfig

__all__ = [
    "canonical_strong",
    "canonical_endpoint",
    "canonical_corollary",
    "canonical_two_weight",
    "canonical_sharp",
    "maximal_lemmas_corpus",
    "build_manifest",
    "load_manifest",
    "load_baselines",
    "config_from_manifest",
]

MANIFEST_VERSION = 1


def canonical_symbols(k: int) -> list[dict]:
    """Frozen symbol tuples: a log symbol at the origin, a second log
    symbol centered at -2 (keeping its singularity away from the weight's),
    and a smooth seeded symbol on top at k = 3."""
    base = [
        {"kind": "log", "s": 1.0, "params": {}},
        {"kind": "log", "s": 1.0, "params": {"center": -2.0}},
        {"kind": "fourier", "s": 1.0, "params": {"seed": 5, "modes": 4}},
    ]
    return base[:k]


def canonical_strong(k: int = 1, levels: int = 10) -> ExperimentConfig:
    return ExperimentConfig(
        a=-4.0,
        b=4.0,
        levels=levels,
        f_kind="box",
        f_params={"lo": 0.5, "hi": 1.5},
        symbols=canonical_symbols(k),
        weight_kind="power",
        weight_params={"alpha": -0.25},
        theorem="strong",
        p_list=[1.5, 2.0, 3.0],
        delta_list=[0.1, 0.5],
        eps_list=[0.5],
        lambda_list=[0.5],
        mode="auto",
        seed=7,
    )


def canonical_endpoint(levels: int = 10) -> ExperimentConfig:
    return ExperimentConfig(
        a=-4.0,
        b=4.0,
        levels=levels,
        f_kind="box",
        f_params={"lo": 0.5, "hi": 1.5},
        symbols=[{"kind": "log", "s": 1.0, "params": {}}],
        weight_kind="power",
        weight_params={"alpha": -0.25},
        theorem="endpoint",
        p_list=[2.0],
        delta_list=[0.5],
        eps_list=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        lambda_list=[0.5, 1.0],
        mode="auto",
        seed=7,
    )


def canonical_corollary(weight_kind: str = "step", levels: int = 9) -> ExperimentConfig:
    params = {"low": 1.0, "high": 2.0} if weight_kind == "step" else {}
    if weight_kind == "power":
        params = {"alpha": -0.5}
    return ExperimentConfig(
        a=-4.0,
        b=4.0,
        levels=levels,
        f_kind="box",
        f_params={"lo": 0.5, "hi": 1.5},
        symbols=[{"kind": "log", "s": 1.0, "params": {}}],
        weight_kind=weight_kind,
        weight_params=params,
        theorem="corollary",
        lambda_list=[0.25, 0.5, 1.0],
        mode="auto",
        seed=7,
    )


def canonical_two_weight(levels: int = 9) -> ExperimentConfig:
    return ExperimentConfig(
        a=-4.0,
        b=4.0,
        levels=levels,
        f_kind="box",
        f_params={"lo": 0.5, "hi": 1.5},
        symbols=[{"kind": "log", "s": 1.0, "params": {}}],
        weight_kind="step",
        weight_params={"low": 1.0, "high": 4.0},
        theorem="two-weight",
        p_list=[1.5, 2.0, 3.0],
        delta_list=[0.1, 0.5],
        mode="auto",
        seed=7,
    )


def canonical_sharp(k: int = 1, levels: int = 9) -> ExperimentConfig:
    return ExperimentConfig(
        a=-4.0,
        b=4.0,
        levels=levels,
        f_kind="box",
        f_params={"lo": 0.5, "hi": 1.5},
        symbols=canonical_symbols(k),
        weight_kind="constant",
        theorem="sharp",
        delta_list=[0.25, 0.5],
        eps_list=[0.75],
        mode="auto",
        seed=7,
    )


def maximal_lemmas_corpus(levels: int = 8) -> list[ExperimentConfig]:
    """(f, w) grid for the dyadic-lemma and weak-type checks."""
    combos = [
        ("box", {"lo": 0.0, "hi": 1.0}, "constant", {}),
        ("box", {"lo": 0.0, "hi": 1.0}, "step", {"low": 1.0, "high": 2.0}),
        ("hat", {"center": 0.0, "width": 1.0}, "step", {"low": 1.0, "high": 8.0}),
        ("bump", {"center": 0.5, "width": 1.0}, "power", {"alpha": -0.5}),
        ("random-cells", {"lo": -1.0, "hi": 1.0}, "power", {"alpha": 0.5}),
        ("bump", {"center": -0.5, "width": 0.75}, "random-ainf", {"seed": 11, "osc_bound": 1.0}),
    ]
    out = []
    for fk, fp, wk, wp in combos:
        out.append(
            ExperimentConfig(
                a=-4.0,
                b=4.0,
                levels=levels,
                f_kind=fk,
                f_params=fp,
                symbols=[],
                weight_kind=wk,
                weight_params=wp,
                theorem="maximal-lemmas",
                p_list=[1.5, 2.0],
                delta_list=[0.5],
                eps_list=[0.5],
                mode="auto",
                seed=13,
            )
        )
    return out


def build_manifest() -> dict:
    entries = {
        "strong-k1": canonical_strong(1).to_dict(),
        "strong-k2": canonical_strong(2).to_dict(),
        "endpoint-k1": canonical_endpoint().to_dict(),
        "corollary-constant": canonical_corollary("constant").to_dict(),
        "corollary-step": canonical_corollary("step").to_dict(),
        "corollary-power": canonical_corollary("power").to_dict(),
        "two-weight": canonical_two_weight().to_dict(),
        "sharp-k0": canonical_sharp(0).to_dict(),
        "sharp-k1": canonical_sharp(1).to_dict(),
        "sharp-k2": canonical_sharp(2).to_dict(),
    }
    for i, cfg in enumerate(maximal_lemmas_corpus()):
        entries[f"maximal-lemmas-{i}"] = cfg.to_dict()
    return {"version": MANIFEST_VERSION, "entries": entries}


def load_manifest() -> dict:
    text = resources.files("czkit").joinpath("data/manifest.json").read_text()
    return json.loads(text)


def config_from_manifest(name: str) -> ExperimentConfig:
    manifest = load_manifest()
    return ExperimentConfig.from_dict(manifest["entries"][name])


def load_baselines() -> dict:
    text = resources.files("czkit").joinpath("data/baselines.json").read_text()
    return json.loads(text)
