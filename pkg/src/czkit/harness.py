"""Experiment driver: assembles inputs, evaluates both sides of each
inequality, reports implied constants and sweeps parameters.

Every report divides the stated structural factor out of the right-hand
side, so the implied constant is the ratio that the unspecified absolute
constant would have to absorb; a flat curve across a sweep signals the
exponent bookkeeping is right, and slope fits quantify deviation.  Level
sets are measured with strict inequality and exact cell sums.  Reports
serialize to JSON plus a flat CSV and are byte-identical for identical
config and seed.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import young
from .czrf import lp_norm
from .grid import GridFunction, UniformGrid1D
from .maximal import (
    hl_maximal,
    power_maximal,
    sharp_power,
    weak_norm,
    weighted_measure_above,
)
from .orlicz import AUTO, DYADIC, orlicz_maximal, resolve_mode
from .singular import SymbolSet, make_symbol, multilinear_commutator
from .weights import Weight, make_weight
from .young import DomainError, PreconditionError, evaluate, phi_rho

__all__ = [
    "ExperimentConfig",
    "VerificationReport",
    "MarginError",
    "verify_strong",
    "verify_endpoint",
    "verify_corollary",
    "verify_two_weight",
    "verify_sharp_pointwise",
    "verify_maximal_lemmas",
    "run_theorem",
    "sweep",
    "THEOREMS",
]


class MarginError(PreconditionError):
    """Input support too close to the domain boundary for level-set runs."""


@dataclass
class ExperimentConfig:
    """JSON-mirrored description of one experiment."""

    a: float = -4.0
    b: float = 4.0
    levels: int = 9
    f_kind: str = "box"
    f_params: dict = field(default_factory=lambda: {"lo": 0.0, "hi": 1.0})
    symbols: list = field(default_factory=list)  # [{kind, s, params}]
    weight_kind: str = "constant"
    weight_params: dict = field(default_factory=dict)
    theorem: str = "endpoint"
    p_list: list = field(default_factory=lambda: [2.0])
    delta_list: list = field(default_factory=lambda: [0.5])
    eps_list: list = field(default_factory=lambda: [0.5])
    lambda_list: list = field(default_factory=lambda: [0.5])
    resolution_list: list = field(default_factory=list)  # extra levels for sweeps
    mode: str = AUTO
    seed: int = 0
    slope_slack: float = 0.3

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise DomainError(f"unknown theorem {self.theorem!r}; choose from {sorted(THEOREMS)}")
        for lam in self.lambda_list:
            if lam <= 0:
                raise DomainError("lambda values must be positive")
        for d in self.delta_list:
            if not (0 < d < 1):
                raise DomainError("delta values must lie in (0, 1)")
        for e in self.eps_list:
            if not (0 < e < 1):
                raise DomainError("eps values must lie in (0, 1)")
        for p in self.p_list:
            if p <= 1:
                raise DomainError("p values must exceed 1")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}
        unknown = set(d) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    # --- builders -------------------------------------------------------

    def grid(self) -> UniformGrid1D:
        return UniformGrid1D(self.a, self.b, self.levels)

    def build_input(self, grid: UniformGrid1D) -> GridFunction:
        return make_input(self.f_kind, grid, seed=self.seed, **self.f_params)

    def build_symbols(self, grid: UniformGrid1D) -> SymbolSet:
        syms, ss = [], []
        for entry in self.symbols:
            params = dict(entry.get("params", {}))
            if entry["kind"] == "random-bmo":
                params.setdefault("seed", self.seed)
            syms.append(make_symbol(entry["kind"], grid, **params))
            ss.append(float(entry.get("s", 1.0)))
        return SymbolSet(syms, ss)

    def build_weight(self, grid: UniformGrid1D) -> Weight:
        params = dict(self.weight_params)
        if self.weight_kind == "random-ainf":
            params.setdefault("seed", self.seed)
        return make_weight(self.weight_kind, grid, **params)

    def resolved_mode(self, n: int) -> str:
        return resolve_mode(self.mode, n)


def make_input(kind: str, grid: UniformGrid1D, seed: int = 0, **params) -> GridFunction:
    """Test inputs; all kinds are compactly supported inside the domain."""
    x = grid.midpoints
    if kind == "box":
        lo, hi = float(params.get("lo", 0.0)), float(params.get("hi", 1.0))
        vals = ((x >= lo) & (x < hi)).astype(float) * float(params.get("height", 1.0))
    elif kind == "hat":
        c, wdt = float(params.get("center", 0.0)), float(params.get("width", 1.0))
        vals = np.maximum(0.0, 1.0 - np.abs(x - c) / wdt)
    elif kind == "bump":
        c, wdt = float(params.get("center", 0.0)), float(params.get("width", 1.0))
        u = (x - c) / wdt
        with np.errstate(divide="ignore", over="ignore"):
            vals = np.where(np.abs(u) < 1.0, np.exp(1.0 - 1.0 / np.maximum(1.0 - u * u, 1e-300)), 0.0)
    elif kind == "random-cells":
        lo, hi = float(params.get("lo", -1.0)), float(params.get("hi", 1.0))
        rng = np.random.default_rng(seed)
        vals = np.where((x >= lo) & (x < hi), rng.uniform(0.1, 1.0, grid.n), 0.0)
    elif kind == "zero":
        vals = np.zeros(grid.n)
    else:
        raise DomainError(f"unknown input kind {kind!r}")
    return GridFunction(grid, vals)


def check_margin(f: GridFunction) -> None:
    """Support must keep a quarter of the domain length away from each end;
    controls the truncation error of the kernel sums near level sets."""
    grid = f.grid
    nz = np.nonzero(f.values)[0]
    if nz.size == 0:
        return
    margin = 0.25 * (grid.b - grid.a)
    x = grid.midpoints
    lo, hi = x[nz[0]], x[nz[-1]]
    if lo < grid.a + margin or hi > grid.b - margin:
        raise MarginError(
            f"support [{lo:.4g}, {hi:.4g}] violates the quarter-length margin "
            f"of [{grid.a}, {grid.b}]"
        )


@dataclass
class VerificationReport:
    theorem: str
    metadata: dict
    points: list
    aggregates: dict
    contracts: dict

    @property
    def contracts_hold(self) -> bool:
        return all(self.contracts.values())

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "metadata": self.metadata,
            "points": self.points,
            "aggregates": self.aggregates,
            "contracts": self.contracts,
            "contracts_hold": self.contracts_hold,
        }

    def write_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n")

    def csv_columns(self) -> list[str]:
        keys: list[str] = []
        for pt in self.points:
            for k in pt:
                if k not in keys:
                    keys.append(k)
        return keys

    def write_csv(self, path) -> None:
        cols = self.csv_columns()
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(cols)
            for pt in self.points:
                wr.writerow([_csv_cell(pt.get(c)) for c in cols])


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return v


def _ratio(lhs: float, rhs: float) -> tuple[float, list]:
    """lhs/rhs with the degenerate rhs = 0 convention: ratio 0 when both
    vanish, flagged violation otherwise."""
    flags = []
    if rhs == 0.0:
        if lhs == 0.0:
            return 0.0, ["rhs-zero"]
        return math.inf, ["rhs-zero-lhs-positive"]
    return lhs / rhs, flags


def _fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ys against xs."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2:
        return 0.0
    xm, ym = x.mean(), y.mean()
    denom = float(np.sum((x - xm) ** 2))
    if denom == 0.0:
        return 0.0
    return float(np.sum((x - xm) * (y - ym)) / denom)


def _base_metadata(cfg: ExperimentConfig, mode: str, extra: dict | None = None) -> dict:
    md = {
        "n": 1 << cfg.levels,
        "mode": mode,
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        # grid suprema truncate the continuum ones from below: maximal
        # operators and weight constants on right-hand sides are lower
        # bounds, so implied constants are reported from the safe side
        "caveats": [
            "maximal operators and weight constants are grid suprema (lower bounds of continuum values)",
            f"interval base: {mode}",
        ],
    }
    if extra:
        md.update(extra)
    return md


def _conjugate(p: float) -> float:
    return p / (p - 1.0)


# --------------------------------------------------------------------------
# strong type


def verify_strong(cfg: ExperimentConfig) -> VerificationReport:
    """Weighted p-norm of the commutator against the structural factor
    times the p-norm of the input under the log-bump maximal weight."""
    if not cfg.p_list or not cfg.delta_list:
        raise DomainError("empty sweep")
    grid = cfg.grid()
    mode = cfg.resolved_mode(grid.n)
    f = cfg.build_input(grid)
    check_margin(f)
    bs = cfg.build_symbols(grid)
    w = cfg.build_weight(grid)
    k = bs.k
    inv_s = bs.inv_s_sum
    normb = bs.norm_product()
    T = multilinear_commutator(bs.symbols, f)
    h = grid.h

    points = []
    implieds = []
    for p, dlt in itertools.product(cfg.p_list, cfg.delta_list):
        pprime = _conjugate(p)
        lhs = lp_norm(T.values, w.values, p, h)
        exponent = (1.0 + inv_s) * p - 1.0 + dlt
        v = orlicz_maximal(w.f, phi_rho(exponent), mode)
        factor = pprime ** (k + 1) * p ** (1.0 + inv_s) * ((p - 1.0) / dlt) ** (1.0 / pprime)
        rhs = factor * normb * lp_norm(f.values, v.values, p, h)
        implied, flags = _ratio(lhs, rhs)
        points.append(
            {
                "p": p,
                "delta": dlt,
                "k": k,
                "exponent": exponent,
                "lhs": lhs,
                "rhs": rhs,
                "implied_constant": implied,
                "flags": flags,
            }
        )
        implieds.append(implied)

    finite = [c for c in implieds if np.isfinite(c)]
    positive = [c for c in finite if c > 0]
    spread = max(positive) / min(positive) if positive else 1.0
    aggregates = {
        "max_implied": max(finite) if finite else 0.0,
        "min_positive_implied": min(positive) if positive else 0.0,
        "spread_factor": spread,
        "symbol_norm_product": normb,
        "inv_s": inv_s,
    }
    contracts = {
        "all_finite": all(np.isfinite(c) for c in implieds),
        "zero_rhs_only_for_zero_lhs": all("rhs-zero-lhs-positive" not in pt["flags"] for pt in points),
    }
    return VerificationReport("strong", _base_metadata(cfg, mode), points, aggregates, contracts)


# --------------------------------------------------------------------------
# endpoint


def verify_endpoint(cfg: ExperimentConfig) -> VerificationReport:
    """Weighted measure of the commutator level set against the log-bump
    integral, with the blowup factor eps**(k+1) divided out."""
    if not cfg.eps_list or not cfg.lambda_list:
        raise DomainError("empty sweep")
    grid = cfg.grid()
    mode = cfg.resolved_mode(grid.n)
    f = cfg.build_input(grid)
    check_margin(f)
    bs = cfg.build_symbols(grid)
    w = cfg.build_weight(grid)
    k = bs.k
    inv_s = bs.inv_s_sum
    normb = bs.norm_product()
    T = multilinear_commutator(bs.symbols, f)
    h = grid.h
    phi = phi_rho(inv_s)

    points = []
    for eps in cfg.eps_list:
        v_eps = orlicz_maximal(w.f, phi_rho(inv_s + eps), mode)
        for lam in cfg.lambda_list:
            lhs = weighted_measure_above(T, w, lam)
            integrand = evaluate(phi, normb * np.abs(f.values) / lam) * v_eps.values
            rhs0 = float(np.sum(integrand) * h)
            rhs = rhs0 / eps ** (k + 1)
            implied, flags = _ratio(lhs, rhs)
            points.append(
                {
                    "eps": eps,
                    "lambda": lam,
                    "k": k,
                    "lhs": lhs,
                    "rhs0": rhs0,
                    "rhs": rhs,
                    "implied_constant": implied,
                    "flags": flags,
                }
            )

    slopes = {}
    for lam in cfg.lambda_list:
        pts = [pt for pt in points if pt["lambda"] == lam and pt["lhs"] > 0 and pt["rhs0"] > 0]
        xs = [math.log(1.0 / pt["eps"]) for pt in pts]
        ys = [math.log(pt["lhs"] / pt["rhs0"]) for pt in pts]
        slopes[repr(lam)] = _fit_slope(xs, ys)
    implieds = [pt["implied_constant"] for pt in points]
    aggregates = {
        "max_implied": max((c for c in implieds if np.isfinite(c)), default=0.0),
        "slopes": slopes,
        "max_slope": max(slopes.values()) if slopes else 0.0,
        "slope_bound": k + 1 + cfg.slope_slack,
        "symbol_norm_product": normb,
        "inv_s": inv_s,
    }
    contracts = {
        "all_finite": all(np.isfinite(c) for c in implieds),
        "zero_rhs_only_for_zero_lhs": all("rhs-zero-lhs-positive" not in pt["flags"] for pt in points),
        "slope_within_bound": aggregates["max_slope"] <= aggregates["slope_bound"],
    }
    return VerificationReport("endpoint", _base_metadata(cfg, mode), points, aggregates, contracts)


# --------------------------------------------------------------------------
# corollary (weight-constant endpoint forms)


def verify_corollary(cfg: ExperimentConfig) -> VerificationReport:
    """Endpoint bound with the weight dependence made explicit through the
    measured A-infinity and A_1 constants (single symbol, s = 1)."""
    if not cfg.lambda_list:
        raise DomainError("empty sweep")
    grid = cfg.grid()
    mode = cfg.resolved_mode(grid.n)
    f = cfg.build_input(grid)
    check_margin(f)
    bs = cfg.build_symbols(grid)
    if bs.k != 1 or bs.s_params[0] != 1.0:
        raise DomainError("the corollary form needs exactly one symbol with s = 1")
    w = cfg.build_weight(grid)
    normb = bs.norm_product()
    T = multilinear_commutator(bs.symbols, f)
    h = grid.h
    phi = phi_rho(1.0)

    fujii = w.fujii(DYADIC)
    a1 = w.a1(mode)
    mw = hl_maximal(w.f, mode)
    near_degenerate = a1 > 100.0

    points = []
    for lam in cfg.lambda_list:
        lhs = weighted_measure_above(T, w, lam)
        base = evaluate(phi, normb * np.abs(f.values) / lam)
        int_mw = float(np.sum(base * mw.values) * h)
        int_w = float(np.sum(base * w.values) * h)
        rhs1 = fujii * (1.0 + max(0.0, math.log(fujii))) ** 2 * int_mw
        rhs2 = evaluate(phi, a1) ** 2 * int_w
        implied1, flags1 = _ratio(lhs, rhs1)
        implied2, flags2 = _ratio(lhs, rhs2)
        flags = sorted(set(flags1 + flags2))
        if near_degenerate:
            flags.append("near-degenerate-weight")
        points.append(
            {
                "lambda": lam,
                "lhs": lhs,
                "rhs_ainf": rhs1,
                "rhs_a1": rhs2,
                "implied_ainf": implied1,
                "implied_a1": implied2,
                "flags": flags,
            }
        )

    vals = [pt["implied_ainf"] for pt in points] + [pt["implied_a1"] for pt in points]
    aggregates = {
        "max_implied_ainf": max((pt["implied_ainf"] for pt in points if np.isfinite(pt["implied_ainf"])), default=0.0),
        "max_implied_a1": max((pt["implied_a1"] for pt in points if np.isfinite(pt["implied_a1"])), default=0.0),
        "fujii": fujii,
        "a1": a1,
    }
    contracts = {"all_finite": all(np.isfinite(v) for v in vals)}
    return VerificationReport("corollary", _base_metadata(cfg, mode), points, aggregates, contracts)


# --------------------------------------------------------------------------
# two-weight maximal inequality


def verify_two_weight(cfg: ExperimentConfig) -> VerificationReport:
    """Dual-exponent norm of the log-bump maximal of f over the constructed
    majorant weight, against the structural factor times the norm of f/w."""
    if not cfg.p_list or not cfg.delta_list:
        raise DomainError("empty sweep")
    grid = cfg.grid()
    mode = cfg.resolved_mode(grid.n)
    f = cfg.build_input(grid)
    bs = cfg.build_symbols(grid)
    w = cfg.build_weight(grid)
    inv_s = bs.inv_s_sum
    h = grid.h
    mf = orlicz_maximal(f, phi_rho(inv_s), mode)

    points = []
    for p, dlt in itertools.product(cfg.p_list, cfg.delta_list):
        pprime = _conjugate(p)
        exponent = (1.0 + inv_s) * p - 1.0 + dlt
        v = orlicz_maximal(w.f, phi_rho(exponent), mode)
        lhs = lp_norm(mf.values / v.values, v.values, pprime, h)
        factor = p ** (1.0 + inv_s) * ((p - 1.0) / dlt) ** (1.0 / pprime)
        rhs = factor * lp_norm(f.values / w.values, w.values, pprime, h)
        implied, flags = _ratio(lhs, rhs)
        points.append(
            {
                "p": p,
                "delta": dlt,
                "inv_s": inv_s,
                "exponent": exponent,
                "lhs": lhs,
                "rhs": rhs,
                "implied_constant": implied,
                "flags": flags,
            }
        )
    implieds = [pt["implied_constant"] for pt in points]
    aggregates = {
        "max_implied": max((c for c in implieds if np.isfinite(c)), default=0.0),
        "inv_s": inv_s,
    }
    contracts = {
        "all_finite": all(np.isfinite(c) for c in implieds),
        "zero_rhs_only_for_zero_lhs": all("rhs-zero-lhs-positive" not in pt["flags"] for pt in points),
    }
    return VerificationReport("two-weight", _base_metadata(cfg, mode), points, aggregates, contracts)


# --------------------------------------------------------------------------
# pointwise sharp-function bound


def verify_sharp_pointwise(cfg: ExperimentConfig) -> VerificationReport:
    """Pointwise ratio of the sharp-power maximal of the commutator to the
    symbol-weighted maximal sum, per (delta, eps) with delta < eps."""
    grid = cfg.grid()
    mode = cfg.resolved_mode(grid.n)
    f = cfg.build_input(grid)
    check_margin(f)
    bs = cfg.build_symbols(grid)
    k = bs.k
    inv_s = bs.inv_s_sum
    normb = bs.norm_product()
    pairs = [(d, e) for d in cfg.delta_list for e in cfg.eps_list if d < e]
    if not pairs:
        raise DomainError("need at least one pair with delta < eps")

    T = multilinear_commutator(bs.symbols, f)
    base = normb * orlicz_maximal(f, phi_rho(inv_s), mode).values

    # commutators over complements, shared across (delta, eps) pairs
    complements = []
    for size in range(1, k + 1):
        for sigma in itertools.combinations(range(k), size):
            comp = [i for i in range(k) if i not in sigma]
            complements.append(
                (sigma, multilinear_commutator([bs.symbols[i] for i in comp], f))
            )

    points = []
    for dlt, eps in pairs:
        lhs = sharp_power(T, dlt, mode).values
        rhs = base.copy()
        for sigma, t_comp in complements:
            rhs = rhs + bs.subset_norm_product(sigma) * power_maximal(t_comp, eps, mode).values
        flags = []
        if float(np.max(rhs)) == 0.0:
            ratio = 0.0 if float(np.max(lhs)) == 0.0 else math.inf
            flags.append("rhs-zero")
        else:
            ratio = float(np.max(lhs / rhs))
        points.append(
            {
                "delta": dlt,
                "eps": eps,
                "k": k,
                "max_pointwise_ratio": ratio,
                "flags": flags,
            }
        )
    ratios = [pt["max_pointwise_ratio"] for pt in points]
    aggregates = {"max_ratio": max(ratios), "inv_s": inv_s, "symbol_norm_product": normb}
    contracts = {"all_finite": all(np.isfinite(r) for r in ratios)}
    return VerificationReport("sharp", _base_metadata(cfg, mode), points, aggregates, contracts)


# --------------------------------------------------------------------------
# dyadic maximal lemmas and the weak-type maximal bound


def verify_maximal_lemmas(cfg: ExperimentConfig) -> VerificationReport:
    """Three dyadic-flavored bounds: norm vs sharp-power norm, power
    maximal vs its sharp counterpart, and the weak-type bound of the plain
    maximal by the integral of |f| against Mw."""
    grid = cfg.grid()
    mode = cfg.resolved_mode(grid.n)
    f = cfg.build_input(grid)
    w = cfg.build_weight(grid)
    h = grid.h
    fujii = w.fujii(DYADIC)
    points = []

    for p, dlt in itertools.product(cfg.p_list, cfg.delta_list):
        lhs = lp_norm(f.values, w.values, p, h)
        sharp = sharp_power(f, dlt, DYADIC)
        rhs_norm = lp_norm(sharp.values, w.values, p, h)
        flags = []
        if rhs_norm < 1e-14 * max(1.0, lhs):
            # constant inputs have vanishing oscillation: outside the
            # lemma's finite-level-set hypothesis on a bounded domain
            flags.append("degenerate-constant-input")
            implied = 0.0
        else:
            implied = lhs / (p * fujii * rhs_norm)
        points.append(
            {"lemma": "norm-vs-sharp", "p": p, "delta": dlt, "lhs": lhs,
             "rhs": p * fujii * rhs_norm, "implied_constant": implied, "flags": flags}
        )

    for p, eps in itertools.product(cfg.p_list, cfg.eps_list):
        m_eps = power_maximal(f, eps, DYADIC)
        lhs = lp_norm(m_eps.values, w.values, p, h)
        sharp = sharp_power(f, eps, DYADIC)
        rhs_norm = lp_norm(sharp.values, w.values, p, h)
        flags = []
        if rhs_norm < 1e-14 * max(1.0, lhs):
            flags.append("degenerate-constant-input")
            implied = 0.0
        else:
            implied = lhs / (p * fujii * rhs_norm)
        points.append(
            {"lemma": "power-vs-sharp", "p": p, "eps": eps, "lhs": lhs,
             "rhs": p * fujii * rhs_norm, "implied_constant": implied, "flags": flags}
        )

    mf = hl_maximal(f, mode)
    mw = hl_maximal(w.f, mode)
    lhs_weak = weak_norm(mf, w.f)
    rhs_weak = float(np.sum(np.abs(f.values) * mw.values) * h)
    implied_weak, flags = _ratio(lhs_weak, rhs_weak)
    points.append(
        {"lemma": "weak-type-maximal", "lhs": lhs_weak, "rhs": rhs_weak,
         "implied_constant": implied_weak, "flags": flags}
    )

    per_lemma: dict[str, float] = {}
    for pt in points:
        if pt["flags"]:
            continue
        per_lemma[pt["lemma"]] = max(per_lemma.get(pt["lemma"], 0.0), pt["implied_constant"])
    aggregates = {"max_implied_per_lemma": per_lemma, "fujii": fujii}
    contracts = {
        "all_finite": all(np.isfinite(pt["implied_constant"]) for pt in points),
    }
    return VerificationReport("maximal-lemmas", _base_metadata(cfg, mode), points, aggregates, contracts)


THEOREMS: dict[str, Callable[[ExperimentConfig], VerificationReport]] = {
    "strong": verify_strong,
    "endpoint": verify_endpoint,
    "corollary": verify_corollary,
    "two-weight": verify_two_weight,
    "sharp": verify_sharp_pointwise,
    "maximal-lemmas": verify_maximal_lemmas,
}


def run_theorem(cfg: ExperimentConfig) -> VerificationReport:
    return THEOREMS[cfg.theorem](cfg)


# --------------------------------------------------------------------------
# parameter sweeps


_AXES = {
    "epsilon": "eps_list",
    "delta": "delta_list",
    "p": "p_list",
    "lambda": "lambda_list",
    "resolution": "resolution_list",
}


def sweep(cfg: ExperimentConfig, axis: str) -> dict:
    """Cross-product execution along one axis; returns rows plus fits.

    Each axis value pins the corresponding config list to a single entry
    (resolution swaps the grid depth) and reruns the theorem verifier; rows
    carry the axis coordinate, the verifier's sweep coordinates and the
    report values.
    """
    if axis not in _AXES:
        raise DomainError(f"unknown axis {axis!r}; choose from {sorted(_AXES)}")
    attr = _AXES[axis]
    values = list(getattr(cfg, attr)) if attr != "resolution_list" else list(
        cfg.resolution_list or []
    )
    if not values:
        raise DomainError(f"axis {axis!r} has no values in the config")

    rows = []
    reports = []
    for val in values:
        sub = ExperimentConfig.from_dict(cfg.to_dict())
        if axis == "resolution":
            sub.levels = int(val)
        else:
            setattr(sub, attr, [val])
        rep = run_theorem(sub)
        reports.append((val, rep))
        for pt in rep.points:
            row = {"axis": axis, "axis_value": val}
            row.update(pt)
            rows.append(row)

    aggregates: dict = {"axis": axis, "values": values, "theorem": cfg.theorem}
    if axis == "epsilon" and all(
        pt.get("lhs", 0) > 0 and pt.get("rhs0", 0) > 0 for _, rep in reports for pt in rep.points
    ):
        xs, ys = [], []
        for val, rep in reports:
            for pt in rep.points:
                xs.append(math.log(1.0 / float(val)))
                ys.append(math.log(pt["lhs"] / pt["rhs0"]))
        aggregates["slope"] = _fit_slope(xs, ys)
    if axis == "resolution" and len(reports) >= 2:
        value_keys = ("implied_constant", "max_pointwise_ratio", "implied_ainf", "implied_a1")
        skip = set(value_keys) | {"lhs", "rhs", "rhs0", "rhs_ainf", "rhs_a1", "flags"}

        def coord_key(pt: dict) -> tuple:
            return tuple(sorted((k, repr(v)) for k, v in pt.items() if k not in skip))

        drift = 0.0
        base = {coord_key(pt): pt for pt in reports[0][1].points}
        for _, rep in reports[1:]:
            for pt in rep.points:
                ref = base.get(coord_key(pt))
                if ref is None:
                    continue
                for vk in value_keys:
                    if vk in pt and vk in ref and np.isfinite(pt[vk]) and ref[vk] > 0:
                        drift = max(drift, abs(pt[vk] / ref[vk] - 1.0))
        aggregates["max_drift"] = drift
    return {"rows": rows, "aggregates": aggregates, "reports": reports}


def write_sweep_csv(result: dict, path) -> None:
    rows = result["rows"]
    cols: list[str] = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(cols)
        for row in rows:
            wr.writerow([_csv_cell(row.get(c)) for c in cols])


def write_sweep_json(result: dict, path) -> None:
    payload = {"aggregates": result["aggregates"], "rows": result["rows"]}
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
