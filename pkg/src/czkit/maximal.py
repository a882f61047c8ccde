"""Averaging maximal operators: plain, power, sharp and their dyadic
variants, plus the log-vs-power domination check.

Window averages reduce to prefix sums, so the all-intervals plain maximal
costs O(n^2) cheap operations; the sharp variants sum |f - f_Q| per window
in compiled loops.  Level sets of grid functions are unions of cells and
their weighted measures are exact sums.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .grid import GridFunction
from .orlicz import (
    ALL_INTERVALS,
    AUTO,
    DYADIC,
    _cellwise_max_fixed_length,
    orlicz_maximal,
    resolve_mode,
)
from .young import DomainError, phi_rho

__all__ = [
    "hl_maximal",
    "power_maximal",
    "sharp_maximal",
    "sharp_power",
    "lr_maximal",
    "check_loglog_vs_lr",
    "weighted_measure_above",
    "weak_norm",
]


def _window_means(prefix: np.ndarray, L: int) -> np.ndarray:
    """Averages of every length-L window from the prefix-sum array."""
    return (prefix[L:] - prefix[:-L]) / L


def _hl_all(vals: np.ndarray) -> np.ndarray:
    n = vals.shape[0]
    prefix = np.concatenate(([0.0], np.cumsum(vals)))
    out = np.full(n, -np.inf)
    for L in range(1, n + 1):
        _cellwise_max_fixed_length(_window_means(prefix, L), L, n, out)
    return out


def _hl_dyadic(vals: np.ndarray) -> np.ndarray:
    n = vals.shape[0]
    levels = int(round(math.log2(n)))
    out = vals.copy()
    level = vals.copy()
    for _ in range(levels):
        level = 0.5 * (level[0::2] + level[1::2])
        np.maximum(out, np.repeat(level, n // level.shape[0]), out=out)
    return out


def hl_maximal(f: GridFunction, mode: str = AUTO) -> GridFunction:
    """Per-cell supremum of window averages of |f| over intervals
    containing the cell."""
    vals = np.abs(f.values)
    mode = resolve_mode(mode, f.grid.n)
    out = _hl_all(vals) if mode == ALL_INTERVALS else _hl_dyadic(vals)
    return f.with_values(out)


def power_maximal(f: GridFunction, eps: float, mode: str = AUTO) -> GridFunction:
    """M(|f|**eps)**(1/eps), exact composition."""
    if eps <= 0:
        raise DomainError("power exponent must be positive")
    powered = f.with_values(np.abs(f.values) ** eps)
    return f.with_values(hl_maximal(powered, mode).values ** (1.0 / eps))


def lr_maximal(f: GridFunction, r: float, mode: str = AUTO) -> GridFunction:
    """Power maximal restricted to exponents r >= 1 (the L^r scale)."""
    if r < 1:
        raise DomainError("lr_maximal requires r >= 1")
    return power_maximal(f, r, mode)


def _sharp_all(vals: np.ndarray) -> np.ndarray:
    n = vals.shape[0]
    out = np.full(n, -np.inf)
    for L in range(1, n + 1):
        devs = _kernels.abs_deviation_means_fixed_length(vals, L)
        _cellwise_max_fixed_length(devs, L, n, out)
    return out


def _sharp_dyadic(vals: np.ndarray) -> np.ndarray:
    n = vals.shape[0]
    levels = int(round(math.log2(n)))
    out = np.zeros(n)
    for gen in range(levels + 1):
        L = n >> gen
        starts = np.arange(1 << gen, dtype=np.int64) * L
        lengths = np.full(1 << gen, L, dtype=np.int64)
        devs = _kernels.abs_deviation_means_listed(vals, starts, lengths)
        np.maximum(out, np.repeat(devs, L), out=out)
    return out


def sharp_maximal(f: GridFunction, mode: str = AUTO) -> GridFunction:
    """Per-cell supremum of mean oscillation |f - f_Q| (signed f, no
    absolute value inside the average's centering)."""
    mode = resolve_mode(mode, f.grid.n)
    vals = f.values
    out = _sharp_all(vals) if mode == ALL_INTERVALS else _sharp_dyadic(vals)
    return f.with_values(out)


def sharp_power(f: GridFunction, delta: float, mode: str = AUTO) -> GridFunction:
    """Sharp maximal of |f|**delta, raised back by 1/delta."""
    if not (0 < delta <= 1):
        raise DomainError("delta must lie in (0, 1]")
    powered = f.with_values(np.abs(f.values) ** delta)
    return f.with_values(sharp_maximal(powered, mode).values ** (1.0 / delta))


def check_loglog_vs_lr(w, eps: float, alpha: float, mode: str = AUTO) -> dict:
    """Worst cell ratio of the log-bump maximal against the rescaled power
    maximal: M_{phi(1+eps)} w <= alpha**-(1+eps) * M_{L^{1+alpha(1+eps)}} w.

    Accepts a Weight or a plain GridFunction.
    """
    if not (0 < eps < 1):
        raise DomainError("eps must lie in (0, 1)")
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if hasattr(w, "f"):
        w = w.f
    mode = resolve_mode(mode, w.grid.n)
    lhs = orlicz_maximal(w, phi_rho(1.0 + eps), mode).values
    r = 1.0 + alpha * (1.0 + eps)
    rhs = lr_maximal(w, r, mode).values / alpha ** (1.0 + eps)
    ratios = lhs / rhs
    worst = int(np.argmax(ratios))
    return {
        "max_ratio": float(ratios[worst]),
        "argmax_cell": worst,
        "eps": eps,
        "alpha": alpha,
        "r": r,
        "mode": mode,
    }


def weighted_measure_above(g: GridFunction, w: GridFunction, level: float) -> float:
    """w-measure of the strict level set {|g| > level}, exact cell sum."""
    g.same_grid(w)
    mask = np.abs(g.values) > level
    return float(np.sum(w.values[mask]) * g.grid.h)


def weak_norm(g: GridFunction, w: GridFunction) -> float:
    """sup over levels of level * w({|g| > level}).

    The supremum over all positive levels is attained at a jump of the
    (piecewise-constant) distribution function, so scanning the distinct
    values of |g| is exact.
    """
    g.same_grid(w)
    a = np.abs(g.values)
    order = np.argsort(a, kind="stable")[::-1]
    sorted_vals = a[order]
    cum_w = np.cumsum(w.values[order]) * g.grid.h
    # level just below sorted_vals[i] captures the first i+1 cells
    products = np.where(sorted_vals > 0, sorted_vals * cum_w, 0.0)
    return float(np.max(products, initial=0.0))
