"""Muckenhoupt-type weight constants and the sharp reverse Hölder check.

All suprema range over grid-aligned subintervals of the domain (every
(start, length) pair, or the dyadic tree for the characteristic-function
maximal inside the A-infinity constant when asked).  Discrete constants
are consequently lower bounds of their continuum counterparts; checks
that place a weight constant on the right-hand side of an inequality may
under-report that side, which reports flag by running two resolutions.

The threshold exponent of the reverse Hölder inequality contains a
structural constant that is only asserted to exist; ``calibrated_tau``
returns the value frozen in the package data, produced by binary search
over the generator menu (smallest value passing everywhere, doubled).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from numba import njit, prange

from .grid import GridFunction, UniformGrid1D
from .orlicz import ALL_INTERVALS, AUTO, DYADIC, resolve_mode
from .young import DomainError

__all__ = [
    "Weight",
    "a1_constant",
    "ap_constant",
    "fujii_constant",
    "reverse_holder_check",
    "make_weight",
    "generator_menu",
    "calibrated_tau",
    "calibrate_tau",
]

_MENU = (
    ("constant", {}),
    ("step", {"low": 1.0, "high": 2.0}),
    ("step", {"low": 1.0, "high": 8.0}),
    ("power", {"alpha": -0.5}),
    ("power", {"alpha": -0.25}),
    ("power", {"alpha": 0.5}),
    ("loglike", {}),
    ("random-ainf", {"seed": 11, "osc_bound": 1.0}),
    ("random-ainf", {"seed": 23, "osc_bound": 2.0}),
)


@dataclass
class Weight:
    """Strictly positive grid function with lazily cached constants."""

    f: GridFunction
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if np.any(self.f.values <= 0):
            raise DomainError("weights must be strictly positive on the grid")

    @property
    def grid(self) -> UniformGrid1D:
        return self.f.grid

    @property
    def values(self) -> np.ndarray:
        return self.f.values

    def a1(self, mode: str = ALL_INTERVALS) -> float:
        key = ("a1", mode)
        if key not in self._cache:
            self._cache[key] = a1_constant(self, mode)
        return self._cache[key]

    def ap(self, p: float, mode: str = ALL_INTERVALS) -> float:
        key = ("ap", float(p), mode)
        if key not in self._cache:
            self._cache[key] = ap_constant(self, p, mode)
        return self._cache[key]

    def fujii(self, mode: str = DYADIC) -> float:
        key = ("fujii", mode)
        if key not in self._cache:
            self._cache[key] = fujii_constant(self, mode)
        return self._cache[key]


def _as_weight(w) -> Weight:
    if isinstance(w, Weight):
        return w
    return Weight(w)


def _sliding_min_table(v: np.ndarray) -> list[np.ndarray]:
    """Sparse doubling table: table[k][s] = min of v[s : s + 2**k]."""
    table = [v]
    k = 1
    while (1 << k) <= v.shape[0]:
        prev = table[-1]
        half = 1 << (k - 1)
        table.append(np.minimum(prev[:-half], prev[half:]))
        k += 1
    return table


def _window_mins(table: list[np.ndarray], L: int) -> np.ndarray:
    k = L.bit_length() - 1
    block = 1 << k
    t = table[k]
    m = table[0].shape[0] - L + 1
    return np.minimum(t[:m], t[L - block : L - block + m])


def a1_constant(w, mode: str = ALL_INTERVALS) -> float:
    """sup over intervals of (average of w) / (min of w)."""
    w = _as_weight(w)
    mode = resolve_mode(mode, w.grid.n)
    v = w.values
    n = v.shape[0]
    best = 1.0
    if mode == ALL_INTERVALS:
        prefix = np.concatenate(([0.0], np.cumsum(v)))
        table = _sliding_min_table(v)
        for L in range(1, n + 1):
            means = (prefix[L:] - prefix[:-L]) / L
            mins = _window_mins(table, L)
            best = max(best, float(np.max(means / mins)))
    else:
        level = v.copy()
        mins = v.copy()
        best = 1.0
        while level.shape[0] >= 1:
            best = max(best, float(np.max(level / mins)))
            if level.shape[0] == 1:
                break
            level = 0.5 * (level[0::2] + level[1::2])
            mins = np.minimum(mins[0::2], mins[1::2])
    return best


def ap_constant(w, p: float, mode: str = ALL_INTERVALS) -> float:
    """sup over intervals of avg(w) * avg(w**(-1/(p-1)))**(p-1)."""
    if not np.isfinite(p) or p <= 1:
        raise DomainError("ap_constant requires finite p > 1")
    w = _as_weight(w)
    mode = resolve_mode(mode, w.grid.n)
    v = w.values
    dual = v ** (-1.0 / (p - 1.0))
    n = v.shape[0]
    best = 1.0
    if mode == ALL_INTERVALS:
        pw = np.concatenate(([0.0], np.cumsum(v)))
        pd = np.concatenate(([0.0], np.cumsum(dual)))
        for L in range(1, n + 1):
            means = (pw[L:] - pw[:-L]) / L
            duals = (pd[L:] - pd[:-L]) / L
            best = max(best, float(np.max(means * duals ** (p - 1.0))))
    else:
        lw, ld = v.copy(), dual.copy()
        while True:
            best = max(best, float(np.max(lw * ld ** (p - 1.0))))
            if lw.shape[0] == 1:
                break
            lw = 0.5 * (lw[0::2] + lw[1::2])
            ld = 0.5 * (ld[0::2] + ld[1::2])
    return best


@njit(cache=True, parallel=True)
def _fujii_all_fixed_length(v, L):
    """For every window Q of length L: mean over Q of the localized
    maximal function of v within Q, divided by the mean of v over Q."""
    n = v.shape[0]
    m = n - L + 1
    out = np.empty(m)
    for s in prange(m):
        prefix = np.empty(L + 1)
        prefix[0] = 0.0
        for i in range(L):
            prefix[i + 1] = prefix[i] + v[s + i]
        # suf[a*(L+1)+x] = max over b in (x, L] of mean v[a:b], built backward
        suf = np.empty((L, L + 1))
        for a in range(L):
            running = -1.0
            for b in range(L, a, -1):
                mean_ab = (prefix[b] - prefix[a]) / (b - a)
                if mean_ab > running:
                    running = mean_ab
                suf[a, b - 1] = running
        total = 0.0
        for x in range(L):
            best = -1.0
            for a in range(x + 1):
                if suf[a, x] > best:
                    best = suf[a, x]
            total += best
        out[s] = total / prefix[L]
    return out


def fujii_constant(w, mode: str = DYADIC) -> float:
    """sup over intervals Q of mean_Q M(chi_Q w) / mean_Q w.

    For x in Q the maximal function of the truncated weight is attained on
    subintervals of Q, so the computation localizes.  The dyadic mode
    restricts both the outer supremum and the inner maximal to the tree
    and costs O(n log n); the all-intervals mode is exact but O(n^4)-ish
    and intended for small grids.
    """
    w = _as_weight(w)
    v = w.values
    n = v.shape[0]
    if mode == AUTO:
        mode = DYADIC
    if mode == DYADIC:
        levels = int(round(math.log2(n)))
        best = 1.0
        suffix_max = v.copy()  # per-cell max of dyadic-ancestor averages, fine to coarse
        level = v.copy()
        for gen in range(levels, -1, -1):
            L = n >> gen
            if gen < levels:
                level = 0.5 * (level[0::2] + level[1::2])
                np.maximum(suffix_max, np.repeat(level, L), out=suffix_max)
            sums = suffix_max.reshape(-1, L).sum(axis=1)
            wsums = v.reshape(-1, L).sum(axis=1)
            best = max(best, float(np.max(sums / wsums)))
        return best
    if mode != ALL_INTERVALS:
        raise ValueError(f"unknown mode {mode!r}")
    best = 1.0
    for L in range(1, n + 1):
        best = max(best, float(np.max(_fujii_all_fixed_length(v, L))))
    return best


def reverse_holder_check(w, tau: float, mode: str = DYADIC) -> dict:
    """Worst ratio of (avg_Q w**r)**(1/r) to 2 avg_Q w at the threshold
    exponent r = 1 + 1/(tau * [w]_fujii); at and beyond the calibrated tau
    the ratio stays <= 1 over the generator menu."""
    if tau <= 0:
        raise DomainError("tau must be positive")
    w = _as_weight(w)
    fujii = w.fujii(mode)
    r = 1.0 + 1.0 / (tau * fujii)
    v = w.values
    n = v.shape[0]
    pr = np.concatenate(([0.0], np.cumsum(v**r)))
    pw = np.concatenate(([0.0], np.cumsum(v)))
    best = -np.inf
    arg = (0, 0)
    for L in range(1, n + 1):
        lhs = ((pr[L:] - pr[:-L]) / L) ** (1.0 / r)
        rhs = 2.0 * (pw[L:] - pw[:-L]) / L
        ratios = lhs / rhs
        j = int(np.argmax(ratios))
        if ratios[j] > best:
            best = float(ratios[j])
            arg = (j, L)
    return {
        "max_ratio": best,
        "r_w": r,
        "fujii": fujii,
        "tau": tau,
        "fujii_mode": mode,
        "argmax_start": arg[0],
        "argmax_length": arg[1],
    }


def make_weight(kind: str, grid: UniformGrid1D, **params) -> Weight:
    """Test-weight generator menu.

    power(alpha) needs alpha in (-1, 1) for local integrability; alpha in
    (-1, 0] keeps it A_1 and alpha in (-1, p-1) keeps it A_p.  Power and
    loglike weights are regularized at the origin cell by midpoint
    evaluation (midpoints of symmetric power-of-two grids never hit 0).
    """
    x = grid.midpoints
    if kind == "constant":
        c = float(params.get("c", 1.0))
        if c <= 0:
            raise DomainError("constant weight needs c > 0")
        vals = np.full(grid.n, c)
    elif kind == "step":
        low = float(params.get("low", 1.0))
        high = float(params.get("high", 2.0))
        if low <= 0 or high <= 0:
            raise DomainError("step levels must be positive")
        split = float(params.get("split", 0.5 * (grid.a + grid.b)))
        vals = np.where(x < split, low, high)
    elif kind == "power":
        alpha = float(params["alpha"])
        if not (-1.0 < alpha < 1.0):
            raise DomainError(f"power weight needs alpha in (-1, 1), got {alpha}")
        vals = np.abs(x) ** alpha
    elif kind == "loglike":
        scale = float(params.get("scale", 1.0))
        vals = 1.0 + np.where(np.abs(x) < scale, np.log(scale / np.abs(x)), 0.0)
    elif kind == "random-ainf":
        seed = int(params.get("seed", 0))
        bound = float(params.get("osc_bound", 1.0))
        if bound <= 0:
            raise DomainError("oscillation bound must be positive")
        rng = np.random.default_rng(seed)
        walk = np.cumsum(rng.standard_normal(grid.n))
        walk -= walk.mean()
        top = np.max(np.abs(walk))
        if top > 0:
            walk *= bound / top
        vals = np.exp(walk)
    else:
        raise DomainError(f"unknown weight kind {kind!r}")
    return Weight(GridFunction(grid, vals))


def generator_menu(grid: UniformGrid1D) -> list[tuple[str, dict, Weight]]:
    return [(kind, dict(params), make_weight(kind, grid, **params)) for kind, params in _MENU]


def calibrate_tau(levels: int = 10, a: float = -1.0, b: float = 1.0, fujii_mode: str = DYADIC) -> dict:
    """Binary search for the smallest tau with max reverse-Hölder ratio <= 1
    across the generator menu, then double it as the frozen safety value."""
    grid = UniformGrid1D(a, b, levels)
    menu = generator_menu(grid)

    def menu_ok(tau: float) -> bool:
        return all(reverse_holder_check(w, tau, fujii_mode)["max_ratio"] <= 1.0 for _, _, w in menu)

    lo, hi = 0.25, 4.0
    while not menu_ok(hi):
        hi *= 2.0
        if hi > 1e6:
            raise RuntimeError("tau calibration failed to bracket")
    while menu_ok(lo):
        hi = lo
        lo *= 0.5
        if lo < 1e-6:
            break
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if menu_ok(mid):
            hi = mid
        else:
            lo = mid
    return {
        "tau": 2.0 * hi,
        "tau_minimal": hi,
        "safety_factor": 2.0,
        "levels": levels,
        "domain": [a, b],
        "fujii_mode": fujii_mode,
    }


def calibrated_tau() -> float:
    """Frozen threshold constant for the reverse Hölder check."""
    data = resources.files("czkit").joinpath("data/calibration.json").read_text()
    return float(json.loads(data)["tau"])
