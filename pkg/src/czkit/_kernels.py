"""Compiled inner loops for sliding-window Orlicz averages.

Every kernel solves, per window Q, the scalar equation

    (1/|Q|) sum_{i in Q} Phi(|f_i| / lam) = 1

for the window's Luxemburg scaling lam.  The objective is convex and
decreasing in log lam for both supported families (log-bump and
exponential), so Newton iteration started on the >= 1 side converges
monotonically; a warm start from the previous window length cuts it to a
few steps.  Stopping criterion is the contract used by the callers: the
returned lam has window average in [1 - tol, 1] (exactly 0 for an all-zero
window).

Windows are independent, so ``prange`` introduces no cross-thread
reductions and results are bit-reproducible run to run.
"""

from __future__ import annotations

import warnings

import numpy as np
from numba import NumbaWarning, njit, prange

# stale-TBB advisories from the threading-layer probe are environment
# noise; the workqueue fallback it selects is fine for these kernels
warnings.filterwarnings("ignore", message=".*TBB.*", category=NumbaWarning)

_NEWTON_CAP = 120  # convexity makes this unreachable in practice


@njit(cache=True, inline="always")
def _log_mean_and_slope(vals, logs, s, L, u, rho):
    """Window average of phi_rho(v/lam) at u = log lam, plus -d/du term."""
    num = 0.0
    den = 0.0
    for i in range(s, s + L):
        z = logs[i] - u
        if z > 0.0:
            p = (1.0 + z) ** rho
            num += vals[i] * p
            den += vals[i] * p / (1.0 + z)
        else:
            num += vals[i]
    scale = L * np.exp(u)
    return num / scale, rho * den / scale


@njit(cache=True, inline="always")
def _log_solve(vals, logs, s, L, rho, tol, warm):
    """Root of the log-family window equation; warm is a lam guess or 0."""
    tot = 0.0
    for i in range(s, s + L):
        tot += vals[i]
    a = tot / L
    if a == 0.0:
        return 0.0
    u = np.log(a)  # g(log a) >= 0 always: phi_rho(t) >= t
    if warm > a:
        u = np.log(warm)
    restarted = False
    while True:
        converged = False
        for _ in range(_NEWTON_CAP):
            mean, slope = _log_mean_and_slope(vals, logs, s, L, u, rho)
            g = mean - 1.0
            if g <= tol:
                if g < -tol:
                    break  # warm start overshot the root; restart below
                if g > 0.0:
                    gp = mean + slope
                    u += g / gp + 0.25 * tol / gp
                converged = True
                break
            u += g / (mean + slope)
        if converged or restarted:
            return np.exp(u)
        u = np.log(a)
        restarted = True


@njit(cache=True, parallel=True)
def log_norms_fixed_length(vals, logs, L, rho, tol, warm):
    """Luxemburg scalings for phi(rho) over every window of length L.

    warm holds per-start guesses (typically the length L-1 results); pass
    zeros to disable.
    """
    n = vals.shape[0]
    m = n - L + 1
    out = np.empty(m)
    for s in prange(m):
        out[s] = _log_solve(vals, logs, s, L, rho, tol, warm[s])
    return out


@njit(cache=True)
def log_norms_listed(vals, logs, starts, lengths, rho, tol):
    """Same solver over an explicit (start, length) interval list."""
    m = starts.shape[0]
    out = np.empty(m)
    for j in range(m):
        out[j] = _log_solve(vals, logs, starts[j], lengths[j], rho, tol, 0.0)
    return out


@njit(cache=True, inline="always")
def _exp_mean_and_slope(vals, s, L, lam, sexp):
    """Window average of expm1((v/lam)**s) and its -d/d(log lam) weight."""
    num = 0.0
    den = 0.0
    for i in range(s, s + L):
        if vals[i] > 0.0:
            y = (vals[i] / lam) ** sexp
            if y > 700.0:
                y = 700.0
            e = np.exp(y)
            num += e - 1.0
            den += e * y
    return num / L, sexp * den / L


@njit(cache=True, inline="always")
def _exp_solve(vals, s, L, sexp, tol, warm):
    """Root of the exponential-family window equation."""
    vmax = 0.0
    for i in range(s, s + L):
        if vals[i] > vmax:
            vmax = vals[i]
    if vmax == 0.0:
        return 0.0
    # g >= 0 at lam_lo (single largest element already forces the average
    # past 1) and the exponent stays <= log(1+L): no overflow on iterates.
    lam_lo = vmax / np.log(1.0 + L) ** (1.0 / sexp)
    lam = lam_lo
    if warm > lam_lo:
        lam = warm
    u = np.log(lam)
    restarted = False
    while True:
        converged = False
        for _ in range(_NEWTON_CAP):
            mean, slope = _exp_mean_and_slope(vals, s, L, np.exp(u), sexp)
            g = mean - 1.0
            if g <= tol:
                if g < -tol:
                    break
                if g > 0.0:
                    gp = slope
                    if gp < 1e-300:
                        gp = 1e-300
                    u += g / gp + 0.25 * tol / gp
                converged = True
                break
            u += g / slope
        if converged or restarted:
            return np.exp(u)
        u = np.log(lam_lo)
        restarted = True


@njit(cache=True, parallel=True)
def exp_norms_fixed_length(vals, L, sexp, tol, warm):
    n = vals.shape[0]
    m = n - L + 1
    out = np.empty(m)
    for s in prange(m):
        out[s] = _exp_solve(vals, s, L, sexp, tol, warm[s])
    return out


@njit(cache=True)
def exp_norms_listed(vals, starts, lengths, sexp, tol):
    m = starts.shape[0]
    out = np.empty(m)
    for j in range(m):
        out[j] = _exp_solve(vals, starts[j], lengths[j], sexp, tol, 0.0)
    return out


@njit(cache=True, inline="always")
def _exp_mean_and_slope_dev(b, s, L, mu, lam, sexp):
    """As _exp_mean_and_slope but on |b - mu| computed on the fly (no
    scratch buffer: allocations inside prange bodies are not thread-safe)."""
    num = 0.0
    den = 0.0
    for i in range(s, s + L):
        d = b[i] - mu
        if d < 0.0:
            d = -d
        if d > 0.0:
            y = (d / lam) ** sexp
            if y > 700.0:
                y = 700.0
            e = np.exp(y)
            num += e - 1.0
            den += e * y
    return num / L, sexp * den / L


@njit(cache=True, parallel=True)
def osc_exp_norms_listed(b, starts, lengths, sexp, tol):
    """Exponential-family scalings of the window oscillation |b - mean_Q b|."""
    m = starts.shape[0]
    out = np.empty(m)
    for j in prange(m):
        s = starts[j]
        L = lengths[j]
        mu = 0.0
        for i in range(s, s + L):
            mu += b[i]
        mu /= L
        vmax = 0.0
        for i in range(s, s + L):
            d = b[i] - mu
            if d < 0.0:
                d = -d
            if d > vmax:
                vmax = d
        if vmax == 0.0:
            out[j] = 0.0
            continue
        lam_lo = vmax / np.log(1.0 + L) ** (1.0 / sexp)
        u = np.log(lam_lo)
        restarted = False
        while True:
            converged = False
            for _ in range(_NEWTON_CAP):
                mean, slope = _exp_mean_and_slope_dev(b, s, L, mu, np.exp(u), sexp)
                g = mean - 1.0
                if g <= tol:
                    if g < -tol:
                        break
                    if g > 0.0:
                        gp = slope
                        if gp < 1e-300:
                            gp = 1e-300
                        u += g / gp + 0.25 * tol / gp
                    converged = True
                    break
                u += g / slope
            if converged or restarted:
                out[j] = np.exp(u)
                break
            u = np.log(lam_lo)
            restarted = True
    return out


@njit(cache=True, parallel=True)
def abs_deviation_means_fixed_length(vals, L):
    """Window averages of |f - f_Q| for every window of length L."""
    n = vals.shape[0]
    m = n - L + 1
    out = np.empty(m)
    for s in prange(m):
        mu = 0.0
        for i in range(s, s + L):
            mu += vals[i]
        mu /= L
        acc = 0.0
        for i in range(s, s + L):
            d = vals[i] - mu
            acc += d if d >= 0.0 else -d
        out[s] = acc / L
    return out


@njit(cache=True)
def abs_deviation_means_listed(vals, starts, lengths):
    m = starts.shape[0]
    out = np.empty(m)
    for j in range(m):
        s = starts[j]
        L = lengths[j]
        mu = 0.0
        for i in range(s, s + L):
            mu += vals[i]
        mu /= L
        acc = 0.0
        for i in range(s, s + L):
            d = vals[i] - mu
            acc += d if d >= 0.0 else -d
        out[j] = acc / L
    return out
