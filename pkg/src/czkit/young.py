"""Scalar calculus of the Young-function families used throughout.

Six parametric families are supported:

    phi(rho)      t * (1 + log+ t)**rho          (log-bump scale; rho >= 0)
    psi(s)        exp(t**s) - 1                  (exponential scale; s > 0)
    x(rho)        t / (1 + log+ t)**rho          (inverse surrogate of phi)
    xtilde(rho)   t / (1 + log+(t/rho**rho))**rho   (shifted surrogate; rho > 1)
    power(r)      t**r                           (r >= 1)
    identity      t

log+ t = max(log t, 0) with log+ 0 = 0; every family maps 0 to 0.  phi,
psi (s >= 1), power and identity are Young functions (convex, strictly
increasing, unbounded); x and xtilde are the sandwich surrogates whose
two-sided bounds are verified by ``check_lemma_42``/``check_lemma_43``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Family",
    "YoungSpec",
    "phi_rho",
    "psi_s",
    "x_rho",
    "x_tilde_rho",
    "power",
    "identity",
    "evaluate",
    "invert",
    "check_lemma_42",
    "check_lemma_43",
    "check_scalar_product_bound",
    "inverse_product_ratio",
    "DomainError",
    "ConfigError",
    "PreconditionError",
    "EXP_OVERFLOW",
]

# exp(t**s) leaves double range shortly after t**s ~ 709; evaluation past
# this returns +inf and callers treat +inf as "average exceeds 1".
EXP_OVERFLOW = 700.0


class DomainError(ValueError):
    pass


class ConfigError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class Family(str, Enum):
    PHI = "phi"
    PSI = "psi"
    X = "x"
    XTILDE = "xtilde"
    POWER = "power"
    IDENTITY = "identity"


@dataclass(frozen=True)
class YoungSpec:
    family: Family
    param: float = 1.0

    def __post_init__(self):
        p = self.param
        if not np.isfinite(p):
            raise DomainError("parameter must be finite")
        if self.family is Family.PHI and p < 0:
            raise DomainError("phi requires rho >= 0")
        if self.family is Family.PSI and p <= 0:
            raise DomainError("psi requires s > 0")
        if self.family is Family.X and p < 0:
            raise DomainError("x requires rho >= 0")
        if self.family is Family.XTILDE and p <= 1:
            raise DomainError("xtilde requires rho > 1")
        if self.family is Family.POWER and p < 1:
            raise DomainError("power requires r >= 1")

    @property
    def is_young(self) -> bool:
        """Convex, strictly increasing, 0 at 0, unbounded."""
        if self.family in (Family.PHI, Family.POWER, Family.IDENTITY):
            return True
        if self.family is Family.PSI:
            return self.param >= 1  # 0 < s < 1 evaluates but is not convex
        return False

    @property
    def is_increasing(self) -> bool:
        """Strict monotonicity on [0, inf); the x-type surrogates lose it
        once rho exceeds 1 (they dip past t = 1)."""
        if self.family in (Family.X,):
            return self.param <= 1
        if self.family is Family.XTILDE:
            return False
        return True

    def describe(self) -> str:
        if self.family is Family.IDENTITY:
            return "identity"
        return f"{self.family.value}({self.param:g})"


def phi_rho(rho: float) -> YoungSpec:
    return YoungSpec(Family.PHI, float(rho))


def psi_s(s: float) -> YoungSpec:
    return YoungSpec(Family.PSI, float(s))


def x_rho(rho: float) -> YoungSpec:
    return YoungSpec(Family.X, float(rho))


def x_tilde_rho(rho: float) -> YoungSpec:
    return YoungSpec(Family.XTILDE, float(rho))


def power(r: float) -> YoungSpec:
    return YoungSpec(Family.POWER, float(r))


def identity() -> YoungSpec:
    return YoungSpec(Family.IDENTITY, 1.0)


def _log_plus(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(t > 1.0, np.log(np.maximum(t, 1.0)), 0.0)
    return out


def evaluate(spec: YoungSpec, t):
    """Closed-form value; accepts scalars or arrays of nonnegative reals."""
    arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("evaluation requires finite t >= 0")
    fam, p = spec.family, spec.param
    if fam is Family.IDENTITY:
        out = arr.copy()
    elif fam is Family.POWER:
        out = arr**p
    elif fam is Family.PHI:
        out = arr * (1.0 + _log_plus(arr)) ** p
    elif fam is Family.X:
        out = arr / (1.0 + _log_plus(arr)) ** p
    elif fam is Family.XTILDE:
        t_rho = p**p
        out = arr / (1.0 + _log_plus(arr / t_rho)) ** p
    elif fam is Family.PSI:
        z = arr**p
        out = np.where(z > EXP_OVERFLOW, np.inf, np.expm1(np.minimum(z, EXP_OVERFLOW)))
    else:  # pragma: no cover
        raise DomainError(f"unknown family {fam}")
    if np.isscalar(t) or arr.ndim == 0:
        return float(out)
    return out


def invert(spec: YoungSpec, y: float, tol: float = 1e-12) -> float:
    """Solve evaluate(spec, t) = y by bracketing plus bisection.

    The bracket grows geometrically from [0, 1] until it encloses y, which
    always terminates because the admitted families are unbounded.  Returns
    t with |evaluate(t) - y| <= tol * max(1, y).
    """
    if tol <= 0:
        raise ConfigError("tol must be positive")
    if not np.isfinite(y) or y < 0:
        raise DomainError("invert requires finite y >= 0")
    if not spec.is_increasing:
        raise DomainError(f"{spec.describe()} is not strictly increasing; cannot invert")
    if y == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while evaluate(spec, hi) < y:
        lo = hi
        hi *= 2.0
        if hi > 1e300:
            raise DomainError("bracket expansion failed")
    target = tol * max(1.0, y)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = evaluate(spec, mid)
        if abs(v - y) <= target:
            return mid
        if v < y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def check_lemma_42(t: float, rho: float) -> tuple[float, float, float]:
    """Sandwich for x(rho) composed with phi(rho).

    Returns ((1/(1+rho))**rho * t, x_rho(phi_rho(t)), t); the middle value
    is bounded by the outer two for every t >= 0, rho > 0.
    """
    if not np.isfinite(t) or t < 0:
        raise DomainError("t must be finite and >= 0")
    if not np.isfinite(rho) or rho <= 0:
        raise DomainError("rho must be positive")
    a = evaluate(phi_rho(rho), t)
    mid = evaluate(x_rho(rho), a)
    lower = (1.0 / (1.0 + rho)) ** rho * t
    return (lower, mid, t)


def check_lemma_43(t: float, rho: float) -> tuple[float, float, float]:
    """Sandwich for phi(rho) composed with xtilde(rho), rho > 1.

    Returns ((1 - 1/e)**rho * t, phi_rho(xtilde_rho(t)), t*(1 + rho log rho)**rho).
    """
    if not np.isfinite(t) or t < 0:
        raise DomainError("t must be finite and >= 0")
    if not np.isfinite(rho) or rho <= 1:
        raise DomainError("rho must exceed 1")
    mid = evaluate(phi_rho(rho), evaluate(x_tilde_rho(rho), t))
    lower = (1.0 - 1.0 / math.e) ** rho * t
    upper = t * (1.0 + rho * math.log(rho)) ** rho
    return (lower, mid, upper)


def inverse_product_ratio(
    specs: list[YoungSpec],
    spec0: YoungSpec,
    ts: np.ndarray | None = None,
    tol: float = 1e-10,
) -> float:
    """Largest ratio of prod_i specs[i]^{-1}(t) to spec0^{-1}(t) on a
    log-spaced t-grid.

    The returned value is the smallest kappa (up to grid resolution) for
    which the inverse-domination hypothesis of the product bound holds on
    the sampled points.
    """
    if ts is None:
        ts = np.logspace(-6, 6, 49)
    worst = 0.0
    for t in ts:
        prod = 1.0
        for sp in specs:
            prod *= invert(sp, float(t), tol)
        denom = invert(spec0, float(t), tol)
        if denom <= 0:
            continue
        worst = max(worst, prod / denom)
    return worst


def check_scalar_product_bound(
    specs: list[YoungSpec],
    kappa: float,
    xs: list[float],
    spec0: YoungSpec | None = None,
) -> tuple[float, float]:
    """Product-vs-sum bound: spec0(prod xs / kappa) <= sum_i specs[i](xs[i]).

    The caller asserts the inverse condition prod specs[i]^{-1} <= kappa *
    spec0^{-1}; it is spot-checked on a log-spaced grid and a violation
    (beyond 0.1% slack) raises PreconditionError.  spec0 defaults to the
    identity.
    """
    if spec0 is None:
        spec0 = identity()
    if len(specs) != len(xs) or not specs:
        raise ConfigError("need one x per spec, at least one factor")
    if kappa <= 0:
        raise ConfigError("kappa must be positive")
    measured = inverse_product_ratio(specs, spec0)
    if measured > kappa * (1.0 + 1e-3):
        raise PreconditionError(
            f"inverse condition fails on the spot-check grid: "
            f"measured kappa {measured:.6g} > supplied {kappa:.6g}"
        )
    prod = 1.0
    for x in xs:
        if not np.isfinite(x) or x < 0:
            raise DomainError("factors must be finite and >= 0")
        prod *= x
    lhs = evaluate(spec0, prod / kappa)
    rhs = float(sum(evaluate(sp, x) for sp, x in zip(specs, xs)))
    return (lhs, rhs)
