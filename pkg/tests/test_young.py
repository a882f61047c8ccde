import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from czkit import young
from czkit.young import (
    ConfigError,
    DomainError,
    Family,
    PreconditionError,
    YoungSpec,
    check_lemma_42,
    check_lemma_43,
    check_scalar_product_bound,
    evaluate,
    identity,
    invert,
    phi_rho,
    power,
    psi_s,
    x_rho,
    x_tilde_rho,
)

E = math.e


# --- evaluation ------------------------------------------------------------


def test_log_bump_values():
    assert evaluate(phi_rho(1.0), 1.0) == 1.0  # log+ vanishes at 1
    assert evaluate(phi_rho(1.0), E) == pytest.approx(2 * E)
    assert evaluate(phi_rho(2.0), 0.0) == 0.0


def test_exponential_values():
    assert evaluate(psi_s(1.0), 1.0) == pytest.approx(E - 1)
    assert evaluate(psi_s(1.0), 0.0) == 0.0


def test_exponential_overflow_sentinel():
    assert evaluate(psi_s(2.0), 1e3) == math.inf


def test_every_family_vanishes_at_zero():
    for spec in (phi_rho(1.5), psi_s(2.0), x_rho(0.5), x_tilde_rho(2.0), power(2.0), identity()):
        assert evaluate(spec, 0.0) == 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        evaluate(phi_rho(1.0), -1.0)
    with pytest.raises(DomainError):
        evaluate(phi_rho(1.0), math.inf)
    with pytest.raises(DomainError):
        x_tilde_rho(1.0)  # requires rho > 1
    with pytest.raises(DomainError):
        power(0.5)
    with pytest.raises(DomainError):
        psi_s(0.0)


def test_rho_zero_matches_identity():
    ts = np.logspace(-4, 6, 50)
    assert np.allclose(evaluate(phi_rho(0.0), ts), evaluate(identity(), ts))


@given(st.floats(0.0, 1e6), st.floats(0.0, 1e6))
@settings(max_examples=200, deadline=None)
def test_log_bump_monotone(t1, t2):
    lo, hi = sorted((t1, t2))
    assert evaluate(phi_rho(1.7), lo) <= evaluate(phi_rho(1.7), hi) * (1 + 1e-12) + 1e-300


@given(
    st.floats(0.0, 1e3),
    st.floats(0.0, 1e3),
    st.floats(0.0, 1.0),
)
@settings(max_examples=200, deadline=None)
def test_young_families_convex(t1, t2, theta):
    for spec in (phi_rho(2.0), psi_s(1.0), power(1.5), identity()):
        v1, v2 = evaluate(spec, t1), evaluate(spec, t2)
        if math.isinf(v1) or math.isinf(v2):
            continue
        mid = evaluate(spec, theta * t1 + (1 - theta) * t2)
        chord = theta * v1 + (1 - theta) * v2
        assert mid <= chord * (1 + 1e-9) + 1e-12


# --- inversion -------------------------------------------------------------


def test_invert_simple_cases():
    assert invert(phi_rho(1.0), 1.0) == pytest.approx(1.0, abs=1e-10)
    assert invert(identity(), 7.5) == pytest.approx(7.5, abs=1e-10)
    assert invert(phi_rho(2.0), 0.0) == 0.0


def test_invert_round_trip_phi2():
    t = invert(phi_rho(2.0), 10.0)
    assert evaluate(phi_rho(2.0), t) == pytest.approx(10.0, rel=1e-10)


def test_invert_round_trip_random():
    rng = np.random.default_rng(42)
    for spec in (phi_rho(1.0), phi_rho(3.5), psi_s(1.0), power(2.0)):
        for t in rng.uniform(0.0, 1e6, 25):
            if spec.family is Family.PSI and t > 25:
                continue  # overflow region
            y = evaluate(spec, t)
            back = invert(spec, y, tol=1e-12)
            assert evaluate(spec, back) == pytest.approx(y, rel=1e-9, abs=1e-9)


def test_invert_rejects_non_monotone():
    with pytest.raises(DomainError):
        invert(x_rho(2.0), 1.0)  # dips below the identity past t = 1
    with pytest.raises(DomainError):
        invert(x_tilde_rho(2.0), 1.0)
    with pytest.raises(ConfigError):
        invert(phi_rho(1.0), 1.0, tol=0.0)


# --- sandwich lemmas -------------------------------------------------------


def test_lemma_42_small_t_exact():
    lo, mid, hi = check_lemma_42(0.5, 2.0)
    assert mid == 0.5  # log+ vanishes on (0, 1]
    assert lo == pytest.approx(0.5 / 9)
    assert hi == 0.5


def test_lemma_42_at_e():
    lo, mid, hi = check_lemma_42(E, 1.0)
    assert lo == pytest.approx(E / 2)
    assert mid == pytest.approx(2 * E / (2 + math.log(2)))
    assert hi == pytest.approx(E)


def test_lemma_42_at_ten():
    lo, mid, hi = check_lemma_42(10.0, 1.0)
    assert lo == pytest.approx(5.0)
    a = 10 * (1 + math.log(10))
    assert mid == pytest.approx(a / (1 + math.log(a)))
    assert hi == 10.0


def test_lemma_42_random_ordering():
    rng = np.random.default_rng(7)
    for _ in range(2000):
        t = rng.uniform(0, 1e6)
        rho = rng.uniform(1e-3, 10.0)
        lo, mid, hi = check_lemma_42(t, rho)
        slack = 1e-12 * max(1.0, hi)
        assert lo - slack <= mid <= hi + slack


def test_lemma_43_small_t_exact():
    lo, mid, hi = check_lemma_43(0.5, 2.0)
    assert mid == 0.5  # both compositions are the identity below 1
    assert lo == pytest.approx((1 - 1 / E) ** 2 * 0.5)
    assert hi == pytest.approx(0.5 * (1 + 2 * math.log(2)) ** 2)


def test_lemma_43_boundary_attains_upper():
    # at t = rho**rho the middle value equals the upper bound
    lo, mid, hi = check_lemma_43(4.0, 2.0)
    assert mid == pytest.approx(hi, rel=1e-12)
    assert mid == pytest.approx(4 * (1 + 2 * math.log(2)) ** 2)


def test_lemma_43_large_t():
    lo, mid, hi = check_lemma_43(100.0, 2.0)
    x = 100.0 / (1 + math.log(25.0)) ** 2
    assert mid == pytest.approx(x * (1 + math.log(x)) ** 2)
    assert lo <= mid <= hi


def test_lemma_43_random_ordering():
    rng = np.random.default_rng(11)
    for _ in range(2000):
        t = rng.uniform(0, 1e6)
        rho = rng.uniform(1.0 + 1e-9, 10.0)
        lo, mid, hi = check_lemma_43(t, rho)
        slack = 1e-12 * max(1.0, hi)
        assert lo - slack <= mid <= hi + slack


def test_lemma_43_rejects_rho_below_one():
    with pytest.raises(DomainError):
        check_lemma_43(1.0, 1.0)


# --- scalar product bound --------------------------------------------------


def test_product_bound_zero_factors():
    specs = [phi_rho(1.0), psi_s(1.0)]
    kappa = young.inverse_product_ratio(specs, identity())
    lhs, rhs = check_scalar_product_bound(specs, kappa, [0.0, 0.0])
    assert (lhs, rhs) == (0.0, 0.0)


def test_product_bound_single_factor_identity_split():
    spec = phi_rho(1.0)
    lhs, rhs = check_scalar_product_bound([spec], 1.0, [3.0], spec0=spec)
    assert lhs == pytest.approx(rhs)


def test_product_bound_exponential_pairing():
    # psi(1) x phi(1) dominates the identity up to a measured kappa
    specs = [psi_s(1.0), phi_rho(1.0)]
    kappa = young.inverse_product_ratio(specs, identity())
    lhs, rhs = check_scalar_product_bound(specs, kappa, [2.0, 5.0])
    assert lhs <= rhs


def test_product_bound_rejects_false_kappa():
    specs = [psi_s(1.0), phi_rho(1.0)]
    with pytest.raises(PreconditionError):
        check_scalar_product_bound(specs, 1e-6, [1.0, 1.0])


def test_product_bound_random_cases():
    rng = np.random.default_rng(3)
    specs = [psi_s(1.0), psi_s(2.0)]
    kappa = young.inverse_product_ratio(specs, phi_rho(1.5))
    for _ in range(50):
        xs = list(rng.uniform(0.0, 5.0, 2))
        lhs, rhs = check_scalar_product_bound(specs, kappa, xs, spec0=phi_rho(1.5))
        assert lhs <= rhs * (1 + 1e-12)
