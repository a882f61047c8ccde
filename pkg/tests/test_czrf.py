import numpy as np
import pytest

from czkit.czrf import EstimationError, cz_decompose, lp_norm, rdf_S, rdf_build
from czkit.grid import GridFunction, UniformGrid1D, average
from czkit.maximal import hl_maximal
from czkit.weights import make_weight
from czkit.young import DomainError, PreconditionError


def spike(levels=4):
    grid = UniformGrid1D(0.0, 1.0, levels)
    return GridFunction(grid, 4.0 * (grid.midpoints < 0.25))


def validate_decomposition(f, dec):
    lam = dec.lam
    absf = np.abs(f.values)
    # pairwise disjoint
    covered = np.zeros(f.grid.n, dtype=bool)
    for q in dec.cubes:
        sl = q.cell_slice
        assert not covered[sl].any()
        covered[sl] = True
    assert np.array_equal(covered, dec.omega)
    norm1 = float(np.sum(absf) * f.grid.h)
    for q, hj in zip(dec.cubes, dec.bad):
        avg = float(np.mean(absf[q.cell_slice]))
        assert lam < avg <= 2 * lam + 1e-12 * lam
        parent = q.parent()
        if parent is not None:
            assert float(np.mean(absf[parent.cell_slice])) <= lam * (1 + 1e-12)
        # support and exact zero mean
        outside = hj.values.copy()
        outside[q.cell_slice] = 0.0
        assert np.all(outside == 0.0)
        assert abs(float(np.sum(hj.values)) * f.grid.h) <= 1e-10 * max(norm1, 1e-300)
    # reconstruction exact to one rounding of the participating scale
    total = dec.good.values.copy()
    for hj in dec.bad:
        total = total + hj.values
    scale = max(lam, float(np.max(absf)), 1e-300)
    assert np.max(np.abs(total - f.values)) <= 1e-13 * scale
    # good part bounded by twice the height
    assert np.all(np.abs(dec.good.values) <= 2 * lam * (1 + 1e-12))
    # selected length bound: sum |Q_j| <= ||f||_1 / lam
    total_len = sum(q.length for q in dec.cubes)
    assert total_len <= norm1 / lam + 1e-12


def test_decompose_spike_at_low_height():
    f = spike()
    dec = cz_decompose(f, 1.5)
    assert [(q.gen, q.idx) for q in dec.cubes] == [(1, 0)]
    assert np.allclose(dec.good.values[f.grid.root().children()[0].cell_slice], 2.0)
    assert np.all(dec.good.values[f.grid.n // 2 :] == 0.0)
    assert average(abs(f), dec.cubes[0]) == pytest.approx(2.0)
    validate_decomposition(f, dec)


def test_decompose_spike_above_max():
    f = spike()
    dec = cz_decompose(f, 5.0)
    assert dec.cubes == []
    assert not dec.omega.any()
    assert np.array_equal(dec.good.values, f.values)


def test_decompose_precondition():
    f = spike()
    with pytest.raises(PreconditionError):
        cz_decompose(f, 0.5)
    with pytest.raises(DomainError):
        cz_decompose(f, 0.0)


def test_decompose_random_inputs():
    rng = np.random.default_rng(100)
    for trial in range(25):
        levels = int(rng.integers(4, 8))
        grid = UniformGrid1D(-1.0, 1.0, levels)
        kind = trial % 3
        if kind == 0:
            vals = rng.standard_normal(grid.n)
        elif kind == 1:
            vals = np.abs(rng.standard_normal(grid.n)) * (rng.uniform(size=grid.n) < 0.3)
        else:
            vals = np.zeros(grid.n)
            vals[rng.integers(0, grid.n)] = rng.uniform(1, 50)
        f = GridFunction(grid, vals)
        root_avg = float(np.mean(np.abs(vals)))
        if root_avg == 0:
            continue
        lam = root_avg * float(rng.uniform(1.05, 5.0))
        dec = cz_decompose(f, lam)
        validate_decomposition(f, dec)


def test_rdf_S_zero_and_plain():
    grid = UniformGrid1D(0, 1, 6)
    v = make_weight("constant", grid)
    z = GridFunction.constant(grid, 0.0)
    assert np.all(rdf_S(z, v, 2.0).values == 0.0)
    h = GridFunction.indicator(grid, 0.0, 0.5)
    s = rdf_S(h, v, 2.0, "all-intervals")
    m = hl_maximal(h, "all-intervals")
    assert np.array_equal(s.values, m.values)


def test_rdf_S_step_weight_cross_check():
    grid = UniformGrid1D(0, 1, 6)
    v = make_weight("step", grid, low=1.0, high=4.0)
    h = GridFunction.indicator(grid, 0.0, 0.5)
    s = rdf_S(h, v, 2.0, "all-intervals")
    lifted = GridFunction(grid, h.values * v.values**0.5)
    ref = hl_maximal(lifted, "all-intervals").values / v.values**0.5
    assert np.allclose(s.values, ref)


def test_rdf_S_rejects_negative():
    grid = UniformGrid1D(0, 1, 5)
    v = make_weight("constant", grid)
    with pytest.raises(DomainError):
        rdf_S(GridFunction.constant(grid, -1.0), v, 2.0)


def test_rdf_build_constant_geometric_series():
    grid = UniformGrid1D(0, 1, 6)
    h = GridFunction.constant(grid, 1.0)
    v = make_weight("constant", grid)
    res = rdf_build(h, v, 2.0, K=30)
    # growth ratio of the plain maximal on a constant is 1, so B = 2 and
    # the series sums the geometric tail to 4/3
    assert res.B == pytest.approx(2.0)
    assert np.allclose(res.Rh.values, 4.0 / 3.0, rtol=1e-8)
    assert res.diagnostics["domination_margin"] >= 0
    assert res.diagnostics["norm_ratio"] <= 2.0
    assert res.diagnostics["a1_margin"] <= 1e-12


def test_rdf_build_zero_input():
    grid = UniformGrid1D(0, 1, 5)
    res = rdf_build(GridFunction.constant(grid, 0.0), make_weight("constant", grid), 2.0)
    assert np.all(res.Rh.values == 0.0)
    assert res.diagnostics["norm_ratio"] == 0.0


def test_rdf_build_diagnostics_power_weight():
    grid = UniformGrid1D(-1, 1, 8)
    h = GridFunction.indicator(grid, 0.0, 0.5)
    v = make_weight("power", grid, alpha=-0.5)
    res = rdf_build(h, v, 2.0, K=12)
    d = res.diagnostics
    assert d["domination_margin"] >= 0.0
    assert d["norm_ratio"] <= 2.0
    # pointwise smoothing bound, allowing the certified truncation slack
    s_vals = rdf_S(res.Rh, v, 2.0).values
    assert np.all(s_vals <= 2 * res.B * res.Rh.values + d["a1_slack"] + 1e-12)
    assert d["a1_of_product"] >= 1.0


def test_rdf_build_validation():
    grid = UniformGrid1D(0, 1, 5)
    h = GridFunction.constant(grid, 1.0)
    v = make_weight("constant", grid)
    with pytest.raises(DomainError):
        rdf_build(h, v, 2.0, K=0)
    with pytest.raises(DomainError):
        rdf_build(h, v, 2.0, safety=0.5)
    with pytest.raises(DomainError):
        rdf_build(GridFunction.constant(grid, -1.0), v, 2.0)


def test_lp_norm_cell_sum():
    grid = UniformGrid1D(0, 1, 4)
    g = np.full(grid.n, 2.0)
    w = np.full(grid.n, 3.0)
    assert lp_norm(g, w, 2.0, grid.h) == pytest.approx((4.0 * 3.0) ** 0.5)
