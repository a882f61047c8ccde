import numpy as np
import pytest

from czkit.grid import (
    DyadicInterval,
    GridError,
    GridFunction,
    UniformGrid1D,
    average,
    read_grid_function,
    write_grid_function,
)


@pytest.fixture
def unit_grid():
    return UniformGrid1D(0.0, 1.0, 3)


def test_midpoints_and_spacing(unit_grid):
    assert unit_grid.n == 8
    assert unit_grid.h == 0.125
    assert np.allclose(unit_grid.midpoints, np.arange(8) * 0.125 + 0.0625)


def test_grid_validation():
    with pytest.raises(GridError):
        UniformGrid1D(1.0, 0.0, 3)
    with pytest.raises(GridError):
        UniformGrid1D(0.0, 1.0, 0)


def test_average_constant(unit_grid):
    f = GridFunction.constant(unit_grid, 3.7)
    for q in unit_grid.dyadic_intervals():
        assert average(f, q) == pytest.approx(3.7)


def test_average_indicator_root(unit_grid):
    f = GridFunction.indicator(unit_grid, 0.0, 0.5)
    assert average(f, unit_grid.root()) == 0.5


def test_average_linear_exact(unit_grid):
    # midpoint rule is exact on affine integrands
    f = GridFunction(unit_grid, unit_grid.midpoints)
    assert average(f, unit_grid.root()) == pytest.approx(0.5, abs=1e-15)


def test_parent_child_average_consistency(unit_grid):
    rng = np.random.default_rng(0)
    f = GridFunction(unit_grid, rng.standard_normal(8))
    for q in unit_grid.dyadic_intervals():
        if q.gen < unit_grid.levels:
            left, right = q.children()
            assert average(f, q) == pytest.approx(0.5 * (average(f, left) + average(f, right)))


def test_average_linearity(unit_grid):
    rng = np.random.default_rng(1)
    f = GridFunction(unit_grid, rng.standard_normal(8))
    g = GridFunction(unit_grid, rng.standard_normal(8))
    q = unit_grid.root().children()[0]
    assert average(f + g, q) == pytest.approx(average(f, q) + average(g, q))


def test_disjoint_cover_telescopes(unit_grid):
    rng = np.random.default_rng(2)
    f = GridFunction(unit_grid, rng.standard_normal(8))
    gen = 2
    total = sum(
        average(f, DyadicInterval(gen, i, unit_grid)) * DyadicInterval(gen, i, unit_grid).length
        for i in range(1 << gen)
    )
    assert total == pytest.approx(f.integral())


def test_children_parent(unit_grid):
    root = unit_grid.root()
    left, right = root.children()
    assert (left.lo, left.hi) == (0.0, 0.5)
    assert (right.lo, right.hi) == (0.5, 1.0)
    assert root.parent() is None
    assert left.parent() == root
    leaf = unit_grid.leaf(5)
    with pytest.raises(GridError):
        leaf.children()


def test_dilate_clamps(unit_grid):
    # 5-fold dilate of [1/4, 1/2) spills over both ends of [0, 1)
    q = DyadicInterval(2, 1, unit_grid)
    sl, clamped = q.dilate(5.0)
    assert clamped
    assert (sl.start, sl.stop) == (0, unit_grid.n)


def test_dilate_interior():
    grid = UniformGrid1D(0.0, 1.0, 5)
    q = DyadicInterval(5, 16, grid)  # single cell at 0.5
    sl, clamped = q.dilate(3.0)
    assert not clamped
    assert sl.stop - sl.start == 3


def test_values_validation(unit_grid):
    with pytest.raises(GridError):
        GridFunction(unit_grid, np.ones(4))
    with pytest.raises(GridError):
        GridFunction(unit_grid, np.array([np.nan] * 8))


def test_csv_round_trip(tmp_path, unit_grid):
    rng = np.random.default_rng(3)
    f = GridFunction(unit_grid, rng.standard_normal(8))
    path = tmp_path / "f.csv"
    write_grid_function(f, path)
    g = read_grid_function(path)
    assert g.grid == unit_grid
    assert np.array_equal(g.values, f.values)
