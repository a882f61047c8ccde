"""Uniform 1-D grids, sampled functions and the dyadic interval tree.

Functions are identified with their midpoint samples on a power-of-two
grid; every integral below is an exact sum of cell values times the cell
width, so set measures and averages carry no quadrature error.  The
dyadic tree is rooted at the full domain and bottoms out at single cells.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence, Union

import numpy as np

__all__ = [
    "UniformGrid1D",
    "GridFunction",
    "DyadicInterval",
    "GridError",
    "read_grid_function",
    "write_grid_function",
]


class GridError(ValueError):
    """Raised for malformed grids, mismatched grids or bad tree queries."""


@dataclass(frozen=True)
class UniformGrid1D:
    """n = 2**levels midpoint-sampled cells on [a, b)."""

    a: float
    b: float
    levels: int

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b) and self.a < self.b):
            raise GridError(f"invalid endpoints a={self.a}, b={self.b}")
        if self.levels < 1 or self.levels > 26:
            raise GridError(f"levels must be in [1, 26], got {self.levels}")

    @property
    def n(self) -> int:
        return 1 << self.levels

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def midpoints(self) -> np.ndarray:
        i = np.arange(self.n, dtype=float)
        return self.a + (i + 0.5) * self.h

    def cell_of(self, x: float) -> int:
        """Index of the cell whose half-open interval contains x."""
        if not (self.a <= x < self.b):
            raise GridError(f"x={x} outside [{self.a}, {self.b})")
        return min(int((x - self.a) / self.h), self.n - 1)

    def root(self) -> "DyadicInterval":
        return DyadicInterval(0, 0, self)

    def leaf(self, i: int) -> "DyadicInterval":
        return DyadicInterval(self.levels, i, self)

    def dyadic_intervals(self) -> Iterator["DyadicInterval"]:
        """All 2**(levels+1) - 1 nodes, coarse to fine."""
        for gen in range(self.levels + 1):
            for idx in range(1 << gen):
                yield DyadicInterval(gen, idx, self)


@dataclass(frozen=True)
class DyadicInterval:
    """Node (gen, idx) of the dyadic tree: [a + idx*|I|, a + (idx+1)*|I|)."""

    gen: int
    idx: int
    grid: UniformGrid1D

    def __post_init__(self):
        if self.gen < 0 or self.gen > self.grid.levels:
            raise GridError(f"generation {self.gen} outside tree of depth {self.grid.levels}")
        if not (0 <= self.idx < (1 << self.gen)):
            raise GridError(f"index {self.idx} invalid at generation {self.gen}")

    @property
    def length(self) -> float:
        return (self.grid.b - self.grid.a) / (1 << self.gen)

    @property
    def lo(self) -> float:
        return self.grid.a + self.idx * self.length

    @property
    def hi(self) -> float:
        return self.lo + self.length

    @property
    def cell_slice(self) -> slice:
        """Range of grid cells covered by this node."""
        width = 1 << (self.grid.levels - self.gen)
        return slice(self.idx * width, (self.idx + 1) * width)

    @property
    def n_cells(self) -> int:
        return 1 << (self.grid.levels - self.gen)

    def children(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        if self.gen >= self.grid.levels:
            raise GridError("leaf cell has no children")
        return (
            DyadicInterval(self.gen + 1, 2 * self.idx, self.grid),
            DyadicInterval(self.gen + 1, 2 * self.idx + 1, self.grid),
        )

    def parent(self) -> Union["DyadicInterval", None]:
        if self.gen == 0:
            return None
        return DyadicInterval(self.gen - 1, self.idx // 2, self.grid)

    def dilate(self, factor: float) -> tuple[slice, bool]:
        """Smallest grid-aligned interval containing the concentric dilate.

        Returns (cell slice, clamped) where `clamped` records that the
        dilate ran past the domain and was cut at its boundary.
        """
        if factor <= 0:
            raise GridError("dilation factor must be positive")
        mid = 0.5 * (self.lo + self.hi)
        half = 0.5 * factor * self.length
        h = self.grid.h
        lo, hi = mid - half, mid + half
        clamped = lo < self.grid.a or hi > self.grid.b
        lo = max(lo, self.grid.a)
        hi = min(hi, self.grid.b)
        first = int(np.floor((lo - self.grid.a) / h + 1e-12))
        last = int(np.ceil((hi - self.grid.a) / h - 1e-12))
        first = max(first, 0)
        last = min(max(last, first + 1), self.grid.n)
        return slice(first, last), clamped


@dataclass
class GridFunction:
    """Real samples at the midpoints of a uniform grid."""

    grid: UniformGrid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n,):
            raise GridError(f"expected {self.grid.n} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise GridError("samples must be finite")
        self.values = v

    @classmethod
    def from_callable(cls, grid: UniformGrid1D, fn) -> "GridFunction":
        return cls(grid, np.asarray([fn(x) for x in grid.midpoints], dtype=float))

    @classmethod
    def constant(cls, grid: UniformGrid1D, c: float) -> "GridFunction":
        return cls(grid, np.full(grid.n, float(c)))

    @classmethod
    def indicator(cls, grid: UniformGrid1D, lo: float, hi: float) -> "GridFunction":
        v = ((grid.midpoints >= lo) & (grid.midpoints < hi)).astype(float)
        return cls(grid, v)

    def same_grid(self, other: "GridFunction") -> None:
        if self.grid != other.grid:
            raise GridError("grid mismatch")

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.h)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, values)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self.same_grid(other)
            return GridFunction(self.grid, self.values * other.values)
        return GridFunction(self.grid, self.values * float(other))

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self.same_grid(other)
            return GridFunction(self.grid, self.values + other.values)
        return GridFunction(self.grid, self.values + float(other))

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            self.same_grid(other)
            return GridFunction(self.grid, self.values - other.values)
        return GridFunction(self.grid, self.values - float(other))

    def __abs__(self):
        return GridFunction(self.grid, np.abs(self.values))


def average(f: GridFunction, q: DyadicInterval) -> float:
    """Signed midpoint-rule average of f over the dyadic interval q."""
    if q.grid != f.grid:
        raise GridError("grid mismatch")
    sl = q.cell_slice
    return float(np.mean(f.values[sl]))


def average_slice(f: GridFunction, sl: slice) -> float:
    """Signed average over an arbitrary grid-aligned run of cells."""
    if sl.stop <= sl.start:
        raise GridError("empty cell range")
    return float(np.mean(f.values[sl]))


def write_grid_function(f: GridFunction, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["x", "value"])
        for x, v in zip(f.grid.midpoints, f.values):
            wr.writerow([repr(float(x)), repr(float(v))])


def read_grid_function(path) -> GridFunction:
    """Reconstruct a GridFunction from x,value CSV; x must be the midpoints
    of a power-of-two uniform grid."""
    xs, vs = [], []
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if [c.strip().lower() for c in header[:2]] != ["x", "value"]:
            raise GridError(f"expected 'x,value' header in {path}")
        for row in rd:
            xs.append(float(row[0]))
            vs.append(float(row[1]))
    x = np.asarray(xs)
    n = len(x)
    if n < 2 or (n & (n - 1)) != 0:
        raise GridError(f"sample count {n} is not a power of two >= 2")
    h = x[1] - x[0]
    if h <= 0 or not np.allclose(np.diff(x), h, rtol=1e-9, atol=1e-12 * abs(h)):
        raise GridError("x column is not uniformly spaced")
    a = x[0] - 0.5 * h
    grid = UniformGrid1D(a, a + n * h, int(round(np.log2(n))))
    return GridFunction(grid, np.asarray(vs))
