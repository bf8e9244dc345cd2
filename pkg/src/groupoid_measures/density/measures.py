"""Measures as positive linear functionals on grid-sampled test functions."""

from __future__ import annotations

import numpy as np

from .grids import DensityField, Grid, integrate


class MeasureFunctional:
    """Evaluates test functions sampled on a fixed grid.

    The evaluator must be linear and positive on nonnegative inputs; both
    properties are spot-checked by ``check_linearity``/``check_positivity``
    on sampled fields rather than enforced structurally.
    """

    def __init__(self, grid: Grid, evaluator, support: str = ""):
        self.grid = grid
        self._evaluator = evaluator
        self.support = support

    def __call__(self, test: DensityField | np.ndarray) -> float:
        values = test.values if isinstance(test, DensityField) else np.asarray(test)
        if values.shape != self.grid.shape:
            raise ValueError("test function lives on the wrong grid")
        return float(self._evaluator(values))

    @staticmethod
    def from_density(rho: DensityField, support: str = "") -> "MeasureFunctional":
        rho.check_nonnegative("measure density")
        return MeasureFunctional(
            rho.grid,
            lambda f: integrate(DensityField(rho.grid, f * rho.values)),
            support=support or "full grid",
        )

    def total_mass(self) -> float:
        return self(np.ones(self.grid.shape))

    def check_linearity(self, rng: np.random.Generator, samples: int = 4,
                        tol: float = 1e-9) -> float:
        worst = 0.0
        for _ in range(samples):
            f = rng.standard_normal(self.grid.shape)
            g = rng.standard_normal(self.grid.shape)
            c = float(rng.uniform(-2, 2))
            lhs = self(c * f + g)
            rhs = c * self(f) + self(g)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        if worst > tol:
            raise AssertionError(f"functional is not linear (defect {worst:.3e})")
        return worst

    def check_positivity(self, rng: np.random.Generator, samples: int = 4) -> None:
        for _ in range(samples):
            f = np.abs(rng.standard_normal(self.grid.shape))
            if self(f) < -1e-12 * float(np.max(f) + 1.0):
                raise AssertionError("functional is negative on a nonnegative input")


class GridMap:
    """Map between grids given by a node-to-node assignment (nearest cell).

    ``index`` is an integer array of shape ``source.shape`` holding flat
    node indices into ``target``; composition of maps is composition of
    index lookups, which is exact.
    """

    def __init__(self, source: Grid, target: Grid, index: np.ndarray):
        if index.shape != source.shape:
            raise ValueError("index array must match the source grid")
        self.source = source
        self.target = target
        self.index = index.astype(np.intp)

    def pull(self, f: np.ndarray) -> np.ndarray:
        """Pull a base-grid sample back to the source grid: f o pi."""
        return f.ravel()[self.index]

    def compose(self, other: "GridMap") -> "GridMap":
        """self o other (other maps into self.source)."""
        return GridMap(other.source, self.target, self.index.ravel()[other.index])

    @staticmethod
    def identity(grid: Grid) -> "GridMap":
        return GridMap(grid, grid, np.arange(int(np.prod(grid.shape))).reshape(grid.shape))

    @staticmethod
    def to_point(grid: Grid, point_grid: Grid) -> "GridMap":
        return GridMap(grid, point_grid, np.zeros(grid.shape, dtype=np.intp))

    @staticmethod
    def axis_projection(grid: Grid, keep: list[int]) -> "GridMap":
        """Project onto the subgrid of the kept axes (node onto node)."""
        base = grid.subgrid(keep)
        idx = np.zeros(grid.shape, dtype=np.intp)
        strides = np.cumprod([1] + [base.axes[i].n for i in range(len(keep) - 1, 0, -1)])[::-1]
        for pos, axis in enumerate(keep):
            shape = [1] * grid.ndim
            shape[axis] = grid.axes[axis].n
            idx = idx + strides[pos] * np.arange(grid.axes[axis].n).reshape(shape)
        return GridMap(grid, base, idx)

    @staticmethod
    def from_coordinates(grid: Grid, target: Grid, fn) -> "GridMap":
        """Nearest-node assignment of fn(node coordinates) in the target grid."""
        coords = fn(*grid.meshgrid())
        if target.ndim == 1:
            coords = [coords] if not isinstance(coords, (list, tuple)) else list(coords)
        flat = np.zeros(grid.shape, dtype=np.intp)
        stride = 1
        partial = np.zeros(grid.shape, dtype=np.intp)
        for axis in reversed(range(target.ndim)):
            nodes = target.nodes(axis)
            nearest = np.abs(np.asarray(coords[axis])[..., None] - nodes).argmin(axis=-1)
            partial = partial + stride * nearest
            stride *= target.axes[axis].n
        flat[...] = partial
        return GridMap(grid, target, flat)


def pushforward(pi: GridMap, mu: MeasureFunctional) -> MeasureFunctional:
    """Pushforward measure: evaluates test functions composed with the map."""
    if mu.grid is not pi.source and mu.grid.shape != pi.source.shape:
        raise ValueError("measure grid does not match the map source")
    return MeasureFunctional(
        pi.target,
        lambda f: mu(pi.pull(np.asarray(f))),
        support=f"pushforward of {mu.support}" if mu.support else "pushforward",
    )
