"""Model compact groups with normalized Haar data.

Each model exposes quadrature nodes with weights and the constant Haar
coefficient that makes the total group mass exactly one: averaging a
function over the group is ``sum(w * haar * u(node))``.
"""

from __future__ import annotations

import numpy as np

from .grids import Axis, DensityField, Grid, integrate


class GroupModel:
    """Circle, 2-torus, or finite group, with the normalized Haar measure."""

    def __init__(self, kind: str, *, n: int = 0, table: list[list[int]] | None = None):
        self.kind = kind
        if kind == "circle":
            if n < 1:
                raise ValueError("circle model needs quadrature nodes")
            self.grid = Grid([Axis(n, 0.0, 2 * np.pi, periodic=True)])
            self.haar_coefficient = 1.0 / (2 * np.pi)
        elif kind == "torus2":
            if n < 1:
                raise ValueError("torus model needs quadrature nodes")
            self.grid = Grid([Axis(n, 0.0, 2 * np.pi, periodic=True),
                              Axis(n, 0.0, 2 * np.pi, periodic=True)])
            self.haar_coefficient = 1.0 / (2 * np.pi) ** 2
        elif kind == "finite":
            if not table:
                raise ValueError("finite model needs a multiplication table")
            self.table = [list(row) for row in table]
            self.order = len(table)
            self.identity = next(e for e in range(self.order)
                                 if all(self.table[e][b] == b for b in range(self.order)))
            self.inverse = [next(b for b in range(self.order)
                                 if self.table[a][b] == self.identity)
                            for a in range(self.order)]
        else:
            raise ValueError(f"unknown group kind {kind!r}")

    @property
    def size(self) -> int:
        """Number of quadrature nodes (= group order for finite models)."""
        if self.kind == "finite":
            return self.order
        return int(np.prod(self.grid.shape))

    def haar_weights(self) -> np.ndarray:
        """Per-node masses of the normalized Haar measure (they sum to 1)."""
        if self.kind == "finite":
            return np.full(self.order, 1.0 / self.order)
        w = self.grid.axis_weight(0, self.grid.ndim)
        for axis in range(1, self.grid.ndim):
            w = w * self.grid.axis_weight(axis, self.grid.ndim)
        return (w * self.haar_coefficient + np.zeros(self.grid.shape)).ravel()

    def haar_density(self) -> DensityField:
        if self.kind == "finite":
            raise ValueError("finite groups have no chart density")
        return DensityField.constant(self.grid, self.haar_coefficient)

    def total_mass(self) -> float:
        if self.kind == "finite":
            return float(self.haar_weights().sum())
        return integrate(self.haar_density())
