"""Invariant densities on principal circle bundles over a grid base.

The model bundle is a product: axis 0 of the total grid is a periodic
circle axis on which the group acts by rotation, the remaining axes form
the base.  Invariant densities split as (normalized fiber Haar) times a
base density, and fiber integration inverts that splitting.
"""

from __future__ import annotations

import numpy as np

from .grids import DensityField, Grid, fiber_integrate


class InvarianceError(ValueError):
    """Input field is not invariant within the requested tolerance."""

    def __init__(self, defect: float, tol: float):
        super().__init__(f"invariance defect {defect:.3e} exceeds tolerance {tol:.1e}")
        self.defect = defect
        self.tol = tol


class CircleBundle:
    def __init__(self, total: Grid):
        if not total.axes[0].periodic:
            raise ValueError("fiber axis (axis 0) must be periodic")
        self.total = total
        self.base = total.subgrid(list(range(1, total.ndim)))
        self.fiber_circumference = total.axes[0].length

    def rotate(self, values: np.ndarray, angle: float) -> np.ndarray:
        """Sample of the field rotated by ``angle`` along the fiber.

        Periodic linear interpolation in the fiber coordinate; exact when
        the angle is a whole number of grid steps.
        """
        n = self.total.axes[0].n
        shift = angle / self.total.axes[0].spacing
        whole = int(np.floor(shift))
        frac = shift - whole
        rolled = np.roll(values, -whole, axis=0)
        if frac == 0.0:
            return rolled
        return (1.0 - frac) * rolled + frac * np.roll(rolled, -1, axis=0)

    def invariance_defect(self, rho: DensityField, angles=None) -> float:
        if angles is None:
            # irrational-step sample so grid-commensurate structure is not missed
            angles = (np.sqrt(2.0) - 1.0) * self.fiber_circumference * np.arange(1, 6) / 5
        scale = float(np.max(np.abs(rho.values))) or 1.0
        worst = 0.0
        for angle in angles:
            rotated = self.rotate(rho.values, float(angle))
            worst = max(worst, float(np.max(np.abs(rotated - rho.values))) / scale)
        return worst

    def haar_times(self, base_field: DensityField) -> DensityField:
        """Invariant density with the given base part: fiber-Haar tensor base."""
        coeff = 1.0 / self.fiber_circumference
        values = coeff * np.broadcast_to(base_field.values, self.total.shape)
        return DensityField(self.total, values.copy())


def invariant_decompose(bundle: CircleBundle, rho: DensityField,
                        tol: float = 1e-9) -> DensityField:
    """Base density of an invariant density (fiber integration).

    Raises InvarianceError when the field fails the rotation-sampling
    invariance test; reconstruction via ``bundle.haar_times`` recovers the
    input to quadrature accuracy.
    """
    defect = bundle.invariance_defect(rho)
    if defect > tol:
        raise InvarianceError(defect, tol)
    return fiber_integrate(rho, [0])
