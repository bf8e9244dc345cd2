"""Parametrized proper groupoid models over quadrature grids.

An action model couples a compact group quadrature to a base grid so that
every group quadrature node acts by an exact node permutation (rotations
act by rolling the periodic axis, finite groups by index maps).  Fiber
integrals over source fibers then become weighted sums of rolled arrays,
and change-of-variables identities hold at machine precision, which is
what lets invariance defects act as sharp diagnostics.

Conventions for the density action (fixing the splitting of arrow-space
densities into an algebroid factor and a base factor): an arrow from x to
y = a(g, x) pushes a base density coefficient tau(x) to tau(x) / |J(g, x)|
at y, and scales the algebroid factor by the adjoint determinant (1 for
all abelian and finite models here).  The modular cocycle below is the
log-ratio of sigma against this transport.
"""

from __future__ import annotations

import json

import numpy as np

from ..density.grids import Axis, Grid
from ..density.groups import GroupModel


class ModelError(ValueError):
    pass


class ActionGroupoidModel:
    """Base class: finite quadrature presentation of a group action on a grid.

    Subclasses fix the group structure on quadrature indices (``mul``,
    ``inv``), the node action (``pull``), the analytic action on
    coordinates (``act_points``) and the base-direction Jacobian.
    """

    name = "action"
    proper = True

    def __init__(self, grid: Grid, group_size: int):
        self.grid = grid
        self.group_size = group_size
        w = grid.axis_weight(0, grid.ndim).astype(float)
        for axis in range(1, grid.ndim):
            w = w * grid.axis_weight(axis, grid.ndim)
        self.grid_weights = np.broadcast_to(w, grid.shape).copy()

    # group structure on quadrature indices
    def haar_masses(self) -> np.ndarray:
        raise NotImplementedError

    def mul(self, j: int, k: int) -> int:
        raise NotImplementedError

    def inv(self, j: int) -> int:
        raise NotImplementedError

    def identity_index(self) -> int:
        raise NotImplementedError

    # action
    def pull(self, j: int, values: np.ndarray) -> np.ndarray:
        """Values of x -> f(a(g_j, x)) for grid samples f."""
        raise NotImplementedError

    def act_points(self, j: int, pts):
        raise NotImplementedError

    def jacobian_points(self, j: int, pts):
        """|det| of the base-direction differential of a(g_j, .) in the chart."""
        raise NotImplementedError

    def adjoint_factor(self, j: int) -> float:
        return 1.0

    def jacobian_values(self, j: int) -> np.ndarray:
        return np.asarray(self.jacobian_points(j, self.grid.meshgrid()), dtype=float) \
            + np.zeros(self.grid.shape)

    # orbit space
    def project_to_base(self, values: np.ndarray):
        """Representative values on the orbit-space grid; model specific."""
        raise NotImplementedError

    def integrate(self, values: np.ndarray) -> float:
        return float((values * self.grid_weights).sum())

    def check_axioms(self, rng: np.random.Generator, samples: int = 20,
                     tol: float = 1e-9) -> float:
        """Sampled unit/compatibility/cocycle checks; returns the worst defect."""
        mesh = self.grid.meshgrid()
        flat = [m.ravel() for m in mesh]
        worst = 0.0
        e = self.identity_index()
        for _ in range(samples):
            p = int(rng.integers(len(flat[0])))
            pt = [c[p] for c in flat]
            j = int(rng.integers(self.group_size))
            k = int(rng.integers(self.group_size))
            worst = max(worst, self._point_distance(self.act_points(e, pt), pt))
            two_step = self.act_points(j, self.act_points(k, pt))
            combined = self.act_points(self.mul(j, k), pt)
            worst = max(worst, self._point_distance(two_step, combined))
            jj = self.jacobian_points(j, self.act_points(k, pt)) \
                * self.jacobian_points(k, pt)
            worst = max(worst, abs(jj - self.jacobian_points(self.mul(j, k), pt)))
        if worst > tol:
            raise ModelError(f"action axioms fail on samples (defect {worst:.3e})")
        return worst

    def _point_distance(self, p, q) -> float:
        """Chart distance; periodic coordinates compare modulo their period."""
        worst = 0.0
        for axis, (a, b) in enumerate(zip(p, q)):
            d = abs(float(a) - float(b))
            ax = self.grid.axes[axis]
            if ax.periodic:
                d = d % ax.length
                d = min(d, ax.length - d)
            worst = max(worst, d)
        return worst


class RotationPlaneModel(ActionGroupoidModel):
    """Circle rotations of a planar region in polar coordinates.

    The grid is (radius, angle) with a periodic angle axis; group
    quadrature nodes coincide with the angle nodes, so the action is an
    exact roll.  The chart coefficient of the Lebesgue density is the
    radius; rotations have unit Jacobian.
    """

    name = "rotation2d"

    def __init__(self, n_r: int, n_phi: int, r_lo: float, r_hi: float):
        if r_lo < 0:
            raise ModelError("radius axis cannot be negative")
        grid = Grid([Axis(n_r, r_lo, r_hi),
                     Axis(n_phi, 0.0, 2 * np.pi, periodic=True)])
        super().__init__(grid, n_phi)
        self.group = GroupModel("circle", n=n_phi)

    def haar_masses(self) -> np.ndarray:
        return self.group.haar_weights()

    def mul(self, j, k):
        return (j + k) % self.group_size

    def inv(self, j):
        return (-j) % self.group_size

    def identity_index(self):
        return 0

    def angle(self, j: int) -> float:
        return 2 * np.pi * j / self.group_size

    def pull(self, j, values):
        return np.roll(values, -j, axis=1)

    def act_points(self, j, pts):
        r, phi = pts
        return (r, np.mod(phi + self.angle(j), 2 * np.pi))

    def jacobian_points(self, j, pts):
        return 1.0

    def jacobian_values(self, j):
        return np.ones(self.grid.shape)

    def project_to_base(self, values):
        """Radial profile (value at angle node 0); base is the radius grid."""
        return values[:, 0].copy(), self.grid.subgrid([0])

    def lebesgue_coefficient(self) -> np.ndarray:
        r = self.grid.meshgrid()[0]
        return r.copy()


class FiniteActionModel(ActionGroupoidModel):
    """A finite group acting by exact node permutations of the grid."""

    name = "finite_action"

    def __init__(self, grid: Grid, table: list[list[int]], node_maps, point_maps,
                 jacobians=None, name: str = "finite_action"):
        super().__init__(grid, len(table))
        self.group = GroupModel("finite", table=table)
        self.node_maps = [np.asarray(m, dtype=np.intp) for m in node_maps]
        self.point_maps = point_maps
        self.jacobians = jacobians
        self.name = name
        n_nodes = int(np.prod(grid.shape))
        for m in self.node_maps:
            if sorted(m.ravel().tolist()) != list(range(n_nodes)):
                raise ModelError("node maps must be permutations of the grid")

    def haar_masses(self):
        return self.group.haar_weights()

    def mul(self, j, k):
        return self.group.table[j][k]

    def inv(self, j):
        return self.group.inverse[j]

    def identity_index(self):
        return self.group.identity

    def pull(self, j, values):
        return values.ravel()[self.node_maps[j]].reshape(self.grid.shape)

    def act_points(self, j, pts):
        return self.point_maps[j](*pts)

    def jacobian_points(self, j, pts):
        if self.jacobians is None:
            return 1.0
        return self.jacobians[j](*pts)

    def jacobian_values(self, j):
        if self.jacobians is None:
            return np.ones(self.grid.shape)
        return super().jacobian_values(j)

    def orbit_representatives(self) -> np.ndarray:
        """Smallest flat node index of each node orbit."""
        n = int(np.prod(self.grid.shape))
        rep = np.arange(n)
        for m in self.node_maps:
            rep = np.minimum(rep, m.ravel())
        changed = True
        while changed:
            new = rep[rep]
            changed = bool(np.any(new != rep))
            rep = new
        return np.unique(rep)

    def project_to_base(self, values):
        reps = self.orbit_representatives()
        return values.ravel()[reps].copy(), reps


class TrivialActionModel(ActionGroupoidModel):
    """Trivial group: source and target coincide, orbits are points."""

    name = "trivial"

    def __init__(self, grid: Grid):
        super().__init__(grid, 1)

    def haar_masses(self):
        return np.array([1.0])

    def mul(self, j, k):
        return 0

    def inv(self, j):
        return 0

    def identity_index(self):
        return 0

    def pull(self, j, values):
        return values

    def act_points(self, j, pts):
        return pts

    def jacobian_points(self, j, pts):
        return 1.0

    def project_to_base(self, values):
        return values.copy(), self.grid


class ScalingLineModel(ActionGroupoidModel):
    """Dyadic scalings of the line: arrows (2^k, x), composition partial.

    Not proper, and the scalings move grid nodes off the grid; the model
    only supports the pointwise operations needed by cocycle checks.
    Composition of powers is defined while the result stays in the stored
    window, so composable-pair sampling must consult ``mul``.
    """

    name = "scaling_line"
    proper = False

    def __init__(self, max_power: int = 2, lo: float = 0.5, hi: float = 3.0, n: int = 16):
        grid = Grid([Axis(n, lo, hi)])
        super().__init__(grid, 2 * max_power + 1)
        self.max_power = max_power

    def power(self, j: int) -> int:
        return j - self.max_power

    def scale(self, j: int) -> float:
        return 2.0 ** self.power(j)

    def haar_masses(self):
        raise ModelError("scaling model has no invariant group quadrature")

    def mul(self, j, k):
        p = self.power(j) + self.power(k)
        if abs(p) > self.max_power:
            return None
        return p + self.max_power

    def inv(self, j):
        return 2 * self.max_power - j

    def identity_index(self):
        return self.max_power

    def pull(self, j, values):
        raise ModelError("scaling model does not act on grid samples")

    def act_points(self, j, pts):
        (x,) = pts
        return (self.scale(j) * x,)

    def jacobian_points(self, j, pts):
        return self.scale(j)

    def project_to_base(self, values):
        raise ModelError("scaling model is not proper")


class SubmersionGroupoidModel:
    """Groupoid of a grid submersion: pairs of points in the same fiber.

    The projection forgets the listed fiber axes; only the fiber geometry
    matters for the operations implemented here.
    """

    name = "submersion"

    def __init__(self, total: Grid, fiber_axes: list[int]):
        self.total = total
        self.fiber_axes = sorted(set(fiber_axes))
        if not self.fiber_axes:
            raise ModelError("a submersion model needs at least one fiber axis")
        for ax in self.fiber_axes:
            if not 0 <= ax < total.ndim:
                raise ModelError(f"no axis {ax} to project out")
        if len(self.fiber_axes) == total.ndim:
            raise ModelError("base must keep at least one axis")
        self.base = total.subgrid([i for i in range(total.ndim)
                                   if i not in self.fiber_axes])


# ---------------------------------------------------------------------------
# model construction helpers and JSON descriptors

def antipodal_circle_model(n: int) -> FiniteActionModel:
    """Z/2 acting on the circle by the half-turn; n must be even."""
    if n % 2:
        raise ModelError("antipodal model needs an even node count")
    grid = Grid([Axis(n, 0.0, 2 * np.pi, periodic=True)])
    idx = np.arange(n)
    return FiniteActionModel(
        grid,
        table=[[0, 1], [1, 0]],
        node_maps=[idx, (idx + n // 2) % n],
        point_maps=[lambda t: (t,), lambda t: (np.mod(t + np.pi, 2 * np.pi),)],
        name="antipodal_circle",
    )


def mirror_interval_model(n: int, half_width: float) -> FiniteActionModel:
    """Z/2 acting on a symmetric interval by x -> -x."""
    grid = Grid([Axis(n, -half_width, half_width)])
    idx = np.arange(n)
    return FiniteActionModel(
        grid,
        table=[[0, 1], [1, 0]],
        node_maps=[idx, idx[::-1].copy()],
        point_maps=[lambda x: (x,), lambda x: (-x,)],
        name="mirror_interval",
    )


def circle_self_model(n: int) -> "CircleSelfModel":
    return CircleSelfModel(n)


class CircleSelfModel(ActionGroupoidModel):
    """The circle acting on itself by rotation; one orbit, trivial isotropy."""

    name = "circle_self"

    def __init__(self, n: int):
        grid = Grid([Axis(n, 0.0, 2 * np.pi, periodic=True)])
        super().__init__(grid, n)
        self.group = GroupModel("circle", n=n)

    def haar_masses(self):
        return self.group.haar_weights()

    def mul(self, j, k):
        return (j + k) % self.group_size

    def inv(self, j):
        return (-j) % self.group_size

    def identity_index(self):
        return 0

    def pull(self, j, values):
        return np.roll(values, -j, axis=0)

    def act_points(self, j, pts):
        (t,) = pts
        return (np.mod(t + 2 * np.pi * j / self.group_size, 2 * np.pi),)

    def jacobian_points(self, j, pts):
        return 1.0

    def project_to_base(self, values):
        return np.asarray([values.ravel()[0]]), "point"


def build_model(descriptor: dict):
    """Instantiate a model from its JSON descriptor (External Interfaces)."""
    kind = descriptor.get("kind")
    params = descriptor.get("params", {})
    if kind == "rotation2d":
        return RotationPlaneModel(
            n_r=int(params.get("n_r", 64)), n_phi=int(params.get("n_phi", 64)),
            r_lo=float(params.get("r_lo", 1.0)), r_hi=float(params.get("r_hi", 2.0)))
    if kind == "antipodal_circle":
        return antipodal_circle_model(int(params.get("n", 256)))
    if kind == "mirror_interval":
        return mirror_interval_model(int(params.get("n", 257)),
                                     float(params.get("half_width", 1.0)))
    if kind == "finite_action":
        preset = params.get("preset")
        if preset == "antipodal_circle":
            return antipodal_circle_model(int(params.get("n", 256)))
        if preset == "mirror_interval":
            return mirror_interval_model(int(params.get("n", 257)),
                                         float(params.get("half_width", 1.0)))
        raise ModelError(f"unknown finite action preset {preset!r}")
    if kind == "circle_self":
        return circle_self_model(int(params.get("n", 256)))
    if kind == "trivial":
        return TrivialActionModel(Grid.from_json(json.dumps(descriptor["grid"])))
    if kind == "scaling_line":
        return ScalingLineModel(max_power=int(params.get("max_power", 2)))
    if kind == "submersion":
        grid = Grid.from_json(json.dumps(descriptor["grid"]))
        return SubmersionGroupoidModel(grid, [int(a) for a in params["fiber_axes"]])
    raise ModelError(f"unknown model kind {kind!r}")


class TransverseDensityData:
    """A decomposed transverse density: algebroid weight and base density.

    ``rho_fn`` is the strictly positive object-side weight whose right
    translation gives the source-fiber densities; ``tau_fn`` the chart
    coefficient of the base density.  Both are kept as callables (for
    pointwise cocycle evaluation) and sampled on the model grid.
    """

    def __init__(self, model, rho_fn, tau_fn):
        self.model = model
        self.rho_fn = rho_fn
        self.tau_fn = tau_fn
        mesh = model.grid.meshgrid()
        self.rho_values = np.asarray(rho_fn(*mesh), dtype=float) + np.zeros(model.grid.shape)
        self.tau_values = np.asarray(tau_fn(*mesh), dtype=float) + np.zeros(model.grid.shape)
        if np.any(self.rho_values <= 0):
            raise ModelError("algebroid weight must be strictly positive (full)")
        if np.any(self.tau_values < 0):
            raise ModelError("base density must be nonnegative")

    @staticmethod
    def lebesgue(model) -> "TransverseDensityData":
        """Unit weight with the model's natural volume coefficient."""
        if isinstance(model, RotationPlaneModel):
            return TransverseDensityData(model, lambda r, p: np.ones_like(r),
                                         lambda r, p: r)
        return TransverseDensityData(model, lambda *c: np.ones_like(c[0]),
                                     lambda *c: np.ones_like(c[0]))
