"""Transverse operations on action models: fiber integrals through cocycles.

Heavier identities run on moderate grids; the acceptance suite repeats the
critical ones at the full resolutions.
"""

import numpy as np
import pytest

from groupoid_measures.smooth import (
    ArrowFunction,
    ModelError,
    RotationPlaneModel,
    SaturationError,
    ScalingLineModel,
    TransverseDensityData,
    antipodal_circle_model,
    averaging,
    circle_self_model,
    cocycle_additivity_defect,
    cutoff_construct,
    cutoff_normalization_defect,
    default_test_set,
    fiber_volumes,
    invariance_defect,
    inversion_invariance_check,
    mirror_interval_model,
    modular_cocycle,
    orbit_density,
    s_fiber_integrate,
    t_fiber_integrate,
    weinstein_volume,
    weyl_check,
)
from groupoid_measures.smooth.models import TrivialActionModel
from groupoid_measures.density import Axis, Grid


@pytest.fixture(scope="module")
def rotation():
    return RotationPlaneModel(n_r=48, n_phi=64, r_lo=1.0, r_hi=2.0)


@pytest.fixture(scope="module")
def lebesgue(rotation):
    return TransverseDensityData.lebesgue(rotation)


def test_model_axioms_hold_on_samples(rotation):
    assert rotation.check_axioms(np.random.default_rng(0)) <= 1e-12
    assert antipodal_circle_model(64).check_axioms(np.random.default_rng(1)) <= 1e-12
    assert mirror_interval_model(65, 1.0).check_axioms(np.random.default_rng(2)) <= 1e-12


def test_s_fiber_integral_of_one_with_normalized_weight(rotation):
    rho = np.ones(rotation.grid.shape)
    u = ArrowFunction.from_base_function(rotation, np.ones(rotation.grid.shape))
    out = s_fiber_integrate(rotation, rho, u)
    assert np.max(np.abs(out - 1.0)) <= 1e-12


def test_s_fiber_integral_factorizes_group_independent_input(rotation):
    rng = np.random.default_rng(3)
    rho = 1.0 + 0.2 * rng.uniform(size=rotation.grid.shape)
    u1 = rng.standard_normal(rotation.grid.shape)
    out = s_fiber_integrate(rotation, rho,
                            ArrowFunction.from_base_function(rotation, u1))
    expected = u1 * fiber_volumes(rotation, rho)
    assert np.max(np.abs(out - expected)) <= 1e-12


def test_two_element_fiber_sums_cross_checked_by_hand():
    model = mirror_interval_model(9, 1.0)
    rho = np.linspace(1.0, 2.0, 9)
    u_slices = np.stack([np.arange(9.0), np.arange(9.0)[::-1]])
    u = ArrowFunction(model, lambda j: u_slices[j])
    out = s_fiber_integrate(model, rho, u)
    # two-term sums: haar mass 1/2 each, identity leaves nodes, mirror flips
    expected = 0.5 * (u_slices[0] * rho + u_slices[1] * rho[::-1])
    assert np.max(np.abs(out - expected)) <= 1e-15

    tout = t_fiber_integrate(model, rho, u)
    # target-fiber integral at x: the unit arrow at x plus the mirror arrow
    # from -x, which carries the fiber mass of its inverse, rho(-x)/2
    expected_t = 0.5 * (u_slices[0] * rho + u_slices[1][::-1] * rho[::-1])
    assert np.max(np.abs(tout - expected_t)) <= 1e-15


def test_fiber_integrals_are_linear(rotation, lebesgue):
    rng = np.random.default_rng(4)
    u = ArrowFunction.random(rotation, rng)
    v = ArrowFunction.random(rotation, rng)
    c = 1.75
    comb = ArrowFunction(rotation, lambda j: c * u.slice(j) + v.slice(j))
    left = s_fiber_integrate(rotation, lebesgue.rho_values, comb)
    right = c * s_fiber_integrate(rotation, lebesgue.rho_values, u) \
        + s_fiber_integrate(rotation, lebesgue.rho_values, v)
    assert np.max(np.abs(left - right)) <= 1e-12


def test_invariance_defect_small_for_invariant_sigma(rotation, lebesgue):
    tests = default_test_set(rotation, np.random.default_rng(5))
    assert invariance_defect(rotation, lebesgue, tests) <= 1e-6
    assert inversion_invariance_check(rotation, lebesgue, tests) <= 1e-6


def test_invariance_defect_detects_angular_weight(rotation):
    bad = TransverseDensityData(rotation, lambda r, p: np.ones_like(r),
                                lambda r, p: r * (1.0 + 0.5 * np.cos(p)))
    tests = default_test_set(rotation, np.random.default_rng(5))
    assert invariance_defect(rotation, bad, tests) > 1e-2
    assert inversion_invariance_check(rotation, bad, tests) > 1e-2


def test_trivial_action_has_exact_zero_defect():
    grid = Grid([Axis(17, 0.0, 1.0)])
    model = TrivialActionModel(grid)
    sigma = TransverseDensityData(model, lambda x: np.ones_like(x),
                                  lambda x: 1.0 + x)
    tests = default_test_set(model, np.random.default_rng(6), count=4)
    assert invariance_defect(model, sigma, tests) == 0.0


def test_averaging_of_radial_section_returns_radial_profile(rotation, lebesgue):
    r = rotation.grid.meshgrid()[0]
    section = np.exp(-3 * (r - 1.5) ** 2)
    res = averaging(rotation, lebesgue.rho_values, section)
    assert res.constancy_defect <= 1e-14
    assert np.max(np.abs(res.values - section)) <= 1e-12  # rho is normalized
    assert res.base_values.shape == (rotation.grid.shape[0],)


def test_averaging_annihilates_shriek_differences(rotation, lebesgue):
    rng = np.random.default_rng(7)
    for _ in range(5):
        u = ArrowFunction.random(rotation, rng)
        diff = s_fiber_integrate(rotation, lebesgue.rho_values, u) \
            - t_fiber_integrate(rotation, lebesgue.rho_values, u)
        res = averaging(rotation, lebesgue.rho_values, diff)
        assert np.max(np.abs(res.values)) <= 1e-6


def test_averaging_matches_finite_engine_on_z2_action():
    from fractions import Fraction
    from groupoid_measures.finite import (action_groupoid, average_function,
                                          cyclic_group_table, HaarWeight)
    model = mirror_interval_model(5, 1.0)
    # dyadic section and weight so float sums are exact
    section = np.array([0.5, 1.0, 0.25, 2.0, 0.75])
    rho = np.array([2.0, 2.0, 2.0, 2.0, 2.0])
    res = averaging(model, rho, section)

    perm = [4, 3, 2, 1, 0]
    g = action_groupoid(cyclic_group_table(2),
                        [list(range(5)), perm], 5, "mirror")
    haar = HaarWeight(g, [Fraction(1)] * 5)
    exact = average_function(g, haar, [Fraction(v) for v in section])
    assert [Fraction(v) for v in res.values] == exact


def test_cutoff_constant_seed_on_normalized_model(rotation, lebesgue):
    c = cutoff_construct(rotation, lebesgue.rho_values,
                         np.ones(rotation.grid.shape))
    assert np.max(np.abs(c - 1.0)) <= 1e-12


def test_cutoff_gaussian_seed_normalizes_nodewise(rotation, lebesgue):
    r, phi = rotation.grid.meshgrid()
    seed = np.exp(-4 * (r - 1.5) ** 2) * (1.3 + np.cos(phi))
    c = cutoff_construct(rotation, lebesgue.rho_values, seed)
    assert cutoff_normalization_defect(rotation, lebesgue.rho_values, c) <= 1e-9


def test_cutoff_saturation_failure(rotation, lebesgue):
    r = rotation.grid.meshgrid()[0]
    off_orbit = np.exp(-1500.0 * (r - 1.5) ** 2)
    with pytest.raises(SaturationError, match="saturation"):
        cutoff_construct(rotation, lebesgue.rho_values, off_orbit)


def test_weyl_formula_and_seed_independence(rotation, lebesgue):
    r, phi = rotation.grid.meshgrid()
    f = np.exp(-30 * (r - 1.5) ** 2) * (1 + 0.3 * np.cos(phi))
    seed1 = np.exp(-4 * (r - 1.5) ** 2) * (1.3 + np.cos(phi))
    seed2 = 0.5 + 0.1 * np.sin(phi) + (r - 1.5) ** 2
    res1 = weyl_check(rotation, lebesgue, f, seed1)
    res2 = weyl_check(rotation, lebesgue, f, seed2)
    assert res1.rel_err <= 1e-6
    assert abs(res1.rhs - res2.rhs) <= 2e-6 * abs(res1.rhs)


def test_weyl_radial_integrand_against_polar_closed_form(rotation, lebesgue):
    # f(r) = r: integral of r * (Lebesgue) over the annulus = 2 pi (r_hi^3 - r_lo^3)/3
    r = rotation.grid.meshgrid()[0]
    res = weyl_check(rotation, lebesgue, r)
    closed = 2 * np.pi * (2.0 ** 3 - 1.0) / 3
    assert abs(res.lhs - closed) <= 1e-3 * closed  # trapezoid in r
    assert res.rel_err <= 1e-12


def test_weyl_volume_corollary(rotation, lebesgue):
    # f = 1: lhs is the total area, rhs integrates orbit volumes
    res = weyl_check(rotation, lebesgue, np.ones(rotation.grid.shape))
    assert res.rel_err <= 1e-12
    area = np.pi * (4.0 - 1.0)
    assert abs(res.lhs - area) <= 1e-10 * area


def test_weinstein_volume_antipodal_circle():
    model = antipodal_circle_model(256)
    sigma = TransverseDensityData(model, lambda t: 2.0 * np.ones_like(t),
                                  lambda t: np.ones_like(t))
    res = weinstein_volume(model, sigma,
                           phi_seed=1.0 + 0.5 * np.cos(2 * model.grid.nodes(0)))
    assert abs(res.lhs - np.pi) <= 1e-9
    assert res.rel_err <= 1e-6


def test_weinstein_volume_circle_self_action():
    model = circle_self_model(128)
    sigma = TransverseDensityData(model, lambda t: np.ones_like(t),
                                  lambda t: np.ones_like(t) / (2 * np.pi))
    res = weinstein_volume(model, sigma)
    assert abs(res.lhs - 1.0) <= 1e-12
    assert res.rel_err <= 1e-12


def test_weinstein_volume_trivial_group_returns_total_mass():
    grid = Grid([Axis(33, 0.0, 2.0)])
    model = TrivialActionModel(grid)
    sigma = TransverseDensityData(model, lambda x: np.ones_like(x),
                                  lambda x: np.ones_like(x))
    res = weinstein_volume(model, sigma)
    assert abs(res.lhs - 2.0) <= 1e-12


def test_orbit_density_free_rotation(rotation, lebesgue):
    measure = orbit_density(rotation, lebesgue.rho_values, (10, 3))
    assert abs(measure.total() - 1.0) <= 1e-12
    n_phi = rotation.grid.shape[1]
    assert len(measure.masses) == n_phi
    rows = {k // n_phi for k in measure.masses}
    assert rows == {10}


def test_orbit_density_base_point_independence(rotation, lebesgue):
    first = orbit_density(rotation, lebesgue.rho_values, (10, 3))
    second = orbit_density(rotation, lebesgue.rho_values, (10, 40))
    assert first.distance(second) <= 1e-9


def test_orbit_density_fixed_point_is_an_atom():
    disk = RotationPlaneModel(n_r=17, n_phi=32, r_lo=0.0, r_hi=1.0)
    rho = np.ones(disk.grid.shape)
    measure = orbit_density(disk, rho, (0, 5))
    assert abs(measure.total() - 1.0) <= 1e-12
    assert {k // 32 for k in measure.masses} == {0}  # supported at radius zero


def test_modular_cocycle_vanishes_for_lebesgue_rotation(rotation, lebesgue):
    rng = np.random.default_rng(8)
    for _ in range(20):
        j = int(rng.integers(rotation.group_size))
        x = (float(rng.uniform(1.0, 2.0)), float(rng.uniform(0, 2 * np.pi)))
        assert abs(modular_cocycle(rotation, lebesgue, j, x)) <= 1e-12


def test_modular_cocycle_scaling_model_gives_log_two():
    model = ScalingLineModel(max_power=2)
    sigma = TransverseDensityData(model, lambda x: np.ones_like(x),
                                  lambda x: np.ones_like(x))
    j_double = model.max_power + 1
    value = modular_cocycle(model, sigma, j_double, (1.0,))
    # finite-difference Jacobian oracle for the doubling map
    eps = 1e-6
    fd = ((model.act_points(j_double, (1.0 + eps,))[0]
           - model.act_points(j_double, (1.0 - eps,))[0]) / (2 * eps))
    assert abs(fd - 2.0) <= 1e-9
    assert abs(value - np.log(2.0)) <= 1e-12


def test_cocycle_additivity_on_seeded_pairs(rotation, lebesgue):
    assert cocycle_additivity_defect(rotation, lebesgue,
                                     np.random.default_rng(9)) <= 1e-9
    model = ScalingLineModel(max_power=2)
    sigma = TransverseDensityData(model, lambda x: np.ones_like(x),
                                  lambda x: 2.0 + np.sin(x))
    assert cocycle_additivity_defect(model, sigma,
                                     np.random.default_rng(10)) <= 1e-9


def test_cocycle_requires_positive_sigma():
    model = ScalingLineModel(max_power=1)
    sigma = TransverseDensityData(model, lambda x: np.ones_like(x),
                                  lambda x: np.ones_like(x))
    sigma.tau_fn = lambda x: x - 10.0  # negative at the sample point
    with pytest.raises(ValueError, match="positive"):
        modular_cocycle(model, sigma, model.max_power + 1, (1.0,))


def test_averaging_requires_proper_model():
    model = ScalingLineModel()
    with pytest.raises(ModelError, match="proper"):
        averaging(model, np.ones(model.grid.shape), np.ones(model.grid.shape))


def test_modular_cocycle_data_wrapper():
    from groupoid_measures.smooth import ModularCocycleData
    model = ScalingLineModel(max_power=2)
    sigma = TransverseDensityData(model, lambda x: np.ones_like(x),
                                  lambda x: np.ones_like(x))
    cocycle = ModularCocycleData(sigma)
    assert abs(cocycle(model.max_power + 1, (1.0,)) - np.log(2.0)) <= 1e-12
    assert cocycle.additivity_defect(np.random.default_rng(11)) <= 1e-9


def test_weinstein_threshold_error():
    model = circle_self_model(64)
    sigma = TransverseDensityData(model, lambda t: np.ones_like(t),
                                  lambda t: np.ones_like(t))
    with pytest.raises(ModelError, match="threshold"):
        weinstein_volume(model, sigma, volume_threshold=10.0)


def test_finite_action_descriptor_kind():
    from groupoid_measures.smooth import build_model
    model = build_model({"kind": "finite_action",
                         "params": {"preset": "antipodal_circle", "n": 64}})
    assert model.group_size == 2


def test_weyl_trivial_group_sides_are_identical():
    grid = Grid([Axis(21, 0.0, 1.0), Axis(13, 0.0, 2.0)])
    model = TrivialActionModel(grid)
    sigma = TransverseDensityData(model, lambda x, y: np.ones_like(x),
                                  lambda x, y: 1.0 + x * y)
    f = np.sin(grid.meshgrid()[0]) + grid.meshgrid()[1]
    res = weyl_check(model, sigma, f)
    assert res.lhs == res.rhs


def test_action_axioms_robust_at_angle_wraparound():
    # composites landing within an ulp of the period must not register as
    # order-one defects; compare j + k = n at a node near the seam
    model = RotationPlaneModel(n_r=4, n_phi=256, r_lo=1.0, r_hi=2.0)
    phi = model.grid.nodes(1)[255]
    two_step = model.act_points(1, model.act_points(255, (1.5, phi)))
    combined = model.act_points(0, (1.5, phi))
    assert model._point_distance(two_step, combined) <= 1e-12
