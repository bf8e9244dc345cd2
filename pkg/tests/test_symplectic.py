"""Liouville totals, DH mass, affine measures and their volume identities."""

import numpy as np
import pytest

from groupoid_measures.density import Axis, Grid, integrate
from groupoid_measures.symplectic import (
    LeafFamilyModel,
    SymplecticModelError,
    SymplecticPairModel,
    affine_measure,
    affine_volume,
    dh_total_mass_two_ways,
    dh_weyl_check,
    leaf_family_from_json,
    liouville_density,
)


def sphere_family(iota=1, n=65, area_scale=4 * np.pi):
    base = Grid([Axis(n, 1.0, 2.0)])
    return LeafFamilyModel(base,
                           lambda t: area_scale * t,
                           lambda t: area_scale + 0 * t,
                           iota=iota)


def test_sphere_liouville_total_is_area():
    model = SymplecticPairModel.sphere()
    total = integrate(liouville_density(model))
    assert abs(total - 4 * np.pi) <= 1e-6 * 4 * np.pi


def test_scaled_sphere_area_is_linear():
    for scale in (0.5, 3.0):
        model = SymplecticPairModel.sphere(area=scale * 4 * np.pi)
        total = integrate(liouville_density(model))
        assert abs(total - scale * 4 * np.pi) <= 1e-12 * scale * 4 * np.pi


def test_torus_cell_liouville_total_is_one():
    assert abs(integrate(liouville_density(SymplecticPairModel.torus_cell())) - 1.0) \
        <= 1e-12


def test_dh_mass_two_paths_sphere():
    res = dh_total_mass_two_ways(SymplecticPairModel.sphere())
    assert res.rel_err <= 1e-5
    assert abs(res.lhs - 16 * np.pi ** 2) <= 1e-5 * 16 * np.pi ** 2


def test_dh_mass_torus_cell():
    res = dh_total_mass_two_ways(SymplecticPairModel.torus_cell())
    assert abs(res.lhs - 1.0) <= 1e-12


def test_affine_measure_total_for_linear_area():
    mu = affine_measure(sphere_family())
    assert abs(mu.total_mass() - 4 * np.pi) <= 1e-9 * 4 * np.pi


def test_affine_measure_scales_with_area():
    base_total = affine_measure(sphere_family()).total_mass()
    scaled_total = affine_measure(sphere_family(area_scale=8 * np.pi)).total_mass()
    assert abs(scaled_total - 2 * base_total) <= 1e-12 * scaled_total


def test_affine_measure_is_positive_and_linear():
    mu = affine_measure(sphere_family())
    rng = np.random.default_rng(0)
    mu.check_linearity(rng)
    mu.check_positivity(rng)
    assert mu(np.zeros(mu.grid.shape)) == 0.0


def test_degenerate_lattice_is_rejected():
    family = sphere_family()
    with pytest.raises(SymplecticModelError, match="degenerate"):
        affine_measure(family, lattice_density=np.zeros(family.base.shape))


def test_dh_weyl_identity_and_localization():
    family = sphere_family()
    t = family.base.nodes(0)
    profile = np.exp(-4 * (t - 1.5) ** 2)
    res = dh_weyl_check(family,
                        lambda i: np.full(family.leaf.grid.shape, profile[i]))
    assert res.rel_err <= 1e-6

    ones = dh_weyl_check(family, lambda i: np.ones(family.leaf.grid.shape))
    # closed form: integral of A(t) |A'(t)| dt = 16 pi^2 integral of t dt
    closed = 16 * np.pi ** 2 * (2.0 ** 2 - 1.0) / 2
    assert abs(ones.lhs - closed) <= 1e-9 * closed


def test_dh_weyl_scaling_under_doubled_iota():
    fam1, fam2 = sphere_family(iota=1), sphere_family(iota=2)
    res1 = dh_weyl_check(fam1, lambda i: np.ones(fam1.leaf.grid.shape))
    res2 = dh_weyl_check(fam2, lambda i: np.ones(fam2.leaf.grid.shape))
    assert res1.rel_err <= 1e-12 and res2.rel_err <= 1e-12
    assert abs(res1.lhs - res2.lhs) <= 1e-12 * abs(res1.lhs)


def test_affine_volume_identity_and_iota_halving():
    res1 = affine_volume(sphere_family(iota=1))
    res2 = affine_volume(sphere_family(iota=2))
    assert res1.rel_err <= 1e-6 and res2.rel_err <= 1e-6
    assert abs(res1.lhs - 4 * np.pi) <= 1e-6 * 4 * np.pi
    assert abs(res2.lhs - 0.5 * res1.lhs) <= 1e-12 * res1.lhs


def test_affine_volume_single_leaf_degenerates_to_point_mass():
    base = Grid([Axis(2, 1.0, 1.0 + 1e-9)])
    family = LeafFamilyModel(base, lambda t: 4 * np.pi + 0 * t,
                             lambda t: 1.0 + 0 * t, iota=1)
    res = affine_volume(family)
    # base mass m with unit lattice density
    assert abs(res.lhs - base.axes[0].length) <= 1e-12 * base.axes[0].length


def test_affine_volume_refinement_order_against_closed_form():
    # exponential area family: trapezoid error is genuinely O(h^2)
    closed = 4 * np.pi * (np.exp(2.0) - np.exp(1.0))
    errors = []
    for n in (17, 33):
        base = Grid([Axis(n, 1.0, 2.0)])
        family = LeafFamilyModel(base, lambda t: 4 * np.pi * np.exp(t),
                                 lambda t: 4 * np.pi * np.exp(t), iota=1)
        errors.append(abs(affine_volume(family).lhs - closed))
    assert np.log2(errors[0] / errors[1]) >= 1.8


def test_leaf_family_json_loader():
    doc = ('{"B": {"lo": 1.0, "hi": 2.0, "n": 33}, "area": "4*pi*t", '
           '"area_derivative": "4*pi + 0*t", "iota": 2, "leaf": "sphere"}')
    family = leaf_family_from_json(doc)
    assert family.iota == 2
    assert abs(affine_measure(family).total_mass() - 4 * np.pi) <= 1e-9
    with pytest.raises(SymplecticModelError, match="not allowed"):
        leaf_family_from_json(doc.replace("4*pi*t", "__import__('os')"))
