"""Quadrature engine for parametrized proper groupoid models."""

from .models import (
    ActionGroupoidModel,
    CircleSelfModel,
    FiniteActionModel,
    ModelError,
    RotationPlaneModel,
    ScalingLineModel,
    SubmersionGroupoidModel,
    TransverseDensityData,
    TrivialActionModel,
    antipodal_circle_model,
    build_model,
    circle_self_model,
    mirror_interval_model,
)
from .transverse import (
    ANALYTIC_TOL,
    QUADRATURE_TOL,
    ArrowFunction,
    AveragingResult,
    DiscreteMeasure,
    ModularCocycleData,
    SaturationError,
    TwoSidedCheck,
    averaging,
    cocycle_additivity_defect,
    cutoff_construct,
    cutoff_normalization_defect,
    default_test_set,
    fiber_volumes,
    invariance_defect,
    inversion_invariance_check,
    modular_cocycle,
    orbit_density,
    s_fiber_integrate,
    t_fiber_integrate,
    weinstein_volume,
    weyl_check,
)
from .foliation import (
    ExactnessReport,
    FiberObstructionError,
    FoliatedGrid,
    OneForm,
    exactness_probe,
    exterior_derivative,
    ruelle_sullivan_evaluate,
    stokes_defect,
)

__all__ = [
    "ActionGroupoidModel", "CircleSelfModel", "FiniteActionModel", "ModelError",
    "RotationPlaneModel", "ScalingLineModel", "SubmersionGroupoidModel",
    "TransverseDensityData", "TrivialActionModel", "antipodal_circle_model",
    "build_model", "circle_self_model", "mirror_interval_model",
    "ANALYTIC_TOL", "QUADRATURE_TOL", "ArrowFunction", "AveragingResult",
    "DiscreteMeasure", "ModularCocycleData", "SaturationError",
    "TwoSidedCheck", "averaging",
    "cocycle_additivity_defect", "cutoff_construct",
    "cutoff_normalization_defect", "default_test_set", "fiber_volumes",
    "invariance_defect", "inversion_invariance_check", "modular_cocycle",
    "orbit_density", "s_fiber_integrate", "t_fiber_integrate",
    "weinstein_volume", "weyl_check",
    "ExactnessReport", "FiberObstructionError", "FoliatedGrid", "OneForm",
    "exactness_probe", "exterior_derivative", "ruelle_sullivan_evaluate",
    "stokes_defect",
]
