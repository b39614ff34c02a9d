"""Total mean curvature and area of axisymmetric surfaces from their generating angle.

A surface of revolution is described by the angle ``theta(s)`` its generating
curve makes with the horizontal, as a function of arclength ``s`` in
``[0, L]``.  Profiles are continuous and piecewise linear; every integral of
the curve and of the curvature functionals is evaluated in closed form.
"""

from .families import (
    AsymptoticFit,
    InfeasibleParametersError,
    build_dimple,
    build_double_sphere,
    dimple_packing_count,
    fit_asymptotics,
    multi_dimple_aggregate,
)
from .geometry import (
    GeometricSummary,
    area,
    principal_curvatures,
    summarize,
    total_abs_mean_curvature,
    total_gauss_curvature,
    total_mean_curvature,
)
from .inequalities import (
    InequalityReport,
    abs_minkowski_check,
    bonnesen_check,
    critical_point_residual,
    detect_sphere,
    inequality_report,
    minkowski_check,
)
from .mesh import Mesh, export_mesh
from .profile import (
    AdmissibilityReport,
    NotAdmissibleError,
    Profile,
    ProfileError,
    dump_profile,
    load_profile,
    segment_integrals,
    sphere_profile,
    validate,
)
from .rearrange import RearrangedProfile, check_rearrangement_properties, fold, monotone_rearrange
from .sampling import random_profile, random_suite
from .variation import PerturbationField, VariationReport, analytic_variations, first_variation_check, perturb_profile

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "AsymptoticFit",
    "GeometricSummary",
    "InequalityReport",
    "InfeasibleParametersError",
    "Mesh",
    "NotAdmissibleError",
    "PerturbationField",
    "Profile",
    "ProfileError",
    "RearrangedProfile",
    "VariationReport",
    "abs_minkowski_check",
    "analytic_variations",
    "area",
    "bonnesen_check",
    "build_dimple",
    "build_double_sphere",
    "check_rearrangement_properties",
    "critical_point_residual",
    "detect_sphere",
    "dimple_packing_count",
    "dump_profile",
    "export_mesh",
    "first_variation_check",
    "fit_asymptotics",
    "fold",
    "inequality_report",
    "load_profile",
    "minkowski_check",
    "monotone_rearrange",
    "multi_dimple_aggregate",
    "perturb_profile",
    "principal_curvatures",
    "random_profile",
    "random_suite",
    "segment_integrals",
    "sphere_profile",
    "summarize",
    "total_abs_mean_curvature",
    "total_gauss_curvature",
    "total_mean_curvature",
    "validate",
]
