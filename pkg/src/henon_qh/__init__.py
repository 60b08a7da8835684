"""Numerical laboratory for complex polynomial diffeomorphisms of C^2.

Hénon-type maps, escape-rate (Green) functions, saddle periodic orbits,
invariant-manifold power series, canonical growth metrics, heteroclinic
intersections with tangency orders, and quasi-hyperbolicity diagnostics.
"""

from .green import GREEN_TOL, escape_time, green_batch, green_minus, \
    green_plus, in_k_minus, in_k_plus
from .intersect import IntersectionRecord, find_intersections, \
    hermitian_angle, manufactured_tangent_pair, polynomial_curve, \
    tangency_decay_experiment, transversality_report
from .family import CurveFamily, GrowthProfile, LocalDisk, \
    build_recentered_family, build_saddle_family, contraction_check, \
    estimate_tau, growth_profile, local_disk, stratify
from .maps import EscapeError, HenonFactor, HenonMap, MapSpecError, \
    filtration_radius, map_from_dict, map_to_dict, quadratic_henon
from .saddles import NonSaddleCycle, Saddle, find_periodic, find_saddles, \
    periodic_points
from .uniformize import SeriesParametrization, SharpMetric, \
    circle_max_green, lambda_of, linearize, normalize, sharp_norm

__version__ = "1.0.0"

__all__ = [
    "GREEN_TOL", "escape_time", "green_batch", "green_minus", "green_plus",
    "in_k_minus", "in_k_plus", "IntersectionRecord", "find_intersections",
    "hermitian_angle", "manufactured_tangent_pair", "polynomial_curve",
    "tangency_decay_experiment", "transversality_report", "CurveFamily",
    "GrowthProfile", "LocalDisk", "build_recentered_family",
    "build_saddle_family", "contraction_check", "estimate_tau",
    "growth_profile", "local_disk", "stratify", "EscapeError", "HenonFactor",
    "HenonMap", "MapSpecError", "filtration_radius", "map_from_dict",
    "map_to_dict", "quadratic_henon", "NonSaddleCycle", "Saddle",
    "find_periodic", "find_saddles", "periodic_points",
    "SeriesParametrization", "SharpMetric", "circle_max_green", "lambda_of",
    "linearize", "normalize", "sharp_norm", "__version__",
]
