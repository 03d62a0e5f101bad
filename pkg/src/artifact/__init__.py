"""Exact continuation of partition polytopes and their lattice sums across walls."""

from .configuration import (
    Configuration,
    Tope,
    adjacent,
    adjacent_pairs,
    basic_subsets,
    basic_subsets_of_tope,
    crossing_set,
    enumerate_topes,
    flip,
    generating_subsets,
    generating_subsets_of_tope,
    in_fattened_tope,
    is_flip_salient,
    random_regular_covector,
    tope_of,
    tope_path,
    walls,
)
from .continuation import (
    QuasiPolyFit,
    WeightPolynomial,
    brute_force_count,
    discrete_sum,
    lattice_points_flip_polytope,
    quasipoly_fit,
    signed_support,
    toric_multiplicity,
    virtual_dimension,
    volume_integral,
    wallcross_count_check,
)
from .errors import ArtifactError
from .facelift import LiftedConfiguration, lift, lifted_tope, slice_count, slice_value, transverse_quasipoly_fit
from .problem import Problem, parse_problem
from .quadrant import WPolynomial, bg_polynomial, geom_eval, lv_polynomial, path_flip_list, wallcross_delta
from .render import RenderScene, render_svg

__all__ = [
    "adjacent",
    "adjacent_pairs",
    "ArtifactError",
    "basic_subsets",
    "basic_subsets_of_tope",
    "bg_polynomial",
    "brute_force_count",
    "Configuration",
    "crossing_set",
    "discrete_sum",
    "enumerate_topes",
    "flip",
    "generating_subsets",
    "generating_subsets_of_tope",
    "geom_eval",
    "in_fattened_tope",
    "is_flip_salient",
    "lattice_points_flip_polytope",
    "lift",
    "lifted_tope",
    "LiftedConfiguration",
    "lv_polynomial",
    "parse_problem",
    "path_flip_list",
    "Problem",
    "quasipoly_fit",
    "QuasiPolyFit",
    "random_regular_covector",
    "render_svg",
    "RenderScene",
    "signed_support",
    "slice_count",
    "slice_value",
    "Tope",
    "tope_of",
    "tope_path",
    "toric_multiplicity",
    "transverse_quasipoly_fit",
    "virtual_dimension",
    "volume_integral",
    "wallcross_count_check",
    "wallcross_delta",
    "walls",
    "WeightPolynomial",
    "WPolynomial",
]

__version__ = "0.1.0"
