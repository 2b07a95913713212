"""Approximate parametrization of real plane algebraic curves under a tolerance."""

from .curvegen import FamilySpec, base_form, evaluate_family, family, perturbed_curve
from .epsgeom import EpsilonPoint, annotate, eps_multiplicity, r_in, r_out
from .errordist import DistanceReport, distance_stats, min_line_distance, sample_curve_points
from .numeric import PrecisionContext, solve_system
from .param import (ParamError, RationalParam, implicitize, parametrize,
                    verify_infinity)
from .polycore import Poly, homogenize, parse_poly, resultant, to_text
from .singular import Cluster, analyze, cluster_decomposition, eps_singular_locus

__all__ = [
    "Cluster", "DistanceReport", "EpsilonPoint", "FamilySpec", "ParamError", "Poly",
    "PrecisionContext", "RationalParam", "analyze", "annotate", "base_form",
    "cluster_decomposition", "distance_stats", "eps_multiplicity", "eps_singular_locus",
    "evaluate_family", "family", "homogenize", "implicitize", "min_line_distance",
    "parametrize", "parse_poly", "perturbed_curve", "r_in", "r_out", "resultant",
    "sample_curve_points", "solve_system", "to_text", "verify_infinity",
]
