"""Aztec castles, cluster variables of the dP3 quiver and their minimal matchings."""

from .castle import Castle, build_castle, trim_dangling
from .contour import Contour, SelfIntersecting, classify_region, dragon, tuple_for_point
from .kernel import BACKEND
from .matchings import (
    Matching,
    TooLarge,
    count_matchings,
    enumerate_matchings,
    minimal_matching_bruteforce,
    minimal_matching_descent,
    twist_lattice,
    weight,
    weighted_sum,
    weighted_sum_framed,
)
from .minmatch import ConstructionGap, construct_minimal, sector_division
from .poly import LaurentPoly, parse_poly
from .prism import cluster_var_at_point, tau_word_to_point
from .quiver import apply_tau, dp3_quiver, initial_seed

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Castle",
    "ConstructionGap",
    "Contour",
    "LaurentPoly",
    "Matching",
    "SelfIntersecting",
    "TooLarge",
    "apply_tau",
    "build_castle",
    "classify_region",
    "cluster_var_at_point",
    "construct_minimal",
    "count_matchings",
    "dp3_quiver",
    "dragon",
    "enumerate_matchings",
    "initial_seed",
    "minimal_matching_bruteforce",
    "minimal_matching_descent",
    "parse_poly",
    "sector_division",
    "tau_word_to_point",
    "trim_dangling",
    "tuple_for_point",
    "twist_lattice",
    "weight",
    "weighted_sum",
    "weighted_sum_framed",
]
