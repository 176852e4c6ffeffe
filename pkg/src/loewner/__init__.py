"""Approximate Loewner-extremal matrices via minimum enclosing balls of balls."""

from .cluster import ClusterResult, KCenterClustering, kcenter
from .conegeom import Ball, NormalizationShift, ball_contains, ball_to_apex, cone_to_ball, normalize_traces
from .exceptions import ConvergenceError, NotPositiveDefiniteError, SingularMatrixError
from .extremal import LoewnerInfimum, LoewnerSupremum, SupremumResult, lowner_inf, lowner_sup
from .minib import MebConfig, MebResult, MinimumEnclosingBall, bc_step, exact_two_ball, farthest_distance, solve
from .morphology import TensorFieldDilation, TensorFieldErosion, field_dilate, field_erode, parse_window
from .symmat import EigenDecomp, dominates, eigen, frob_inner, inverse, mat_from_vec, trace, vec_plus
from .vectorize import HalfVectorizer

__version__ = "0.1.0"

__all__ = [
    "Ball", "ClusterResult", "ConvergenceError", "EigenDecomp", "HalfVectorizer",
    "KCenterClustering", "LoewnerInfimum", "LoewnerSupremum", "MebConfig", "MebResult",
    "MinimumEnclosingBall", "NormalizationShift", "NotPositiveDefiniteError",
    "SingularMatrixError", "SupremumResult", "TensorFieldDilation", "TensorFieldErosion",
    "ball_contains", "ball_to_apex", "bc_step", "cone_to_ball", "dominates", "eigen",
    "exact_two_ball", "farthest_distance", "field_dilate", "field_erode", "frob_inner",
    "inverse", "kcenter", "lowner_inf", "lowner_sup", "mat_from_vec", "normalize_traces",
    "parse_window", "solve", "trace", "vec_plus",
]
