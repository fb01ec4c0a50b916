"""Alphabetic codes and binary search trees from length lists."""

from .bounds import TOL, BoundsReport, alphabetic_bounds, bst_bounds
from .bst import SearchDist, bst_cost, build_bst, fold_to_bst
from .codegen import ContractViolation, build_alphabetic, choose_k, extended_lengths
from .dyadic import DyadicFraction, add_pow2, ceil_neg_log2, trunc, xor
from .feasibility import AlphabeticCode, is_feasible, nakatsu_code, sum_sequence
from .oracle import (
    appendix_b_check,
    feasible_by_enumeration,
    optimal_alphabetic_dp,
    optimal_bst_dp,
)
from .probability import ProbDist
from .treebuild import ProbeCounter, construct_tree, split_index, t_index

__all__ = [
    "TOL", "AlphabeticCode", "BoundsReport", "ContractViolation", "DyadicFraction",
    "ProbDist", "ProbeCounter", "SearchDist", "add_pow2", "alphabetic_bounds",
    "appendix_b_check", "bst_bounds", "bst_cost", "build_alphabetic", "build_bst",
    "ceil_neg_log2", "choose_k", "construct_tree", "extended_lengths",
    "feasible_by_enumeration", "fold_to_bst", "is_feasible", "nakatsu_code",
    "optimal_alphabetic_dp", "optimal_bst_dp", "split_index", "sum_sequence",
    "t_index", "trunc", "xor",
]
