"""Succinct exact and approximate rank structures over integers in [0, ell].

Approximate answers are returned as exact ``fractions.Fraction`` values.
"""

from ._core import (
    ApproxSlidingRanker,
    ApproxStaticRanker,
    ExactSlidingRanker,
    ExactStaticRanker,
    FormatError,
    exact_bound_bits,
    lower_bound_bits,
)

__all__ = [
    "ApproxSlidingRanker",
    "ApproxStaticRanker",
    "ExactSlidingRanker",
    "ExactStaticRanker",
    "FormatError",
    "exact_bound_bits",
    "lower_bound_bits",
]
