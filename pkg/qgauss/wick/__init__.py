"""Pair-partition moment oracle."""
from .moments import check_closed_q, crossing_histogram, moment_oracle, wick_moment

__all__ = ["check_closed_q", "crossing_histogram", "moment_oracle", "wick_moment"]
