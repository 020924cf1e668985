"""Exact enumeration primitives."""
from .partitions import (
    PairPartition,
    count_pair_partitions,
    crossings,
    double_factorial,
    inversions,
    matched_pair_partitions,
    multiset_permutations,
    pair_partitions,
)

__all__ = [
    "PairPartition",
    "count_pair_partitions",
    "crossings",
    "double_factorial",
    "inversions",
    "matched_pair_partitions",
    "multiset_permutations",
    "pair_partitions",
]
