"""Truncated q-Fock-space engine."""
from .operators import (
    annihilate,
    apply_gaussian,
    apply_polynomial,
    create,
    l2_norm,
    level_l2_norms,
    moment_fock,
    star_moment,
    star_power_vector,
    vacuum_expand,
    wick_operator,
    wick_word_polynomial,
)
from .space import (
    FockSpace,
    GramBlock,
    LeveledVector,
    check_open_q,
    gram_block,
    letter_type,
    q_inner,
    q_inner_direct,
)

__all__ = [
    "FockSpace",
    "GramBlock",
    "LeveledVector",
    "annihilate",
    "apply_gaussian",
    "apply_polynomial",
    "check_open_q",
    "create",
    "gram_block",
    "l2_norm",
    "letter_type",
    "level_l2_norms",
    "moment_fock",
    "q_inner",
    "q_inner_direct",
    "star_moment",
    "star_power_vector",
    "vacuum_expand",
    "wick_operator",
    "wick_word_polynomial",
]
