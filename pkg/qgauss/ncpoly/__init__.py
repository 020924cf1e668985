"""Noncommutative *-polynomial algebra and its text format."""
from .polynomial import (
    EMPTY_WORD,
    NcPolynomial,
    Word,
    add,
    adjoint,
    asymmetric_terms,
    constant,
    is_self_adjoint,
    monomial,
    multiply,
    power,
    scale,
    star_power,
    variable,
    word_key,
    zero,
)
from .text import format_polynomial, format_word, parse, tokenize

__all__ = [
    "EMPTY_WORD",
    "NcPolynomial",
    "Word",
    "add",
    "adjoint",
    "asymmetric_terms",
    "constant",
    "format_polynomial",
    "format_word",
    "is_self_adjoint",
    "monomial",
    "multiply",
    "parse",
    "power",
    "scale",
    "star_power",
    "tokenize",
    "variable",
    "word_key",
    "zero",
]
