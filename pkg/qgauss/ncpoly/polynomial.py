"""Noncommutative *-polynomials in self-adjoint generators X1..Xd."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from ..errors import DomainError

Word = Tuple[int, ...]

EMPTY_WORD: Word = ()


def word_key(word: Word) -> Tuple[int, Word]:
    """Deterministic ordering: by length, then lexicographic."""
    return (len(word), word)


@dataclass(frozen=True, slots=True)
class NcPolynomial:
    """Canonical coefficient table keyed by words.

    Exact-zero coefficients are dropped at construction; nothing else is
    thresholded. ``dimension_hint`` is the generator count d and never takes
    part in equality.
    """

    terms: Mapping[Word, float]
    dimension_hint: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        cleaned: Dict[Word, float] = {}
        hint = int(self.dimension_hint)
        for raw_word, raw_coefficient in self.terms.items():
            word = tuple(int(letter) for letter in raw_word)
            coefficient = float(raw_coefficient)
            if not math.isfinite(coefficient):
                raise DomainError(f"non-finite coefficient {coefficient!r} for word {word}")
            if any(letter < 1 for letter in word):
                raise DomainError(f"generator index out of range in word {word}")
            if coefficient == 0.0:
                continue
            cleaned[word] = coefficient
            if word:
                hint = max(hint, max(word))
        ordered = {word: cleaned[word] for word in sorted(cleaned, key=word_key)}
        object.__setattr__(self, "terms", MappingProxyType(ordered))
        object.__setattr__(self, "dimension_hint", hint)

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    @property
    def degree(self) -> int:
        return max((len(word) for word in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def letters(self) -> Tuple[int, ...]:
        """Distinct generator indices that occur in some term."""
        return tuple(sorted({letter for word in self.terms for letter in word}))

    def items(self) -> Iterator[Tuple[Word, float]]:
        return iter(self.terms.items())

    def coefficient(self, word: Iterable[int]) -> float:
        return self.terms.get(tuple(word), 0.0)

    def with_dimension(self, dimension: int) -> "NcPolynomial":
        """Return a copy whose d is ``dimension``; d may only be raised."""
        if dimension < self.dimension_hint:
            raise DomainError(
                f"dimension {dimension} is below the largest generator index {self.dimension_hint}"
            )
        return NcPolynomial(dict(self.terms), dimension_hint=dimension)

    def __add__(self, other: object) -> "NcPolynomial":
        other_poly = _coerce(other)
        if other_poly is None:
            return NotImplemented
        return add(self, other_poly)

    __radd__ = __add__

    def __neg__(self) -> "NcPolynomial":
        return scale(self, -1.0)

    def __sub__(self, other: object) -> "NcPolynomial":
        other_poly = _coerce(other)
        if other_poly is None:
            return NotImplemented
        return add(self, scale(other_poly, -1.0))

    def __rsub__(self, other: object) -> "NcPolynomial":
        other_poly = _coerce(other)
        if other_poly is None:
            return NotImplemented
        return add(other_poly, scale(self, -1.0))

    def __mul__(self, other: object) -> "NcPolynomial":
        if isinstance(other, (int, float)):
            return scale(self, float(other))
        if isinstance(other, NcPolynomial):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other: object) -> "NcPolynomial":
        if isinstance(other, (int, float)):
            return scale(self, float(other))
        return NotImplemented

    def __repr__(self) -> str:
        from .text import format_polynomial

        return f"NcPolynomial({format_polynomial(self)!r})"


def _coerce(value: object) -> NcPolynomial | None:
    if isinstance(value, NcPolynomial):
        return value
    if isinstance(value, (int, float)):
        return constant(float(value))
    return None


def zero(dimension: int = 0) -> NcPolynomial:
    return NcPolynomial({}, dimension_hint=dimension)


def constant(value: float, dimension: int = 0) -> NcPolynomial:
    return NcPolynomial({EMPTY_WORD: value}, dimension_hint=dimension)


def variable(index: int, dimension: int = 0) -> NcPolynomial:
    if index < 1:
        raise DomainError(f"generator index {index} is out of range")
    return NcPolynomial({(index,): 1.0}, dimension_hint=dimension)


def monomial(word: Iterable[int], coefficient: float = 1.0) -> NcPolynomial:
    return NcPolynomial({tuple(word): coefficient})


def add(P: NcPolynomial, Q: NcPolynomial) -> NcPolynomial:
    combined: Dict[Word, float] = dict(P.terms)
    for word, coefficient in Q.terms.items():
        combined[word] = combined.get(word, 0.0) + coefficient
    return NcPolynomial(combined, dimension_hint=max(P.dimension_hint, Q.dimension_hint))


def scale(P: NcPolynomial, factor: float) -> NcPolynomial:
    return NcPolynomial(
        {word: factor * coefficient for word, coefficient in P.terms.items()},
        dimension_hint=P.dimension_hint,
    )


def multiply(P: NcPolynomial, Q: NcPolynomial) -> NcPolynomial:
    """Bilinear extension of word concatenation."""
    product: Dict[Word, float] = defaultdict(float)
    for left, a in P.terms.items():
        for right, b in Q.terms.items():
            product[left + right] += a * b
    return NcPolynomial(product, dimension_hint=max(P.dimension_hint, Q.dimension_hint))


def power(P: NcPolynomial, exponent: int) -> NcPolynomial:
    if exponent < 0:
        raise DomainError(f"negative exponent {exponent}")
    result = constant(1.0, P.dimension_hint)
    for _ in range(exponent):
        result = multiply(result, P)
    return result


def adjoint(P: NcPolynomial) -> NcPolynomial:
    """Reverse every word; generators are self-adjoint and coefficients real."""
    return NcPolynomial(
        {word[::-1]: coefficient for word, coefficient in P.terms.items()},
        dimension_hint=P.dimension_hint,
    )


def star_power(P: NcPolynomial, n: int) -> NcPolynomial:
    """Return (P*P)^n."""
    if n < 1:
        raise DomainError("star_power needs n >= 1; use the constant 1 for n = 0")
    base = multiply(adjoint(P), P)
    result = base
    for _ in range(n - 1):
        result = multiply(result, base)
    return result


def is_self_adjoint(P: NcPolynomial) -> bool:
    return adjoint(P) == P


def asymmetric_terms(P: NcPolynomial) -> List[Word]:
    """Words whose coefficient differs from the coefficient of their reversal."""
    offending = [
        word
        for word, coefficient in P.terms.items()
        if P.terms.get(word[::-1], 0.0) != coefficient
    ]
    return sorted(offending, key=word_key)
