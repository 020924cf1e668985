"""Truncated q-Fock space: leveled vectors, q-inner products and Gram blocks."""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..combinatorics import inversions, multiset_permutations
from ..errors import DomainError
from ..ncpoly import Word, word_key

logger = logging.getLogger(__name__)

LetterType = Tuple[int, ...]

PRECISION_WARNING_Q = 0.99


def check_open_q(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or abs(q) >= 1.0:
        raise DomainError(f"q must satisfy |q| < 1, got {q}")
    return q


def letter_type(word: Word) -> LetterType:
    """The letter multiset of ``word`` as a sorted tuple."""
    return tuple(sorted(word))


def deletions(word: Word, letter: int, powers: Sequence[float]) -> Iterator[Tuple[Word, float]]:
    """Yield (word with one ``letter`` removed, sum of q^position) per run.

    Removing any position of a run of equal letters yields the same word, so
    each run contributes once with the summed weight.
    """
    size = len(word)
    position = 0
    while position < size:
        if word[position] != letter:
            position += 1
            continue
        start = position
        while position < size and word[position] == letter:
            position += 1
        yield word[:start] + word[start + 1 :], math.fsum(powers[start:position])


@dataclass(slots=True)
class LeveledVector:
    """Fock vector in the e_w basis, grouped by tensor level.

    ``levels[k]`` maps length-k words to nonzero coefficients.
    """

    levels: Dict[int, Dict[Word, float]]
    q: float
    d: int

    def __post_init__(self) -> None:
        cleaned: Dict[int, Dict[Word, float]] = {}
        for k in sorted(self.levels):
            table = {word: float(c) for word, c in self.levels[k].items() if c != 0.0}
            if table:
                cleaned[k] = {word: table[word] for word in sorted(table)}
        self.levels = cleaned

    @classmethod
    def vacuum(cls, q: float, d: int) -> "LeveledVector":
        return cls(levels={0: {(): 1.0}}, q=q, d=d)

    @classmethod
    def from_terms(cls, terms: Mapping[Word, float], q: float, d: int) -> "LeveledVector":
        levels: Dict[int, Dict[Word, float]] = defaultdict(dict)
        for raw_word, coefficient in terms.items():
            word = tuple(raw_word)
            if any(letter < 1 or letter > d for letter in word):
                raise DomainError(f"word {word} uses a letter outside 1..{d}")
            levels[len(word)][word] = levels[len(word)].get(word, 0.0) + float(coefficient)
        return cls(levels=dict(levels), q=q, d=d)

    @property
    def is_zero(self) -> bool:
        return not self.levels

    @property
    def max_level(self) -> int:
        return max(self.levels, default=0)

    def level(self, k: int) -> Dict[Word, float]:
        return dict(self.levels.get(k, {}))

    def coefficient(self, word: Iterable[int]) -> float:
        key = tuple(word)
        return self.levels.get(len(key), {}).get(key, 0.0)

    def terms(self) -> Iterator[Tuple[Word, float]]:
        for k in sorted(self.levels):
            yield from self.levels[k].items()

    def truncate(self, max_level: int) -> "LeveledVector":
        """Orthogonal projection onto levels 0..max_level."""
        return LeveledVector(
            levels={k: table for k, table in self.levels.items() if k <= max_level},
            q=self.q,
            d=self.d,
        )

    def add(self, other: "LeveledVector") -> "LeveledVector":
        self._check_compatible(other)
        merged: Dict[int, Dict[Word, float]] = {k: dict(table) for k, table in self.levels.items()}
        for k, table in other.levels.items():
            target = merged.setdefault(k, {})
            for word, coefficient in table.items():
                target[word] = target.get(word, 0.0) + coefficient
        return LeveledVector(levels=merged, q=self.q, d=max(self.d, other.d))

    def scale(self, factor: float) -> "LeveledVector":
        return LeveledVector(
            levels={k: {w: factor * c for w, c in table.items()} for k, table in self.levels.items()},
            q=self.q,
            d=self.d,
        )

    def _check_compatible(self, other: "LeveledVector") -> None:
        if other.q != self.q:
            raise DomainError(f"vectors built under different q ({self.q} vs {other.q})")


@dataclass(slots=True)
class GramBlock:
    """q-inner products among all arrangements of one letter multiset.

    Stored as ``scaled`` times ``exp(log_scale)`` with ``log_scale = log [k]_q!``,
    so blocks at high levels stay finite.
    """

    words: Tuple[Word, ...]
    scaled: np.ndarray
    log_scale: float = 0.0
    _factor: Optional[np.ndarray] = field(default=None, repr=False)
    _index: Optional[Dict[Word, int]] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def matrix(self) -> np.ndarray:
        return self.scaled * np.exp(self.log_scale)

    def submatrix(self, rows: Sequence[Word], cols: Sequence[Word]) -> np.ndarray:
        """Unscaled entries for the given words of this block."""
        if self._index is None:
            self._index = {word: i for i, word in enumerate(self.words)}
        picked = self.scaled[np.ix_([self._index[w] for w in rows], [self._index[v] for v in cols])]
        return picked * np.exp(self.log_scale)

    def scaled_cholesky(self) -> np.ndarray:
        """Lower factor of ``scaled``; raises LinAlgError if not PD."""
        if self._factor is None:
            self._factor = linalg.cholesky(self.scaled, lower=True)
        return self._factor

    def cholesky(self) -> np.ndarray:
        """Lower factor L with matrix = L L^T; raises LinAlgError if not PD."""
        return self.scaled_cholesky() * np.exp(self.log_scale / 2.0)


class FockSpace:
    """Computation session at a fixed q.

    Owns the memo of word-pair inner products and the lazily built Gram
    blocks. Entries are idempotent, so concurrent readers and writers only
    ever race to store the same value.
    """

    def __init__(self, q: float) -> None:
        self.q = check_open_q(q)
        if abs(self.q) > PRECISION_WARNING_Q:
            logger.warning("|q| = %s exceeds %s; expect precision degradation", abs(self.q), PRECISION_WARNING_Q)
        self._powers: List[float] = [1.0]
        self._inner: Dict[Tuple[Word, Word], float] = {}
        self._scaled: Dict[Tuple[Word, Word], float] = {}
        self._blocks: Dict[LetterType, GramBlock] = {}

    def powers(self, count: int) -> List[float]:
        """q^0 .. q^(count-1)."""
        table = self._powers
        if len(table) < count:
            table = [self.q**j for j in range(max(count, 2 * len(table)))]
            self._powers = table
        return table

    def q_number(self, k: int) -> float:
        """[k]_q = 1 + q + ... + q^(k-1); positive for |q| < 1."""
        return math.fsum(self.powers(k + 1)[:k])

    def log_q_factorial(self, k: int) -> float:
        return math.fsum(math.log(self.q_number(i)) for i in range(2, k + 1))

    @property
    def cache_size(self) -> int:
        return len(self._inner)

    def inner_words(self, w: Word, v: Word) -> float:
        """<e_w, e_v>_q by the unrolled adjoint recursion.

        <e_{iw}, e_v> = sum_{j: v_j = i} q^(j-1) <e_w, e_{v minus j}>, evaluated
        with an explicit stack so word length is not bounded by recursion depth.
        """
        return self._pair_value(tuple(w), tuple(v), self._inner, normalized=False)

    def scaled_inner_words(self, w: Word, v: Word) -> float:
        """<e_w, e_v>_q / [k]_q! for words of length k; equals 1 on e_{1^k}."""
        return self._pair_value(tuple(w), tuple(v), self._scaled, normalized=True)

    def _pair_value(
        self, w: Word, v: Word, cache: Dict[Tuple[Word, Word], float], *, normalized: bool
    ) -> float:
        if len(w) != len(v) or letter_type(w) != letter_type(v):
            return 0.0
        if (w, v) in cache:
            return cache[(w, v)]
        powers = self.powers(len(w) + 1)
        stack: List[Tuple[Word, Word]] = [(w, v)]
        while stack:
            key = stack[-1]
            if key in cache:
                stack.pop()
                continue
            left, right = key
            if not left:
                cache[key] = 1.0
                stack.pop()
                continue
            head, tail = left[0], left[1:]
            children = list(deletions(right, head, powers))
            missing = [(tail, child) for child, _ in children if (tail, child) not in cache]
            if missing:
                stack.extend(missing)
                continue
            value = math.fsum(weight * cache[(tail, child)] for child, weight in children)
            if normalized:
                value /= self.q_number(len(left))
            cache[key] = value
            stack.pop()
        return cache[(w, v)]

    def cross_gram(self, rows: Sequence[Word], cols: Sequence[Word]) -> np.ndarray:
        matrix = np.empty((len(rows), len(cols)))
        for i, w in enumerate(rows):
            for j, v in enumerate(cols):
                matrix[i, j] = self.inner_words(w, v)
        return matrix

    def gram(self, words: Sequence[Word], *, scaled: bool = False) -> np.ndarray:
        """Symmetric Gram matrix of the given words, divided by [k]_q! when ``scaled``."""
        entry = self.scaled_inner_words if scaled else self.inner_words
        size = len(words)
        matrix = np.empty((size, size))
        for i in range(size):
            for j in range(i, size):
                value = entry(words[i], words[j])
                matrix[i, j] = value
                matrix[j, i] = value
        return matrix

    def gram_block(self, letters: Iterable[int]) -> GramBlock:
        key = tuple(sorted(letters))
        block = self._blocks.get(key)
        if block is None:
            words = tuple(multiset_permutations(key))
            block = GramBlock(
                words=words,
                scaled=self.gram(words, scaled=True),
                log_scale=self.log_q_factorial(len(key)),
            )
            self._blocks[key] = block
            logger.debug("built Gram block %s of size %d", key, len(words))
        return block

    def inner(self, u: LeveledVector, v: LeveledVector) -> float:
        """<u, v>_q; distinct levels and distinct letter types are orthogonal."""
        parts: List[float] = []
        for k in sorted(u.levels.keys() & v.levels.keys()):
            parts.extend(self._level_inner(u.levels[k], v.levels[k]))
        return math.fsum(parts)

    def norm(self, v: LeveledVector) -> float:
        return math.sqrt(max(0.0, self.inner(v, v)))

    def level_norms(self, v: LeveledVector) -> List[Tuple[int, float]]:
        norms: List[Tuple[int, float]] = []
        for k in sorted(v.levels):
            squared = math.fsum(self._level_inner(v.levels[k], v.levels[k]))
            norms.append((k, math.sqrt(max(0.0, squared))))
        return norms

    def _level_inner(self, left: Mapping[Word, float], right: Mapping[Word, float]) -> List[float]:
        left_groups = _group_by_type(left)
        right_groups = _group_by_type(right)
        parts: List[float] = []
        for key in sorted(left_groups.keys() & right_groups.keys()):
            rows = left_groups[key]
            cols = right_groups[key]
            x = np.array([left[w] for w in rows])
            y = np.array([right[w] for w in cols])
            cached = self._blocks.get(key)
            if cached is not None:
                block = cached.submatrix(rows, cols)
            elif rows == cols:
                block = self.gram(rows)
            else:
                block = self.cross_gram(rows, cols)
            parts.append(float(x @ block @ y))
        return parts


def _group_by_type(table: Mapping[Word, float]) -> Dict[LetterType, List[Word]]:
    groups: Dict[LetterType, List[Word]] = defaultdict(list)
    for word in sorted(table, key=word_key):
        groups[letter_type(word)].append(word)
    return groups


def q_inner(w: Iterable[int], v: Iterable[int], q: float, *, space: Optional[FockSpace] = None) -> float:
    """<e_w, e_v>_q for basis words."""
    space = space or FockSpace(q)
    return space.inner_words(tuple(w), tuple(v))


def q_inner_direct(w: Iterable[int], v: Iterable[int], q: float) -> float:
    """<e_w, e_v>_q as the literal sum over S_m of q^inv(pi) prod delta(w_i, v_pi(i))."""
    q = check_open_q(q)
    w = tuple(w)
    v = tuple(v)
    if len(w) != len(v):
        return 0.0
    m = len(w)
    terms = [
        q ** inversions([p + 1 for p in perm])
        for perm in permutations(range(m))
        if all(w[i] == v[perm[i]] for i in range(m))
    ]
    return math.fsum(terms)


def gram_block(letters: Iterable[int], q: float, *, space: Optional[FockSpace] = None) -> GramBlock:
    space = space or FockSpace(q)
    return space.gram_block(letters)
