"""Joint moments of q-Gaussians straight from the pair-partition formula.

This path is independent of the Fock-space engine and serves as
its oracle: tau(A_w) = sum over pair partitions matching equal letters of
q^crossings.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Optional, Tuple

from ..combinatorics import crossings, matched_pair_partitions
from ..errors import DomainError
from ..ncpoly import NcPolynomial, Word
from ..parallel import fold_sum

logger = logging.getLogger(__name__)


def check_closed_q(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or abs(q) > 1.0:
        raise DomainError(f"q must lie in [-1, 1], got {q}")
    return q


def crossing_histogram(word: Iterable[int]) -> Tuple[int, ...]:
    """Integer coefficients c_k with tau(A_w) = sum_k c_k q^k.

    Entry k counts the letter-matching pair partitions with k crossings.
    """
    return _crossing_histogram(tuple(word))


@lru_cache(maxsize=65536)
def _crossing_histogram(word: Word) -> Tuple[int, ...]:
    if len(word) % 2:
        return ()
    letter_counts = Counter(word)
    if any(count % 2 for count in letter_counts.values()):
        return ()
    histogram: Counter[int] = Counter()
    for partition in matched_pair_partitions(word):
        histogram[crossings(partition)] += 1
    if not histogram:
        return ()
    top = max(histogram)
    return tuple(histogram.get(k, 0) for k in range(top + 1))


def wick_moment(word: Iterable[int], q: float) -> float:
    """tau(A_{i1} ... A_{in}) for the letters of ``word``."""
    q = check_closed_q(q)
    histogram = crossing_histogram(word)
    return math.fsum(count * q**k for k, count in enumerate(histogram) if count)


def moment_oracle(P: NcPolynomial, q: float, *, workers: Optional[int] = 1) -> float:
    """Linear extension of tau to a polynomial, summed with exact rounding."""
    q = check_closed_q(q)
    terms = list(P.items())
    logger.debug("wick oracle over %d terms at q=%r", len(terms), q)
    return fold_sum(lambda term: term[1] * wick_moment(term[0], q), terms, workers)
