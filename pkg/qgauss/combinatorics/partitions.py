"""Permutation inversions, pair partitions of [n] and crossing counts."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterator, List, Optional, Sequence, Tuple

from ..errors import DomainError

Pair = Tuple[int, int]


@dataclass(frozen=True, slots=True)
class PairPartition:
    """Perfect matching of {1..n}; pairs (a, b) with a < b, sorted by a."""

    pairs: Tuple[Pair, ...]

    @classmethod
    def of(cls, pairs: Sequence[Sequence[int]]) -> "PairPartition":
        """Validate and canonicalize arbitrary input pairs."""
        normalized = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        elements = sorted(x for pair in normalized for x in pair)
        if elements != list(range(1, len(elements) + 1)):
            raise DomainError(f"pairs {list(pairs)} do not cover 1..n exactly once")
        if any(a == b for a, b in normalized):
            raise DomainError("a block must join two distinct elements")
        return cls(normalized)

    @property
    def n(self) -> int:
        return 2 * len(self.pairs)

    def reflect(self) -> "PairPartition":
        """Image under i -> n + 1 - i."""
        size = self.n + 1
        return PairPartition(tuple(sorted((size - b, size - a) for a, b in self.pairs)))


def inversions(perm: Sequence[int]) -> int:
    """Number of pairs i < j with perm[i] > perm[j]; perm is a permutation of 1..m."""
    values = list(perm)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise DomainError(f"{tuple(values)} is not a permutation of 1..{len(values)}")
    return sum(1 for i, j in combinations(range(len(values)), 2) if values[i] > values[j])


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def count_pair_partitions(n: int) -> int:
    _check_even(n)
    return double_factorial(n - 1)


def pair_partitions(n: int, *, first_partner: Optional[int] = None) -> Iterator[PairPartition]:
    """Stream P_2(n) in a fixed order.

    The smallest unmatched element is paired with each larger partner in
    increasing order, recursively. ``first_partner`` restricts the partner of
    element 1, splitting the stream into independent sub-ranges.
    """
    _check_even(n)
    if first_partner is not None and not (2 <= first_partner <= n):
        raise DomainError(f"first partner {first_partner} is outside 2..{n}")
    labels = [0] * n
    yield from matched_pair_partitions(labels, first_partner=first_partner)


def matched_pair_partitions(
    labels: Sequence[Hashable], *, first_partner: Optional[int] = None
) -> Iterator[PairPartition]:
    """Stream the pair partitions whose blocks join equal labels only.

    With all labels equal this is P_2(n). Positions are 1-based in the output.
    """
    n = len(labels)
    if n % 2:
        return
    remaining: List[int] = list(range(1, n + 1))
    chosen: List[Pair] = []

    def extend() -> Iterator[PairPartition]:
        if not remaining:
            yield PairPartition(tuple(chosen))
            return
        first = remaining.pop(0)
        for index, partner in enumerate(list(remaining)):
            if labels[partner - 1] != labels[first - 1]:
                continue
            if first == 1 and first_partner is not None and partner != first_partner:
                continue
            remaining.pop(index)
            chosen.append((first, partner))
            yield from extend()
            chosen.pop()
            remaining.insert(index, partner)
        remaining.insert(0, first)

    yield from extend()


def crossings(partition: PairPartition) -> int:
    """Number of block pairs (a, b), (c, d) with a < c < b < d."""
    pairs = partition.pairs
    count = 0
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1 :]:
            # pairs are sorted by first element, so a < c here
            if c < b < d:
                count += 1
    return count


def multiset_permutations(letters: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Distinct arrangements of a multiset in lexicographic order."""
    current = sorted(letters)
    size = len(current)
    while True:
        yield tuple(current)
        pivot = size - 2
        while pivot >= 0 and current[pivot] >= current[pivot + 1]:
            pivot -= 1
        if pivot < 0:
            return
        successor = size - 1
        while current[successor] <= current[pivot]:
            successor -= 1
        current[pivot], current[successor] = current[successor], current[pivot]
        current[pivot + 1 :] = reversed(current[pivot + 1 :])


def _check_even(n: int) -> None:
    if n < 0 or n % 2:
        raise DomainError(f"pair partitions need an even nonnegative n, got {n}")
