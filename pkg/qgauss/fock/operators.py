"""Creation, annihilation and q-Gaussian operators acting on leveled vectors."""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from ..errors import DomainError
from ..ncpoly import NcPolynomial, Word, add, adjoint, constant, scale, variable
from .space import FockSpace, LeveledVector, check_open_q, deletions

logger = logging.getLogger(__name__)

Levels = Dict[int, Dict[Word, float]]


def _check_index(i: int, d: int) -> None:
    if not 1 <= i <= d:
        raise DomainError(f"generator index {i} is outside 1..{d}")


def _create_levels(i: int, levels: Levels) -> Levels:
    return {k + 1: {(i,) + word: c for word, c in table.items()} for k, table in levels.items()}


def _annihilate_levels(i: int, levels: Levels, powers: List[float]) -> Levels:
    out: Levels = {}
    for k, table in levels.items():
        if k == 0:
            continue
        target: Dict[Word, float] = defaultdict(float)
        for word, c in table.items():
            for child, weight in deletions(word, i, powers):
                target[child] += weight * c
        if target:
            out[k - 1] = target
    return out


def _gaussian_levels(i: int, levels: Levels, powers: List[float]) -> Levels:
    result = _create_levels(i, levels)
    for k, table in _annihilate_levels(i, levels, powers).items():
        target = result.setdefault(k, {})
        for word, c in table.items():
            target[word] = target.get(word, 0.0) + c
    return result


def _powers_for(q: float, levels: Levels) -> List[float]:
    top = max(levels, default=0) + 1
    return [q**j for j in range(top)]


def create(i: int, v: LeveledVector) -> LeveledVector:
    """l_i: prepend letter i to every word."""
    _check_index(i, v.d)
    return LeveledVector(levels=_create_levels(i, v.levels), q=v.q, d=v.d)


def annihilate(i: int, v: LeveledVector) -> LeveledVector:
    """l_i^* e_w = sum_{j: w_j = i} q^(j-1) e_{w minus position j}."""
    _check_index(i, v.d)
    return LeveledVector(levels=_annihilate_levels(i, v.levels, _powers_for(v.q, v.levels)), q=v.q, d=v.d)


def apply_gaussian(i: int, v: LeveledVector) -> LeveledVector:
    """A_i = l_i + l_i^*."""
    _check_index(i, v.d)
    return LeveledVector(levels=_gaussian_levels(i, v.levels, _powers_for(v.q, v.levels)), q=v.q, d=v.d)


@dataclass(slots=True)
class _SuffixNode:
    coefficient: float = 0.0
    children: Dict[int, "_SuffixNode"] = field(default_factory=dict)


def _suffix_trie(P: NcPolynomial) -> _SuffixNode:
    # words are applied right to left, so paths run from the last letter
    root = _SuffixNode()
    for word, coefficient in P.items():
        node = root
        for letter in reversed(word):
            node = node.children.setdefault(letter, _SuffixNode())
        node.coefficient += coefficient
    return root


def apply_polynomial(P: NcPolynomial, v: LeveledVector) -> LeveledVector:
    """P(A) v, sharing work between terms with a common suffix."""
    if P.dimension_hint > v.d:
        raise DomainError(f"polynomial uses X{P.dimension_hint} but the vector has d = {v.d}")
    top = v.max_level + P.degree + 1
    powers = [v.q**j for j in range(top)]
    accumulated: Levels = defaultdict(lambda: defaultdict(float))
    stack: List[Tuple[_SuffixNode, Levels]] = [(_suffix_trie(P), v.levels)]
    while stack:
        node, levels = stack.pop()
        if node.coefficient:
            for k, table in levels.items():
                target = accumulated[k]
                for word, c in table.items():
                    target[word] += node.coefficient * c
        for letter in sorted(node.children, reverse=True):
            stack.append((node.children[letter], _gaussian_levels(letter, levels, powers)))
    return LeveledVector(levels={k: dict(t) for k, t in accumulated.items()}, q=v.q, d=v.d)


def _dimension(P: NcPolynomial) -> int:
    return max(1, P.dimension_hint)


def vacuum_expand(P: NcPolynomial, q: float) -> LeveledVector:
    """P(A) e_0 = sum_w alpha_w e_w; level k holds the Wick coefficients of degree k."""
    q = check_open_q(q)
    return apply_polynomial(P, LeveledVector.vacuum(q, _dimension(P)))


def moment_fock(P: NcPolynomial, q: float) -> float:
    """tau(P) = <P(A) e_0, e_0>_q, exact for any degree."""
    return vacuum_expand(P, q).coefficient(())


def l2_norm(P: NcPolynomial, q: float, *, space: Optional[FockSpace] = None) -> float:
    """||P||_2 = ||P(A) e_0||_q."""
    space = space or FockSpace(q)
    return space.norm(vacuum_expand(P, space.q))


def level_l2_norms(P: NcPolynomial, q: float, *, space: Optional[FockSpace] = None) -> List[Tuple[int, float]]:
    """Norm of each homogeneous Wick component, by level."""
    space = space or FockSpace(q)
    return space.level_norms(vacuum_expand(P, space.q))


def star_power_vector(
    P: NcPolynomial, q: float, n: int, *, start: Optional[LeveledVector] = None
) -> LeveledVector:
    """(P*P)^n applied to ``start`` (the vacuum by default), without expanding the power."""
    if n < 0:
        raise DomainError(f"power {n} must be nonnegative")
    q = check_open_q(q)
    star = adjoint(P)
    vector = start if start is not None else LeveledVector.vacuum(q, _dimension(P))
    for _ in range(n):
        vector = apply_polynomial(star, apply_polynomial(P, vector))
    return vector


def star_moment(P: NcPolynomial, q: float, n: int, *, space: Optional[FockSpace] = None) -> float:
    """tau[(P*P)^n] as a squared vector norm.

    n = 2k gives ||(P*P)^k e_0||^2 and n = 2k + 1 gives ||P (P*P)^k e_0||^2,
    so the result is nonnegative by construction.
    """
    space = space or FockSpace(q)
    half, odd = divmod(n, 2)
    vector = star_power_vector(P, space.q, half)
    if odd:
        vector = apply_polynomial(P, vector)
    logger.debug("star moment n=%d: %d basis words up to level %d", n, sum(len(t) for t in vector.levels.values()), vector.max_level)
    norm = space.norm(vector)
    return norm * norm


def wick_word_polynomial(word: Word, q: float) -> NcPolynomial:
    """The polynomial W_w with W_w(A) e_0 = e_w, i.e. the Wick polynomial e_w^(q).

    Built from e_{iw}^(q) = A_i e_w^(q) - sum_{j: w_j = i} q^(j-1) e_{w minus j}^(q).
    """
    q = check_open_q(q)
    word = tuple(word)
    powers = [q**j for j in range(len(word) + 1)]
    memo: Dict[Word, NcPolynomial] = {(): constant(1.0)}

    def build(target: Word) -> NcPolynomial:
        if target in memo:
            return memo[target]
        head, tail = target[0], target[1:]
        result = variable(head) * build(tail)
        for child, weight in deletions(tail, head, powers):
            result = add(result, scale(build(child), -weight))
        memo[target] = result
        return result

    return build(word)


def wick_operator(coefficients: Mapping[Word, float], q: float) -> NcPolynomial:
    """Polynomial X with X(A) e_0 = sum_w alpha_w e_w."""
    result = constant(0.0)
    for word, alpha in sorted(coefficients.items()):
        result = add(result, scale(wick_word_polynomial(tuple(word), q), alpha))
    return result
