"""Order-preserving worker pool helpers."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def resolve_workers(workers: Optional[int]) -> int:
    """``None`` means machine parallelism; anything below 1 is clamped to 1."""
    if workers is None:
        return os.cpu_count() or 1
    return max(1, int(workers))


def fold_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = 1) -> List[R]:
    """Map ``func`` over ``items``; results come back in input order."""
    materialized = list(items)
    count = resolve_workers(workers)
    if count == 1 or len(materialized) < 2:
        return [func(item) for item in materialized]
    logger.debug("fanning %d tasks over %d workers", len(materialized), count)
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(func, materialized))


def fold_sum(func: Callable[[T], float], items: Iterable[T], workers: Optional[int] = 1) -> float:
    """Exactly rounded sum of ``func`` over ``items``, independent of thread count."""
    return math.fsum(fold_map(func, items, workers))
