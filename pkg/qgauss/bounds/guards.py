"""Resource guard refusing powered bounds whose Fock levels would not fit."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict

from ..errors import BudgetExceeded
from ..ncpoly import NcPolynomial

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class BudgetConfig:
    max_level: int
    max_block_dim: int

    @classmethod
    def default(cls) -> "BudgetConfig":
        return cls(max_level=256, max_block_dim=4096)


@dataclass(slots=True)
class SizingReport:
    """Working-set estimate for the vectors (P*P)^n e_0."""

    n: int
    degree: int
    letters: int
    required_level: int
    largest_block_dim: int
    top_level_words: int
    max_level: int
    max_block_dim: int

    def describe(self) -> str:
        return (
            f"n={self.n} needs Fock level {self.required_level} (limit {self.max_level}) "
            f"with letter-type blocks up to {self.largest_block_dim} words "
            f"(limit {self.max_block_dim}); {self.letters} letters, "
            f"{self.top_level_words} words at the top level"
        )


@dataclass(slots=True)
class BudgetDecision:
    blocked: bool
    reason: str | None
    report: SizingReport


def largest_block_dim(level: int, letters: int) -> int:
    """Largest multinomial coefficient at ``level`` over ``letters`` letters."""
    if letters <= 1 or level == 0:
        return 1
    base, extra = divmod(level, letters)
    denominator = math.factorial(base + 1) ** extra * math.factorial(base) ** (letters - extra)
    return math.factorial(level) // denominator


class BudgetGuard:
    """Size check run before each escalation step."""

    def __init__(self, config: BudgetConfig | None = None) -> None:
        self.config = config or BudgetConfig.default()

    @classmethod
    def from_config(cls, data: Dict[str, object] | None) -> "BudgetGuard":
        if not data:
            return cls()
        defaults = BudgetConfig.default()
        config = BudgetConfig(
            max_level=int(data.get("max_level") or defaults.max_level),
            max_block_dim=int(data.get("max_block_dim") or defaults.max_block_dim),
        )
        return cls(config)

    def size(self, P: NcPolynomial, n: int) -> SizingReport:
        letters = len(P.letters())
        level = 2 * P.degree * n
        return SizingReport(
            n=n,
            degree=P.degree,
            letters=letters,
            required_level=level,
            largest_block_dim=largest_block_dim(level, letters),
            top_level_words=max(letters, 1) ** level,
            max_level=self.config.max_level,
            max_block_dim=self.config.max_block_dim,
        )

    def evaluate(self, P: NcPolynomial, n: int) -> BudgetDecision:
        report = self.size(P, n)
        if report.required_level > self.config.max_level:
            return BudgetDecision(blocked=True, reason="Fock level over budget", report=report)
        if report.largest_block_dim > self.config.max_block_dim:
            return BudgetDecision(blocked=True, reason="Gram block dimension over budget", report=report)
        return BudgetDecision(blocked=False, reason=None, report=report)

    def enforce(self, P: NcPolynomial, n: int) -> SizingReport:
        decision = self.evaluate(P, n)
        if decision.blocked:
            logger.info("refusing n=%d: %s", n, decision.reason)
            raise BudgetExceeded(decision.report)
        return decision.report
