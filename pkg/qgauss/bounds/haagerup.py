"""The constant C_|q| = 1 / prod_{m>=1} (1 - |q|^m) of the Haagerup-type inequality."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from ..fock import check_open_q


@dataclass(frozen=True, slots=True)
class HaagerupConstant:
    q_abs: float
    value: float
    truncation_terms: int
    tail_bound: float

    @property
    def certified_value(self) -> float:
        """Upper estimate of C_|q|: the omitted factors add at most ``tail_bound`` to log C."""
        return self.value * math.exp(self.tail_bound)


def log_tail_bound(q_abs: float, terms: int) -> float:
    """Bound on sum_{m > terms} |log(1 - |q|^m)|."""
    if q_abs == 0.0:
        return 0.0
    head = q_abs ** (terms + 1)
    return head / ((1.0 - q_abs) * (1.0 - head))


def haagerup_constant(q: float, rel_tol: float = 1e-12) -> HaagerupConstant:
    """Truncated product, extended until the logarithmic tail drops below ``rel_tol``."""
    q_abs = abs(check_open_q(q))
    if not rel_tol > 0.0:
        raise DomainError(f"rel_tol must be positive, got {rel_tol}")
    terms = 0
    logs = []
    while log_tail_bound(q_abs, terms) > rel_tol:
        terms += 1
        logs.append(math.log1p(-(q_abs**terms)))
    value = math.exp(-math.fsum(logs)) if logs else 1.0
    return HaagerupConstant(
        q_abs=q_abs,
        value=value,
        truncation_terms=terms,
        tail_bound=log_tail_bound(q_abs, terms),
    )


def direct_product(q: float, terms: int = 200) -> float:
    """Plain 1 / prod_{m=1}^{terms} (1 - |q|^m)."""
    q_abs = abs(check_open_q(q))
    product = 1.0
    for m in range(1, terms + 1):
        product *= 1.0 - q_abs**m
    return 1.0 / product
