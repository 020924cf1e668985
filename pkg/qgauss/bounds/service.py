"""Certified operator-norm bounds for polynomials in q-Gaussians.

Lower bounds are L^p norms, ||P||_{2n} = tau[(P*P)^n]^{1/(2n)} <= ||P||. Upper
bounds come from the Haagerup-type inequality ||X_k|| <= (k+1) C^{3/2} ||X_k||_2
for homogeneous Wick components, applied either to P directly or to (P*P)^n and
then taking the 1/(2n)-th root.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from ..errors import DomainError
from ..fock import FockSpace, apply_polynomial, check_open_q, level_l2_norms, star_power_vector
from ..ncpoly import NcPolynomial
from .guards import BudgetGuard
from .haagerup import HaagerupConstant, haagerup_constant

logger = logging.getLogger(__name__)

Variant = Literal["per_level", "aggregated"]
VARIANTS: Tuple[str, ...] = ("per_level", "aggregated")
RD_EXPONENT = 1.5
CONSISTENCY_TOL = 1e-9


@dataclass(slots=True)
class BoundsConfig:
    haagerup_rel_tol: float
    n_max: int
    target_gap: float
    variant: str

    @classmethod
    def default(cls) -> "BoundsConfig":
        return cls(haagerup_rel_tol=1e-12, n_max=64, target_gap=0.05, variant="per_level")


@dataclass(frozen=True, slots=True)
class PoweredBounds:
    n: int
    lower: float
    upper: float
    power_l2: float
    lp_lower: float


@dataclass(frozen=True, slots=True)
class CertificateStep:
    n: int
    lower: float
    upper: float


@dataclass(frozen=True, slots=True)
class NormCertificate:
    lower: float
    upper: float
    upper_direct: float
    n_used: int
    degree_m: int
    q: float
    exhausted_budget: bool
    haagerup: float = 1.0
    steps: Tuple[CertificateStep, ...] = field(default_factory=tuple)

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def level_used(self) -> int:
        return 2 * self.degree_m * self.n_used

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise DomainError(f"unknown bound variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    return variant


def direct_upper(
    P: NcPolynomial,
    q: float,
    *,
    variant: Variant = "per_level",
    constant: Optional[HaagerupConstant] = None,
    space: Optional[FockSpace] = None,
) -> float:
    """Haagerup bound on ||P|| from the Wick decomposition of P itself.

    ``per_level`` sums (k+1) C^{3/2} ||P_k||_2 over levels; ``aggregated`` is the
    coarser (m+1)^{3/2} C^{3/2} ||P||_2.
    """
    _check_variant(variant)
    q = check_open_q(q)
    constant = constant or haagerup_constant(q)
    space = space or FockSpace(q)
    factor = constant.certified_value**RD_EXPONENT
    norms = level_l2_norms(P, q, space=space)
    if variant == "per_level":
        return math.fsum((k + 1) * factor * norm for k, norm in norms)
    total = math.sqrt(math.fsum(norm * norm for _, norm in norms))
    return (P.degree + 1) ** RD_EXPONENT * factor * total


def rd_upper(C: float, D: float, P: NcPolynomial, n: int, l2_of_power: float) -> float:
    """[C (2 deg(P) n + 1)^D]^{1/(2n)} ||(P*P)^n||_2^{1/(2n)} under a uniform RD property."""
    if C < 0 or D < 0:
        raise DomainError(f"RD constants must be nonnegative, got C={C}, D={D}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if l2_of_power < 0:
        raise DomainError(f"L2 norm must be nonnegative, got {l2_of_power}")
    root = 1.0 / (2 * n)
    prefactor = C * (2 * P.degree * n + 1) ** D
    return prefactor**root * l2_of_power**root


def powered_bounds(
    P: NcPolynomial,
    q: float,
    n: int,
    *,
    constant: Optional[HaagerupConstant] = None,
    guard: Optional[BudgetGuard] = None,
    space: Optional[FockSpace] = None,
) -> PoweredBounds:
    """Lower and upper bounds on ||P|| from the moments of (P*P)^n.

    Raises BudgetExceeded when level 2mn does not fit the guard's budget.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if P.is_zero:
        raise DomainError("powered bounds need a nonzero polynomial")
    q = check_open_q(q)
    (guard or BudgetGuard()).enforce(P, n)
    constant = constant or haagerup_constant(q)
    space = space or FockSpace(q)

    # tau[(P*P)^n] is the squared norm of the half power, times P when n is odd
    half, odd = divmod(n, 2)
    half_vector = star_power_vector(P, q, half)
    moment_norm = space.norm(apply_polynomial(P, half_vector) if odd else half_vector)
    power_l2 = space.norm(star_power_vector(P, q, n - half, start=half_vector))
    root = 1.0 / (2 * n)
    lower = moment_norm ** (2 * root)
    upper = rd_upper(constant.certified_value**RD_EXPONENT, RD_EXPONENT, P, n, power_l2)
    logger.debug("n=%d lower=%.17g upper=%.17g (memo %d entries)", n, lower, upper, space.cache_size)
    return PoweredBounds(n=n, lower=lower, upper=upper, power_l2=power_l2, lp_lower=power_l2**root)


def doubling_schedule(n_max: int) -> List[int]:
    """1, 2, 4, ... up to ``n_max``."""
    if n_max < 1:
        raise DomainError(f"n_max must be positive, got {n_max}")
    schedule = []
    n = 1
    while n <= n_max:
        schedule.append(n)
        n *= 2
    return schedule


def certify_norm(
    P: NcPolynomial,
    q: float,
    target_gap: Optional[float],
    *,
    guard: Optional[BudgetGuard] = None,
    schedule: Optional[Sequence[int]] = None,
    n_max: int = 64,
    variant: Variant = "per_level",
    constant: Optional[HaagerupConstant] = None,
) -> NormCertificate:
    """Squeeze ||P|| by escalating n until the gap closes or the budget runs out.

    The certificate keeps the running max of lower bounds and the running min of
    upper bounds, including the direct bound. With ``target_gap=None`` every
    scheduled step runs and the budget is only exhausted by a guard refusal.
    """
    q = check_open_q(q)
    if target_gap is not None and not target_gap > 0:
        raise DomainError(f"target gap must be positive, got {target_gap}")
    if P.is_zero:
        return NormCertificate(
            lower=0.0, upper=0.0, upper_direct=0.0, n_used=0, degree_m=0, q=q, exhausted_budget=False
        )
    guard = guard or BudgetGuard()
    constant = constant or haagerup_constant(q)
    space = FockSpace(q)
    steps_to_run = list(schedule) if schedule is not None else doubling_schedule(n_max)

    upper_direct = direct_upper(P, q, variant=variant, constant=constant, space=space)
    best_lower = 0.0
    best_upper = upper_direct
    n_used = 0
    exhausted = False
    history: List[CertificateStep] = []

    for n in steps_to_run:
        decision = guard.evaluate(P, n)
        if decision.blocked:
            logger.warning("budget exhausted before n=%d: %s", n, decision.report.describe())
            exhausted = True
            break
        bounds = powered_bounds(P, q, n, constant=constant, guard=guard, space=space)
        best_lower = max(best_lower, bounds.lower, bounds.lp_lower)
        best_upper = min(best_upper, bounds.upper)
        n_used = n
        history.append(CertificateStep(n=n, lower=best_lower, upper=best_upper))
        if target_gap is not None and best_upper - best_lower <= target_gap:
            break
    else:
        if target_gap is not None and best_upper - best_lower > target_gap:
            exhausted = True

    if best_lower > best_upper + CONSISTENCY_TOL:
        logger.warning("inconsistent certificate: lower %.17g > upper %.17g", best_lower, best_upper)
    logger.info("q=%r: ||P|| in [%.17g, %.17g] with n=%d", q, best_lower, best_upper, n_used)
    return NormCertificate(
        lower=best_lower,
        upper=best_upper,
        upper_direct=upper_direct,
        n_used=n_used,
        degree_m=P.degree,
        q=q,
        exhausted_budget=exhausted,
        haagerup=constant.certified_value,
        steps=tuple(history),
    )


class NormCertifier:
    """Configured entry point used by the CLI and by sweeps."""

    def __init__(self, config: BoundsConfig | None = None, guard: BudgetGuard | None = None) -> None:
        self.config = config or BoundsConfig.default()
        _check_variant(self.config.variant)
        self.guard = guard or BudgetGuard()
        self._constants: Dict[float, HaagerupConstant] = {}

    @classmethod
    def from_config(
        cls, bounds: Dict[str, object] | None, budget: Dict[str, object] | None = None
    ) -> "NormCertifier":
        defaults = BoundsConfig.default()
        bounds = bounds or {}
        config = BoundsConfig(
            haagerup_rel_tol=float(bounds.get("haagerup_rel_tol") or defaults.haagerup_rel_tol),
            n_max=int(bounds.get("n_max") or defaults.n_max),
            target_gap=float(bounds.get("target_gap") or defaults.target_gap),
            variant=str(bounds.get("variant") or defaults.variant),
        )
        return cls(config, BudgetGuard.from_config(budget))

    def constant(self, q: float) -> HaagerupConstant:
        key = abs(check_open_q(q))
        cached = self._constants.get(key)
        if cached is None:
            cached = haagerup_constant(key, self.config.haagerup_rel_tol)
            self._constants[key] = cached
        return cached

    def certify(
        self,
        P: NcPolynomial,
        q: float,
        *,
        target_gap: Optional[float] = None,
        n: Optional[int] = None,
    ) -> NormCertificate:
        """Escalate toward ``target_gap`` (config default), or run a single fixed ``n``."""
        if n is not None:
            return certify_norm(
                P, q, None, guard=self.guard, schedule=[n], variant=self.config.variant, constant=self.constant(q)
            )
        return certify_norm(
            P,
            q,
            target_gap if target_gap is not None else self.config.target_gap,
            guard=self.guard,
            n_max=self.config.n_max,
            variant=self.config.variant,
            constant=self.constant(q),
        )

    def direct(self, P: NcPolynomial, q: float) -> float:
        return direct_upper(P, q, variant=self.config.variant, constant=self.constant(q))

    def certify_schedule(self, P: NcPolynomial, q: float) -> NormCertificate:
        """Run every doubling step up to ``n_max`` without a gap target."""
        return certify_norm(
            P, q, None, guard=self.guard, n_max=self.config.n_max, variant=self.config.variant, constant=self.constant(q)
        )
