"""Certified operator-norm bounds."""
from .guards import BudgetConfig, BudgetDecision, BudgetGuard, SizingReport, largest_block_dim
from .haagerup import HaagerupConstant, direct_product, haagerup_constant, log_tail_bound
from .service import (
    VARIANTS,
    BoundsConfig,
    CertificateStep,
    NormCertificate,
    NormCertifier,
    PoweredBounds,
    certify_norm,
    direct_upper,
    doubling_schedule,
    powered_bounds,
    rd_upper,
)

__all__ = [
    "VARIANTS",
    "BoundsConfig",
    "BudgetConfig",
    "BudgetDecision",
    "BudgetGuard",
    "CertificateStep",
    "HaagerupConstant",
    "NormCertificate",
    "NormCertifier",
    "PoweredBounds",
    "SizingReport",
    "certify_norm",
    "direct_product",
    "direct_upper",
    "doubling_schedule",
    "haagerup_constant",
    "largest_block_dim",
    "log_tail_bound",
    "powered_bounds",
    "rd_upper",
]
