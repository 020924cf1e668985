"""Pydantic models for CLI requests and machine-readable results."""
from __future__ import annotations

from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..bounds import NormCertificate
from ..spectra import SpectrumEstimate, SweepRow

Command = Literal["moment", "norm", "spectrum", "sweep"]

OPERATOR_Q_LIMIT = 0.999


class BudgetModel(BaseModel):
    max_level: int = Field(default=256, ge=1)
    max_block_dim: int = Field(default=4096, ge=1)


class RunConfig(BaseModel):
    """One validated CLI invocation."""

    command: Command
    poly: str
    q: Optional[float] = None
    q_from: Optional[float] = None
    q_to: Optional[float] = None
    steps: Optional[int] = Field(default=None, ge=2)
    method: Literal["wick", "fock"] = "fock"
    n: Optional[int] = Field(default=None, ge=1)
    target_gap: Optional[float] = Field(default=None, gt=0.0)
    n_max: int = Field(default=64, ge=1)
    variant: Literal["per_level", "aggregated"] = "per_level"
    budget: BudgetModel = Field(default_factory=BudgetModel)
    level: int = Field(default=8, ge=0)
    d: Optional[int] = Field(default=None, ge=1)
    out: Optional[Path] = None
    format: Optional[Literal["csv", "json"]] = None
    threads: Optional[int] = Field(default=None, ge=1)
    with_spectra: bool = False

    @model_validator(mode="after")
    def _check_q(self) -> "RunConfig":
        if self.command == "sweep":
            if self.q_from is None or self.q_to is None or self.steps is None:
                raise ValueError("sweep needs --q-from, --q-to and --steps")
            for name, value in (("q-from", self.q_from), ("q-to", self.q_to)):
                if abs(value) > OPERATOR_Q_LIMIT:
                    raise ValueError(f"--{name} must satisfy |q| <= {OPERATOR_Q_LIMIT}, got {value}")
            if self.with_spectra and self.out is None:
                raise ValueError("--with-spectra needs --out to place the spectra file")
            return self
        if self.q is None:
            raise ValueError(f"{self.command} needs --q")
        if self.command == "moment":
            if abs(self.q) > 1.0:
                raise ValueError(f"--q must satisfy |q| <= 1, got {self.q}")
            if self.method == "fock" and abs(self.q) >= 1.0:
                raise ValueError("--method fock needs |q| < 1; use --method wick at q = +-1")
        elif abs(self.q) > OPERATOR_Q_LIMIT:
            raise ValueError(f"--q must satisfy |q| <= {OPERATOR_Q_LIMIT}, got {self.q}")
        return self


class CertificateModel(BaseModel):
    q: float
    lower: float
    upper: float
    direct_upper: float
    n_used: int
    level_used: int
    exhausted_budget: bool
    haagerup_constant: float

    @classmethod
    def from_certificate(cls, certificate: NormCertificate) -> "CertificateModel":
        return cls(
            q=certificate.q,
            lower=certificate.lower,
            upper=certificate.upper,
            direct_upper=certificate.upper_direct,
            n_used=certificate.n_used,
            level_used=certificate.level_used,
            exhausted_budget=certificate.exhausted_budget,
            haagerup_constant=certificate.haagerup,
        )


class SpectrumDocument(BaseModel):
    q: float
    level: int
    poly: str
    eigenvalues: List[float]

    @classmethod
    def from_estimate(cls, estimate: SpectrumEstimate) -> "SpectrumDocument":
        return cls(**estimate.to_document())


class SweepRowModel(BaseModel):
    q: float
    lower: float
    upper: float
    direct_upper: float
    n_used: int
    level_used: int

    @classmethod
    def from_row(cls, row: SweepRow) -> "SweepRowModel":
        return cls(
            q=row.q,
            lower=row.lower,
            upper=row.upper,
            direct_upper=row.direct_upper,
            n_used=row.n_used,
            level_used=row.level_used,
        )
